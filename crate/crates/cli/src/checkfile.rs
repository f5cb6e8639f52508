//! Candidate files for `--check`: either ranking functions or witness point
//! sets.
//!
//! ```text
//! # a single function
//! lrf: x1 + x2 - 1
//! ```
//!
//! ```text
//! # a lexicographic tuple, optionally with decreases
//! llrf: x1; x2 - x1; x3
//! deltas: 1; 1/2; 1/3
//! ```
//!
//! ```text
//! # nonexistence witness: per-path integer points and rays over (x, x')
//! witness:
//! path 1: x(0, 1, 1, 0); y(0, -1, -1, -1)
//! path 2: y(0, 0, 1, 0); x(0, 0, 0, -1)
//! ```

use lcl_core::linalg::{AffineFunc, RatVector, Rational};
use lcl_core::loopmodel::parse_affine_func;
use num::bigint::BigInt;
use num::Zero;

#[derive(Debug)]
pub enum Candidate {
    Lrf(AffineFunc),
    Llrf {
        components: Vec<AffineFunc>,
        deltas: Option<Vec<Rational>>,
    },
    Witness {
        xs: Vec<Vec<RatVector>>,
        ys: Vec<Vec<RatVector>>,
    },
}

pub fn parse_candidate(text: &str, vars: &[String], k: usize) -> Result<Candidate, String> {
    let mut lines = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .map(str::trim)
        .filter(|l| !l.is_empty());
    let Some(first) = lines.next() else {
        return Err("empty candidate file".into());
    };
    if let Some(expr) = first.strip_prefix("lrf:") {
        return parse_affine_func(expr, vars)
            .map(Candidate::Lrf)
            .map_err(|e| format!("lrf candidate: {}", e));
    }
    if let Some(rest) = first.strip_prefix("llrf:") {
        let mut components = Vec::new();
        for part in rest.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            components
                .push(parse_affine_func(part, vars).map_err(|e| format!("llrf candidate: {}", e))?);
        }
        if components.is_empty() {
            return Err("llrf candidate has no components".into());
        }
        let mut deltas = None;
        if let Some(dl) = lines.next() {
            let Some(rest) = dl.strip_prefix("deltas:") else {
                return Err(format!("expected `deltas:`, found `{}`", dl));
            };
            let mut ds = Vec::new();
            for part in rest.split([';', ',']) {
                if part.trim().is_empty() {
                    continue;
                }
                ds.push(parse_rational(part.trim())?);
            }
            if ds.len() != components.len() {
                return Err(format!(
                    "{} deltas for {} components",
                    ds.len(),
                    components.len()
                ));
            }
            deltas = Some(ds);
        }
        return Ok(Candidate::Llrf { components, deltas });
    }
    if first == "witness:" {
        let mut xs = vec![Vec::new(); k];
        let mut ys = vec![Vec::new(); k];
        for line in lines {
            let Some(rest) = line.strip_prefix("path") else {
                return Err(format!("expected `path <i>:`, found `{}`", line));
            };
            let Some((idx, body)) = rest.split_once(':') else {
                return Err(format!("expected `:` in `{}`", line));
            };
            let path: usize = idx
                .trim()
                .parse()
                .map_err(|_| format!("bad path index `{}`", idx.trim()))?;
            if path == 0 || path > k {
                return Err(format!("path {} out of range (loop has {} paths)", path, k));
            }
            for item in body.split(';') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (kind, rest) = item.split_at(1);
                let v = parse_point(rest)?;
                match kind {
                    "x" => xs[path - 1].push(v),
                    "y" => ys[path - 1].push(v),
                    other => return Err(format!("expected x(...) or y(...), found `{}`", other)),
                }
            }
        }
        return Ok(Candidate::Witness { xs, ys });
    }
    Err(format!(
        "candidate must start with `lrf:`, `llrf:` or `witness:`, found `{}`",
        first
    ))
}

fn parse_point(text: &str) -> Result<RatVector, String> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected a parenthesized point, found `{}`", text))?;
    let mut entries = Vec::new();
    for part in inner.split(',') {
        entries.push(parse_rational(part.trim())?);
    }
    Ok(RatVector::new(entries))
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1i64, r.trim()),
        None => (1, text),
    };
    let (numer, denom) = match rest.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (rest, "1"),
    };
    let n: BigInt = numer
        .parse()
        .map_err(|_| format!("bad rational `{}`", text))?;
    let d: BigInt = denom
        .parse()
        .map_err(|_| format!("bad rational `{}`", text))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{}`", text));
    }
    Ok(Rational::new(n * BigInt::from(sign), d))
}
