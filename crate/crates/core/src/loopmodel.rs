//! Loop syntax, parsing, and assembly of transition polyhedra.
//!
//! The loop file format is line-oriented:
//!
//! ```text
//! # a comment
//! vars: x1 x2
//! path:
//!   guard: x2 - x1 <= 0; x1 + x2 >= 1
//!   update: x2' = x2 - 2*x1 + 1; x1' = x1
//! ```
//!
//! Constraints are `affine (<=|>=|=) affine` with terms `c`, `c*v`, `v`,
//! `v'`; rational constants are `p/q` or decimals with finite expansion.
//! Strict inequalities are rejected: the loop model is non-strict only.

use crate::linalg::{AffineFunc, RatVector, Rational};
use crate::polyhedra::ConstraintPoly;
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CmpOp {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "=",
        })
    }
}

/// A normalized linear constraint: variable terms on the left (coefficients
/// over the 2n coordinates, unprimed then primed), constant on the right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub coeffs: RatVector,
    pub op: CmpOp,
    pub rhs: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    pub guard: Vec<Constraint>,
    pub update: Vec<Constraint>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopSpec {
    pub vars: Vec<String>,
    pub paths: Vec<Path>,
}

/// An MLC loop as k transition polyhedra over 2n coordinates: the first n
/// are the unprimed variables, the last n their primed counterparts.
#[derive(Clone, Debug)]
pub struct TransitionSystem {
    pub n: usize,
    pub var_names: Vec<String>,
    pub polys: Vec<ConstraintPoly>,
}

impl TransitionSystem {
    pub fn k(&self) -> usize {
        self.polys.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct QuickChecks {
    /// per path: the transition polyhedron is empty
    pub empty: Vec<bool>,
    /// per path: the origin (a self-loop fixpoint) is a valid transition
    pub origin_fixpoint: Vec<bool>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("strict inequality unsupported: the loop model admits only <=, >=, = constraints")]
    StrictInequality,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("primed variable `{0}'` not allowed in a guard")]
    PrimedInGuard(String),
    #[error("expected `vars:` header")]
    MissingVars,
    #[error("loop has no paths")]
    NoPaths,
}

fn err<T>(line: usize, col: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, col, kind })
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Num(Rational),
    Var { index: usize, primed: bool },
    Plus,
    Minus,
    Star,
    Op(CmpOp),
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    vars: &'a [String],
}

impl<'a> Lexer<'a> {
    fn new(text: &str, line: usize, col0: usize, vars: &'a [String]) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col0,
            vars,
        }
    }

    fn col(&self) -> usize {
        self.col0 + self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn next_tok(&mut self) -> Result<Option<Tok>, ParseError> {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let start_col = self.col();
        match c {
            '+' => {
                self.pos += 1;
                Ok(Some(Tok::Plus))
            }
            '-' => {
                self.pos += 1;
                Ok(Some(Tok::Minus))
            }
            '*' => {
                self.pos += 1;
                Ok(Some(Tok::Star))
            }
            '<' | '>' => {
                self.pos += 1;
                if self.peek() == Some('=') {
                    self.pos += 1;
                    Ok(Some(Tok::Op(if c == '<' { CmpOp::Le } else { CmpOp::Ge })))
                } else {
                    err(self.line, start_col, ParseErrorKind::StrictInequality)
                }
            }
            '=' => {
                self.pos += 1;
                if self.peek() == Some('=') {
                    self.pos += 1;
                }
                Ok(Some(Tok::Op(CmpOp::Eq)))
            }
            d if d.is_ascii_digit() => {
                let mut num = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    num.push(self.peek().unwrap());
                    self.pos += 1;
                }
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let mut den = String::new();
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        den.push(self.peek().unwrap());
                        self.pos += 1;
                    }
                    if den.is_empty() {
                        return err(
                            self.line,
                            self.col(),
                            ParseErrorKind::Syntax("expected denominator after `/`".into()),
                        );
                    }
                    let d: BigInt = den.parse().unwrap();
                    if d.is_zero() {
                        return err(
                            self.line,
                            start_col,
                            ParseErrorKind::Syntax("zero denominator".into()),
                        );
                    }
                    Ok(Some(Tok::Num(Rational::new(num.parse().unwrap(), d))))
                } else if self.peek() == Some('.') {
                    self.pos += 1;
                    let mut frac = String::new();
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        frac.push(self.peek().unwrap());
                        self.pos += 1;
                    }
                    if frac.is_empty() {
                        return err(
                            self.line,
                            self.col(),
                            ParseErrorKind::Syntax("expected digits after `.`".into()),
                        );
                    }
                    let scale = BigInt::from(10).pow(frac.len() as u32);
                    let whole: BigInt = num.parse().unwrap();
                    let fracpart: BigInt = frac.parse().unwrap();
                    Ok(Some(Tok::Num(Rational::new(whole * &scale + fracpart, scale))))
                } else {
                    Ok(Some(Tok::Num(Rational::from_integer(num.parse().unwrap()))))
                }
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    name.push(self.peek().unwrap());
                    self.pos += 1;
                }
                let primed = if self.peek() == Some('\'') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                match self.vars.iter().position(|v| v == &name) {
                    Some(index) => Ok(Some(Tok::Var { index, primed })),
                    None => err(self.line, start_col, ParseErrorKind::UnknownVariable(name)),
                }
            }
            other => err(
                self.line,
                start_col,
                ParseErrorKind::Syntax(format!("unexpected character `{}`", other)),
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// Constraint parsing
// ---------------------------------------------------------------------------

/// Affine expression accumulated as 2n variable coefficients plus a constant.
struct Affine {
    coeffs: Vec<Rational>,
    constant: Rational,
}

fn parse_constraint(
    text: &str,
    line: usize,
    col0: usize,
    vars: &[String],
) -> Result<Constraint, ParseError> {
    let n = vars.len();
    let mut lx = Lexer::new(text, line, col0, vars);
    let (lhs, op) = parse_affine(&mut lx, n)?;
    let Some(op) = op else {
        return err(
            line,
            lx.col(),
            ParseErrorKind::Syntax("expected a comparison operator".into()),
        );
    };
    let (rhs, trailing) = parse_affine(&mut lx, n)?;
    if trailing.is_some() {
        return err(
            line,
            lx.col(),
            ParseErrorKind::Syntax("chained comparisons are not supported".into()),
        );
    }
    // move variables left, constants right
    let coeffs = RatVector::new(
        lhs.coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect(),
    );
    let rhs_const = rhs.constant - lhs.constant;
    if coeffs.is_zero() {
        return err(
            line,
            col0 + 1,
            ParseErrorKind::Syntax("constraint has no variables".into()),
        );
    }
    Ok(Constraint {
        coeffs,
        op,
        rhs: rhs_const,
    })
}

/// Parse a sum of terms until a comparison operator or end of input.
fn parse_affine(lx: &mut Lexer<'_>, n: usize) -> Result<(Affine, Option<CmpOp>), ParseError> {
    let mut acc = Affine {
        coeffs: vec![Rational::zero(); 2 * n],
        constant: Rational::zero(),
    };
    let mut pending_sign = Rational::one();
    let mut saw_term = false;
    loop {
        let col_before = lx.col();
        let tok = lx.next_tok()?;
        match tok {
            None | Some(Tok::Op(_)) => {
                if !saw_term {
                    return err(
                        lx.line,
                        col_before,
                        ParseErrorKind::Syntax("expected an expression".into()),
                    );
                }
                let op = match tok {
                    Some(Tok::Op(o)) => Some(o),
                    _ => None,
                };
                return Ok((acc, op));
            }
            Some(Tok::Plus) => {
                pending_sign = Rational::one();
            }
            Some(Tok::Minus) => {
                if saw_term || pending_sign.is_one() {
                    pending_sign = -pending_sign;
                } else {
                    pending_sign = -pending_sign;
                }
            }
            Some(Tok::Num(c)) => {
                let val = &pending_sign * &c;
                // optional `* var`
                let save = lx.pos;
                match lx.next_tok()? {
                    Some(Tok::Star) => {
                        let col = lx.col();
                        match lx.next_tok()? {
                            Some(Tok::Var { index, primed }) => {
                                let slot = if primed { n + index } else { index };
                                acc.coeffs[slot] = &acc.coeffs[slot] + &val;
                            }
                            _ => {
                                return err(
                                    lx.line,
                                    col,
                                    ParseErrorKind::Syntax("expected a variable after `*`".into()),
                                )
                            }
                        }
                    }
                    _ => {
                        lx.pos = save;
                        acc.constant += val;
                    }
                }
                pending_sign = Rational::one();
                saw_term = true;
            }
            Some(Tok::Var { index, primed }) => {
                let slot = if primed { n + index } else { index };
                acc.coeffs[slot] = &acc.coeffs[slot] + &pending_sign;
                pending_sign = Rational::one();
                saw_term = true;
            }
            Some(Tok::Star) => {
                return err(
                    lx.line,
                    col_before,
                    ParseErrorKind::Syntax("unexpected `*`".into()),
                );
            }
        }
    }
}

/// Parse an affine function over the (unprimed) loop variables, e.g. a
/// ranking-function candidate `x1 + 2*x2 - 1`.
pub fn parse_affine_func(text: &str, vars: &[String]) -> Result<AffineFunc, ParseError> {
    let n = vars.len();
    let mut lx = Lexer::new(text, 1, 0, vars);
    let (aff, op) = parse_affine(&mut lx, n)?;
    if op.is_some() {
        return err(
            1,
            lx.col(),
            ParseErrorKind::Syntax("unexpected comparison in expression".into()),
        );
    }
    for (i, c) in aff.coeffs[n..].iter().enumerate() {
        if !c.is_zero() {
            return err(
                1,
                1,
                ParseErrorKind::PrimedInGuard(vars[i].clone()),
            );
        }
    }
    Ok(AffineFunc::new(
        aff.constant,
        RatVector::new(aff.coeffs[..n].to_vec()),
    ))
}

// ---------------------------------------------------------------------------
// File parsing
// ---------------------------------------------------------------------------

pub fn parse_loop(text: &str) -> Result<LoopSpec, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut paths: Vec<Path> = Vec::new();
    #[derive(PartialEq)]
    enum Section {
        None,
        Path,
    }
    let mut section = Section::None;

    for (li, raw) in text.lines().enumerate() {
        let line_no = li + 1;
        let noncomment = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = noncomment.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = noncomment.len() - noncomment.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if vars.is_some() {
                return err(
                    line_no,
                    1,
                    ParseErrorKind::Syntax("duplicate `vars:` header".into()),
                );
            }
            let mut names = Vec::new();
            for name in rest.split_whitespace() {
                if !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
                    || !name
                        .chars()
                        .next()
                        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                {
                    return err(
                        line_no,
                        1,
                        ParseErrorKind::Syntax(format!("invalid variable name `{}`", name)),
                    );
                }
                if names.iter().any(|v| v == name) {
                    return err(
                        line_no,
                        1,
                        ParseErrorKind::DuplicateVariable(name.to_string()),
                    );
                }
                names.push(name.to_string());
            }
            if names.is_empty() {
                return err(
                    line_no,
                    1,
                    ParseErrorKind::Syntax("`vars:` requires at least one variable".into()),
                );
            }
            vars = Some(names);
            continue;
        }
        let Some(var_names) = &vars else {
            return err(line_no, 1, ParseErrorKind::MissingVars);
        };
        if trimmed == "path:" {
            paths.push(Path {
                guard: Vec::new(),
                update: Vec::new(),
            });
            section = Section::Path;
            continue;
        }
        let (is_guard, rest) = if let Some(r) = trimmed.strip_prefix("guard:") {
            (true, r)
        } else if let Some(r) = trimmed.strip_prefix("update:") {
            (false, r)
        } else {
            return err(
                line_no,
                indent + 1,
                ParseErrorKind::Syntax(format!("expected `path:`, `guard:` or `update:`, found `{}`", trimmed)),
            );
        };
        if section != Section::Path {
            return err(
                line_no,
                indent + 1,
                ParseErrorKind::Syntax("guard/update outside of a `path:` block".into()),
            );
        }
        let keyword_len = if is_guard { 6 } else { 7 };
        let base_col = indent + keyword_len;
        let mut col_offset = 0usize;
        for segment in rest.split(';') {
            if segment.trim().is_empty() {
                col_offset += segment.len() + 1;
                continue;
            }
            let c = parse_constraint(segment, line_no, base_col + col_offset, var_names)?;
            if is_guard {
                let n = var_names.len();
                if let Some(i) = (0..n).find(|&i| !c.coeffs[n + i].is_zero()) {
                    return err(
                        line_no,
                        base_col + col_offset + 1,
                        ParseErrorKind::PrimedInGuard(var_names[i].clone()),
                    );
                }
            }
            let path = paths.last_mut().unwrap();
            if is_guard {
                path.guard.push(c);
            } else {
                path.update.push(c);
            }
            col_offset += segment.len() + 1;
        }
    }
    let Some(vars) = vars else {
        return err(1, 1, ParseErrorKind::MissingVars);
    };
    if paths.is_empty() {
        return err(1, 1, ParseErrorKind::NoPaths);
    }
    Ok(LoopSpec { vars, paths })
}

// ---------------------------------------------------------------------------
// Pretty printing (round-trips through the parser)
// ---------------------------------------------------------------------------

fn render_terms(coeffs: &RatVector, vars: &[String]) -> String {
    let n = vars.len();
    let mut out = String::new();
    let one = Rational::one();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = if i < n {
            vars[i].clone()
        } else {
            format!("{}'", vars[i - n])
        };
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mag != one {
            out.push_str(&format!("{}*", mag));
        }
        out.push_str(&name);
    }
    out
}

impl Constraint {
    pub fn render(&self, vars: &[String]) -> String {
        format!("{} {} {}", render_terms(&self.coeffs, vars), self.op, self.rhs)
    }
}

pub fn pretty_print(spec: &LoopSpec) -> String {
    let mut out = format!("vars: {}\n", spec.vars.join(" "));
    for path in &spec.paths {
        out.push_str("path:\n");
        if !path.guard.is_empty() {
            let parts: Vec<String> = path.guard.iter().map(|c| c.render(&spec.vars)).collect();
            out.push_str(&format!("  guard: {}\n", parts.join("; ")));
        }
        if !path.update.is_empty() {
            let parts: Vec<String> = path.update.iter().map(|c| c.render(&spec.vars)).collect();
            out.push_str(&format!("  update: {}\n", parts.join("; ")));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Transition-system assembly
// ---------------------------------------------------------------------------

fn constraint_rows(c: &Constraint) -> Vec<(RatVector, Rational)> {
    match c.op {
        CmpOp::Le => vec![(c.coeffs.clone(), c.rhs.clone())],
        CmpOp::Ge => vec![(c.coeffs.neg(), -c.rhs.clone())],
        CmpOp::Eq => vec![
            (c.coeffs.clone(), c.rhs.clone()),
            (c.coeffs.neg(), -c.rhs.clone()),
        ],
    }
}

/// Assemble the k transition polyhedra over 2n coordinates: the guard rows
/// (lifted with zero primed block) followed by the update rows.
pub fn build_transition_system(spec: &LoopSpec) -> TransitionSystem {
    let n = spec.vars.len();
    let polys = spec
        .paths
        .iter()
        .map(|path| {
            let mut p = ConstraintPoly::new(2 * n);
            for c in path.guard.iter().chain(path.update.iter()) {
                for (row, rhs) in constraint_rows(c) {
                    p.push_row(row, rhs);
                }
            }
            p
        })
        .collect();
    TransitionSystem {
        n,
        var_names: spec.vars.clone(),
        polys,
    }
}

/// Per-path emptiness and origin-fixpoint membership. A path containing the
/// origin makes the loop trivially non-terminating; downstream synthesis
/// short-circuits on it.
pub fn quick_checks(ts: &TransitionSystem) -> QuickChecks {
    let empty = ts.polys.iter().map(|p| p.is_empty()).collect();
    let origin_fixpoint = ts.polys.iter().map(|p| p.contains_origin()).collect();
    QuickChecks {
        empty,
        origin_fixpoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    const LOOP1: &str = "\
# the octagonal-guard loop
vars: x1 x2
path:
  guard: x2 - x1 <= 0; x1 + x2 >= 1
  update: x2' = x2 - 2*x1 + 1; x1' = x1
";

    #[test]
    fn parse_loop1() {
        let spec = parse_loop(LOOP1).unwrap();
        assert_eq!(spec.vars, vec!["x1", "x2"]);
        assert_eq!(spec.paths.len(), 1);
        let p = &spec.paths[0];
        assert_eq!(p.guard.len(), 2);
        assert_eq!(p.update.len(), 2);
        assert_eq!(p.guard[0].coeffs, RatVector::from_i64(&[-1, 1, 0, 0]));
        assert_eq!(p.guard[0].op, CmpOp::Le);
        assert_eq!(p.guard[0].rhs, int(0));
        // x2' = x2 - 2x1 + 1  ->  2x1 - x2 + x2' = 1
        assert_eq!(p.update[0].coeffs, RatVector::from_i64(&[2, -1, 0, 1]));
        assert_eq!(p.update[0].op, CmpOp::Eq);
        assert_eq!(p.update[0].rhs, int(1));
    }

    #[test]
    fn parse_two_paths() {
        let text = "\
vars: x1 x2
path:
  guard: x1 >= 0; x2 >= 0
  update: x1' = x1 - 1
path:
  guard: x1 >= 0; x2 >= 0
  update: x2' = x2 - 1; x1' = x1
";
        let spec = parse_loop(text).unwrap();
        assert_eq!(spec.paths.len(), 2);
    }

    #[test]
    fn strict_inequality_rejected() {
        let text = "vars: x\npath:\n  guard: x > 0\n  update: x' = x - 1\n";
        let e = parse_loop(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::StrictInequality);
        assert_eq!(e.line, 3);
    }

    #[test]
    fn unknown_variable_located() {
        let text = "vars: x\npath:\n  guard: y >= 0\n  update: x' = x\n";
        let e = parse_loop(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));
    }

    #[test]
    fn primed_in_guard_rejected() {
        let text = "vars: x\npath:\n  guard: x' >= 0\n  update: x' = x\n";
        let e = parse_loop(text).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::PrimedInGuard(_)));
    }

    #[test]
    fn rational_literals() {
        let text = "vars: x\npath:\n  guard: 1/3*x >= 0.5\n  update: 5*x' <= 2*x + 1\n";
        let spec = parse_loop(text).unwrap();
        let g = &spec.paths[0].guard[0];
        assert_eq!(g.coeffs, RatVector::new(vec![rat(1, 3), int(0)]));
        assert_eq!(g.rhs, rat(1, 2));
    }

    #[test]
    fn roundtrip_pretty_print() {
        for text in [
            LOOP1,
            "vars: a b c\npath:\n  guard: a + b >= 1/2; c - a <= 3\n  update: a' = a - 1; 2*b' <= b + c\n",
        ] {
            let spec = parse_loop(text).unwrap();
            let printed = pretty_print(&spec);
            let reparsed = parse_loop(&printed).unwrap();
            assert_eq!(spec, reparsed, "round trip failed for:\n{}", printed);
        }
    }

    #[test]
    fn build_rows_and_counts() {
        let spec = parse_loop(LOOP1).unwrap();
        let ts = build_transition_system(&spec);
        assert_eq!(ts.n, 2);
        assert_eq!(ts.k(), 1);
        // 2 guard rows + 2 equalities expanded to 4 rows
        assert_eq!(ts.polys[0].nrows(), 6);
        // the transition ((1,1) -> (1,0)) is valid
        assert!(ts.polys[0].contains(&RatVector::from_i64(&[1, 1, 1, 0])));
        // origin is not a transition (guard x1 + x2 >= 1 fails)
        assert!(!ts.polys[0].contains_origin());
    }

    #[test]
    fn division_loop_rows() {
        let text = "\
vars: x1 x2
path:
  guard: 4*x1 >= x2; x2 >= 1
  update: 5*x1' <= 2*x1 + 1; 5*x1' >= 2*x1 - 3; x2' = x2
";
        let spec = parse_loop(text).unwrap();
        let ts = build_transition_system(&spec);
        // contains 5x1' <= 2x1 + 1 and 5x1' >= 2x1 - 3 rows
        assert!(ts.polys[0].contains(&RatVector::from_i64(&[4, 16, 1, 16])));
        assert!(!ts.polys[0].contains(&RatVector::from_i64(&[4, 16, 2, 16])));
    }

    #[test]
    fn quick_check_flags() {
        let text = "\
vars: x
path:
  guard: x >= 0
  update: x' = x
path:
  guard: x <= 0; x >= 1
  update: x' = x
";
        let spec = parse_loop(text).unwrap();
        let ts = build_transition_system(&spec);
        let qc = quick_checks(&ts);
        assert_eq!(qc.origin_fixpoint, vec![true, false]);
        assert_eq!(qc.empty, vec![false, true]);
    }

    #[test]
    fn affine_func_parsing() {
        let vars: Vec<String> = vec!["x1".into(), "x2".into()];
        let f = parse_affine_func("x1 + x2 - 1", &vars).unwrap();
        assert_eq!(f.lambda, RatVector::from_i64(&[1, 1]));
        assert_eq!(f.lambda0, int(-1));
        let f = parse_affine_func("-3*x1 - 4*x2 + 12", &vars).unwrap();
        assert_eq!(f.lambda, RatVector::from_i64(&[-3, -4]));
        assert_eq!(f.lambda0, int(12));
    }
}
