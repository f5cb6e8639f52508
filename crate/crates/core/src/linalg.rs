//! Exact rational scalars, vectors, matrices and affine functions.
//!
//! Everything downstream (LP, polyhedra, hulls, ranking synthesis) is built
//! on these types. Arithmetic is exact: scalars are arbitrary-precision
//! rationals kept in canonical form (positive denominator, reduced).

pub mod hnf;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Arbitrary-precision rational in canonical form (den > 0, gcd(|num|, den) = 1).
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for a small integer constant.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Floor of a rational as a big integer.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// A fixed-dimension vector of rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    entries: Vec<Rational>,
}

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RatVector {
            entries: entries.iter().map(|&n| int(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim(), "add: dimension mismatch");
        RatVector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.dim(), other.dim(), "sub: dimension mismatch");
        RatVector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> RatVector {
        RatVector::new(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector::new(self.entries.iter().map(|a| -a).collect())
    }

    /// First / second half of a 2n-dimensional transition-space vector.
    pub fn split_half(&self) -> (RatVector, RatVector) {
        assert!(self.dim() % 2 == 0, "split_half: odd dimension");
        let n = self.dim() / 2;
        (
            RatVector::new(self.entries[..n].to_vec()),
            RatVector::new(self.entries[n..].to_vec()),
        )
    }

    pub fn concat(&self, other: &RatVector) -> RatVector {
        let mut v = self.entries.clone();
        v.extend(other.entries.iter().cloned());
        RatVector::new(v)
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for e in &self.entries {
            l = num::integer::lcm(l, e.denom().clone());
        }
        l
    }

    /// Scale by a positive rational to coprime integer entries; orientation
    /// is preserved. Used to canonicalize rays.
    pub fn canonical_ray(&self) -> RatVector {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&l / e.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num::integer::gcd(g, v.clone());
        }
        RatVector::new(
            ints.into_iter()
                .map(|v| Rational::from_integer(v / &g))
                .collect(),
        )
    }

    /// Scale to coprime integer entries, sign fixed so the leading nonzero is
    /// positive. Used to canonicalize lineality directions, where both
    /// orientations generate the same set.
    pub fn canonical_direction(&self) -> RatVector {
        let c = self.canonical_ray();
        match c.entries.iter().find(|v| !v.is_zero()) {
            Some(v) if v.is_negative() => c.neg(),
            _ => c,
        }
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.entries.iter().map(|e| e.to_integer()).collect())
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.entries[i]
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// A rectangular matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    ncols: usize,
}

impl RatMatrix {
    pub fn new(ncols: usize) -> Self {
        RatMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<RatVector>, ncols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), ncols, "from_rows: ragged matrix");
        }
        RatMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]], ncols: usize) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| RatVector::from_i64(r)).collect(), ncols)
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = RatVector::zeros(n);
            v[i] = Rational::one();
            rows.push(v);
        }
        RatMatrix { rows, ncols: n }
    }

    pub fn push_row(&mut self, row: RatVector) {
        assert_eq!(row.dim(), self.ncols, "push_row: dimension mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &RatVector) -> RatVector {
        RatVector::new(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    /// Exact rank via fraction-free (Bareiss) elimination. Each row is first
    /// scaled to integer entries; scaling does not change the rank.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| {
                let l = r.denominator_lcm();
                r.iter().map(|e| e.numer() * (&l / e.denom())).collect()
            })
            .collect();
        bareiss_rank(&mut m, self.ncols)
    }

    /// A basis of the rational kernel {y | My = 0}, via Gaussian elimination.
    pub fn kernel_basis(&self) -> Vec<RatVector> {
        let n = self.ncols;
        let mut m: Vec<RatVector> = self.rows.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..n {
            let mut piv = None;
            for i in r..m.len() {
                if !m[i][c].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            m.swap(r, p);
            let inv = m[r][c].recip();
            m[r] = m[r].scale(&inv);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    m[i] = m[i].sub(&m[r].scale(&f));
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().cloned().collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = RatVector::zeros(n);
            v[free] = Rational::one();
            for (row_i, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -m[row_i][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

fn bareiss_rank(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = m.len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    let mut row = 0usize;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let mut piv = None;
        for i in row..nrows {
            if !m[i][col].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(row, p);
        for i in (row + 1)..nrows {
            for j in (col + 1)..ncols {
                let t = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                m[i][j] = &t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// An affine function rho(x) = lambda . x + lambda0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineFunc {
    pub lambda0: Rational,
    pub lambda: RatVector,
}

impl AffineFunc {
    pub fn new(lambda0: Rational, lambda: RatVector) -> Self {
        AffineFunc { lambda0, lambda }
    }

    pub fn zero(n: usize) -> Self {
        AffineFunc {
            lambda0: Rational::zero(),
            lambda: RatVector::zeros(n),
        }
    }

    pub fn arity(&self) -> usize {
        self.lambda.dim()
    }

    /// rho(x) for an n-dimensional state x.
    pub fn eval(&self, x: &RatVector) -> Rational {
        assert_eq!(self.arity(), x.dim(), "eval: dimension mismatch");
        self.lambda.dot(x) + &self.lambda0
    }

    /// Delta rho(x'') = rho(x) - rho(x') for a 2n-dimensional transition x''.
    /// The constant term cancels.
    pub fn delta(&self, xpp: &RatVector) -> Rational {
        assert_eq!(2 * self.arity(), xpp.dim(), "delta: dimension mismatch");
        let (x, xp) = xpp.split_half();
        self.lambda.dot(&x) - self.lambda.dot(&xp)
    }

    /// The delta form of rho as a 2n-dimensional row (lambda, -lambda),
    /// so that delta(rho, x'') = row . x''.
    pub fn delta_row(&self) -> RatVector {
        self.lambda.concat(&self.lambda.neg())
    }

    /// Multiply by the least common multiple of all denominators, returning
    /// the scaled function (integer coefficients and constant) and the scale.
    pub fn integer_scale(&self) -> (AffineFunc, Rational) {
        let mut l = self.lambda0.denom().clone();
        for e in self.lambda.iter() {
            l = num::integer::lcm(l, e.denom().clone());
        }
        let scale = Rational::from_integer(l);
        (
            AffineFunc {
                lambda0: &self.lambda0 * &scale,
                lambda: self.lambda.scale(&scale),
            },
            scale,
        )
    }

    pub fn add(&self, other: &AffineFunc) -> AffineFunc {
        AffineFunc {
            lambda0: &self.lambda0 + &other.lambda0,
            lambda: self.lambda.add(&other.lambda),
        }
    }

    pub fn scale(&self, c: &Rational) -> AffineFunc {
        AffineFunc {
            lambda0: &self.lambda0 * c,
            lambda: self.lambda.scale(c),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> AffineFunc {
        AffineFunc {
            lambda0: &self.lambda0 + c,
            lambda: self.lambda.clone(),
        }
    }

    /// Render with the given variable names, e.g. `x1 + 2*x2 - 1`.
    pub fn display(&self, names: &[String]) -> String {
        let mut out = String::new();
        let one = Rational::one();
        for (i, c) in self.lambda.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            out.push_str(&names[i]);
        }
        if !self.lambda0.is_zero() || out.is_empty() {
            let mag = self.lambda0.abs();
            if out.is_empty() {
                out.push_str(&format!("{}", self.lambda0));
            } else if self.lambda0.is_negative() {
                out.push_str(&format!(" - {}", mag));
            } else {
                out.push_str(&format!(" + {}", mag));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_degenerate() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::from_i64(&[&[0, 0, 0, 0], &[0, 0, 0, 0]], 4).rank(), 0);
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]], 2).rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RatMatrix::from_rows(
            vec![
                RatVector::new(vec![rat(1, 2), rat(1, 3)]),
                RatVector::new(vec![rat(3, 2), int(1)]),
                RatVector::new(vec![int(1), rat(2, 3)]),
            ],
            2,
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn integer_scale_examples() {
        let f = AffineFunc::new(rat(1, 2), RatVector::new(vec![rat(1, 3), int(1)]));
        let (g, s) = f.integer_scale();
        assert_eq!(s, int(6));
        assert_eq!(g.lambda0, int(3));
        assert_eq!(g.lambda, RatVector::from_i64(&[2, 6]));

        let f = AffineFunc::new(int(-1), RatVector::from_i64(&[1, 1]));
        let (g, s) = f.integer_scale();
        assert_eq!(s, int(1));
        assert_eq!(g, f);

        let f = AffineFunc::zero(2);
        let (g, s) = f.integer_scale();
        assert_eq!(s, int(1));
        assert_eq!(g, f);
    }

    #[test]
    fn eval_and_delta() {
        // f(x1, x2) = x1 + x2 - 1 evaluates to 1 at (1, 1).
        let f = AffineFunc::new(int(-1), RatVector::from_i64(&[1, 1]));
        assert_eq!(f.eval(&RatVector::from_i64(&[1, 1])), int(1));
        // identity transition has zero delta
        let f2 = AffineFunc::new(int(7), RatVector::from_i64(&[3, -2]));
        assert_eq!(f2.delta(&RatVector::from_i64(&[4, 5, 4, 5])), int(0));
        // f = x1 on the transition (4,16,1,16)
        let f3 = AffineFunc::new(int(0), RatVector::from_i64(&[1, 0]));
        assert_eq!(f3.delta(&RatVector::from_i64(&[4, 16, 1, 16])), int(3));
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let m = RatMatrix::from_i64(&[&[1, 0, -1, 0], &[0, 1, 0, -1]], 4);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn canonical_direction() {
        let v = RatVector::new(vec![rat(-1, 2), rat(1, 3), int(0)]);
        let c = v.canonical_direction();
        assert_eq!(c, RatVector::from_i64(&[3, -2, 0]));
    }
}
