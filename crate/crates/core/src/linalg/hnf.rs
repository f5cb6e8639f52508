//! Integer lattice computations via a column Hermite form.
//!
//! One reduction M*U = H (U unimodular, H column-echelon) yields everything
//! the geometry layer needs from lattices: a saturated basis of the integer
//! kernel, one integer solution of M*x = v when it exists, and a unimodular
//! coordinate change that makes a non-pointed system pointed.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Result of the column reduction: `h` is the reduced matrix (same row count
/// as the input, trailing columns zero), `u` the unimodular transform with
/// M*U = H, and `pivots` the (row, col) positions of the echelon pivots.
pub struct ColumnEchelon {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Column-reduce an integer matrix by unimodular column operations.
pub fn column_echelon(m: &[Vec<BigInt>], ncols: usize) -> ColumnEchelon {
    let nrows = m.len();
    let mut h: Vec<Vec<BigInt>> = m.to_vec();
    for r in &h {
        assert_eq!(r.len(), ncols, "column_echelon: ragged matrix");
    }
    // u starts as the identity, column-major access is by index pair.
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next_col = 0usize;
    for row in 0..nrows {
        if next_col >= ncols {
            break;
        }
        // Zero out row `row` across columns > next_col using gcd combinations.
        loop {
            let mut nz = None;
            for c in (next_col + 1)..ncols {
                if !h[row][c].is_zero() {
                    nz = Some(c);
                    break;
                }
            }
            let Some(c) = nz else { break };
            let a = h[row][next_col].clone();
            let b = h[row][c].clone();
            if a.is_zero() {
                swap_cols(&mut h, &mut u, next_col, c);
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let am = &a / &g;
            let bm_neg = -(&b / &g);
            // [col nc, col c] <- [s*nc + t*c, -b/g*nc + a/g*c]; det = 1.
            combine_cols(&mut h, next_col, c, &s, &t, &bm_neg, &am);
            combine_cols(&mut u, next_col, c, &s, &t, &bm_neg, &am);
        }
        if h[row][next_col].is_zero() {
            continue;
        }
        if h[row][next_col].is_negative() {
            negate_col(&mut h, next_col);
            negate_col(&mut u, next_col);
        }
        pivots.push((row, next_col));
        next_col += 1;
    }
    ColumnEchelon { h, u, pivots }
}

fn swap_cols(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in h.iter_mut() {
        r.swap(i, j);
    }
    for r in u.iter_mut() {
        r.swap(i, j);
    }
}

fn negate_col(m: &mut [Vec<BigInt>], c: usize) {
    for r in m.iter_mut() {
        let v = -r[c].clone();
        r[c] = v;
    }
}

fn combine_cols(
    m: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    a_ii: &BigInt,
    a_ji: &BigInt,
    a_ij: &BigInt,
    a_jj: &BigInt,
) {
    for r in m.iter_mut() {
        let ci = r[i].clone();
        let cj = r[j].clone();
        r[i] = a_ii * &ci + a_ji * &cj;
        r[j] = a_ij * &ci + a_jj * &cj;
    }
}

/// A basis of the saturated integer kernel {x in Z^n | Mx = 0}.
pub fn integer_kernel(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = column_echelon(m, ncols);
    let r = ech.rank();
    (r..ncols)
        .map(|c| ech.u.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// One integer solution of M*x = v, if any exists.
pub fn solve_integer(m: &[Vec<BigInt>], ncols: usize, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let nrows = m.len();
    assert_eq!(v.len(), nrows);
    let ech = column_echelon(m, ncols);
    let mut y = vec![BigInt::zero(); ncols];
    let mut pivot_iter = ech.pivots.iter().peekable();
    for row in 0..nrows {
        // residual of this row under the partial solution
        let mut res = v[row].clone();
        for c in 0..ech.rank() {
            if !y[c].is_zero() {
                res -= &ech.h[row][c] * &y[c];
            }
        }
        match pivot_iter.peek() {
            Some(&&(prow, pcol)) if prow == row => {
                let p = &ech.h[prow][pcol];
                let (q, rem) = res.div_rem(p);
                if !rem.is_zero() {
                    return None;
                }
                y[pcol] = q;
                pivot_iter.next();
            }
            _ => {
                if !res.is_zero() {
                    return None;
                }
            }
        }
    }
    // x = U * y
    let x = (0..ncols)
        .map(|i| {
            let mut acc = BigInt::zero();
            for (c, yc) in y.iter().enumerate() {
                if !yc.is_zero() {
                    acc += &ech.u[i][c] * yc;
                }
            }
            acc
        })
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_is_saturated() {
        // ker of [2 -2] over Q is span{(1,1)}; the integer kernel basis must be
        // primitive, i.e. (1,1) and not (2,2).
        let m = vec![bi(&[2, -2])];
        let k = integer_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let g = num::integer::gcd(k[0][0].clone(), k[0][1].clone());
        assert_eq!(g, BigInt::one());
    }

    #[test]
    fn solve_simple() {
        // x + 2y = 5 has integer solutions.
        let m = vec![bi(&[1, 2])];
        let s = solve_integer(&m, 2, &bi(&[5])).unwrap();
        assert_eq!(&s[0] + 2 * &s[1], BigInt::from(5));
        // 2x + 4y = 5 has none.
        let m = vec![bi(&[2, 4])];
        assert!(solve_integer(&m, 2, &bi(&[5])).is_none());
    }

    #[test]
    fn solve_affine_line() {
        // The face {x1 = 0, x1 + x2 - x1' = 0, x2 - x2' = 1} of a classic
        // 2-variable loop contains integer points such as (0, t, t, t-1).
        let m = vec![
            bi(&[1, 0, 0, 0]),
            bi(&[1, 1, -1, 0]),
            bi(&[0, 1, 0, -1]),
        ];
        let v = bi(&[0, 0, 1]);
        let s = solve_integer(&m, 4, &v).unwrap();
        assert_eq!(s[0], BigInt::zero());
        assert_eq!(&s[1] - &s[3], BigInt::one());
        assert_eq!(s[1], s[2]);
    }

    #[test]
    fn unimodular_transform_is_consistent() {
        let m = vec![bi(&[3, 6, 9]), bi(&[1, 2, 4])];
        let ech = column_echelon(&m, 3);
        // M*U = H
        for r in 0..2 {
            for c in 0..3 {
                let mut acc = BigInt::zero();
                for k in 0..3 {
                    acc += &m[r][k] * &ech.u[k][c];
                }
                assert_eq!(acc, ech.h[r][c]);
            }
        }
        assert_eq!(ech.rank(), 2);
    }
}
