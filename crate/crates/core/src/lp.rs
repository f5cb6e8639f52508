//! Exact rational linear programming.
//!
//! Feasibility and optimization of systems `Ax <= b` over free rational
//! variables, with Farkas infeasibility certificates, implied-equality
//! detection, and irredundant infeasible subsystems. The solver is a dense
//! two-phase primal simplex over exact rationals; Dantzig pricing with a
//! Bland's-rule fallback guarantees termination. No floating point.
//!
//! The crate-internal entry point [`solve_general`] additionally supports
//! equality rows and natively sign-constrained variables, which keeps the
//! ranking-synthesis systems (whose multipliers are all nonnegative) small.

mod simplex;

use crate::linalg::{RatMatrix, RatVector, Rational};
use num::{Signed, Zero};
use thiserror::Error;

pub(crate) use simplex::GeneralSystem;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum RowKind {
    Le,
    Eq,
}

/// An LP in the module's canonical form: all constraints are `a_i . x <= b_i`
/// over free variables; equalities are pre-expanded to inequality pairs by
/// the caller.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub a: RatMatrix,
    pub b: RatVector,
    pub objective: Option<(RatVector, Sense)>,
}

impl LpProblem {
    pub fn feasibility(a: RatMatrix, b: RatVector) -> Self {
        LpProblem {
            a,
            b,
            objective: None,
        }
    }

    pub fn optimize(a: RatMatrix, b: RatVector, obj: RatVector, sense: Sense) -> Self {
        LpProblem {
            a,
            b,
            objective: Some((obj, sense)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    /// `cert >= 0`, `cert^T A = 0`, `cert^T b < 0`.
    Infeasible { cert: RatVector },
    /// `A . ray <= 0` and the objective strictly improves along `ray`.
    Unbounded {
        feasible_point: RatVector,
        ray: RatVector,
    },
    Optimal { point: RatVector, value: Rational },
    FeasibleNoObjective { point: RatVector },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    /// The attained optimum, or None when infeasible/unbounded.
    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("system is infeasible")]
    Infeasible,
    #[error("system is feasible")]
    Feasible,
}

/// Solve an LP over free variables. Certificates are re-checked in exact
/// arithmetic before being returned.
pub fn solve(p: &LpProblem) -> LpOutcome {
    assert_eq!(p.a.nrows(), p.b.dim(), "solve: row count mismatch");
    if let Some((c, _)) = &p.objective {
        assert_eq!(c.dim(), p.a.ncols(), "solve: objective dimension mismatch");
    }
    let kinds = vec![RowKind::Le; p.a.nrows()];
    let nonneg = vec![false; p.a.ncols()];
    let out = simplex::solve_general(&p.a, &p.b, &kinds, &nonneg, p.objective.as_ref());
    check_outcome(p, &out);
    out
}

fn check_outcome(p: &LpProblem, out: &LpOutcome) {
    match out {
        LpOutcome::Infeasible { cert } => {
            assert!(cert.iter().all(|c| !c.is_negative()), "certificate not nonnegative");
            let comb = combine_rows(&p.a, cert);
            assert!(comb.is_zero(), "certificate does not cancel A");
            assert!(cert.dot(&p.b).is_negative(), "certificate rhs not negative");
        }
        LpOutcome::Unbounded { feasible_point, ray } => {
            debug_assert!(point_satisfies(&p.a, &p.b, feasible_point));
            for i in 0..p.a.nrows() {
                assert!(!p.a.row(i).dot(ray).is_positive(), "ray leaves the polyhedron");
            }
            if let Some((c, sense)) = &p.objective {
                let d = c.dot(ray);
                match sense {
                    Sense::Max => assert!(d.is_positive()),
                    Sense::Min => assert!(d.is_negative()),
                }
            }
        }
        LpOutcome::Optimal { point, value } => {
            debug_assert!(point_satisfies(&p.a, &p.b, point));
            if let Some((c, _)) = &p.objective {
                debug_assert_eq!(&c.dot(point), value);
            }
        }
        LpOutcome::FeasibleNoObjective { point } => {
            debug_assert!(point_satisfies(&p.a, &p.b, point));
        }
    }
}

fn combine_rows(a: &RatMatrix, mult: &RatVector) -> RatVector {
    let mut acc = RatVector::zeros(a.ncols());
    for i in 0..a.nrows() {
        if !mult[i].is_zero() {
            acc = acc.add(&a.row(i).scale(&mult[i]));
        }
    }
    acc
}

fn point_satisfies(a: &RatMatrix, b: &RatVector, x: &RatVector) -> bool {
    (0..a.nrows()).all(|i| a.row(i).dot(x) <= b[i])
}

pub fn is_feasible(a: &RatMatrix, b: &RatVector) -> bool {
    solve(&LpProblem::feasibility(a.clone(), b.clone())).is_feasible()
}

pub fn feasible_point(a: &RatMatrix, b: &RatVector) -> Option<RatVector> {
    match solve(&LpProblem::feasibility(a.clone(), b.clone())) {
        LpOutcome::FeasibleNoObjective { point } => Some(point),
        _ => None,
    }
}

/// Row indices i such that `a_i . x = b_i` holds for every feasible x.
/// Implemented as the two extremal-slack LPs of the design notes: row i is
/// implied iff both min and max of the slack `b_i - a_i . x` over the system
/// are zero.
pub fn implied_equalities(a: &RatMatrix, b: &RatVector) -> Result<Vec<usize>, LpError> {
    if !is_feasible(a, b) {
        return Err(LpError::Infeasible);
    }
    let mut implied = Vec::new();
    for i in 0..a.nrows() {
        let obj = a.row(i).clone();
        let max = solve(&LpProblem::optimize(a.clone(), b.clone(), obj.clone(), Sense::Max));
        let max_is_bi = matches!(&max, LpOutcome::Optimal { value, .. } if *value == b[i]);
        if !max_is_bi {
            continue;
        }
        let min = solve(&LpProblem::optimize(a.clone(), b.clone(), obj, Sense::Min));
        let min_is_bi = matches!(&min, LpOutcome::Optimal { value, .. } if *value == b[i]);
        if min_is_bi {
            implied.push(i);
        }
    }
    Ok(implied)
}

/// An irredundant infeasible subsystem: the returned row set is infeasible,
/// removing any single row makes it feasible, and (by Helly's theorem, which
/// irredundancy forces) it has at most d+1 rows. Seeded with the support of
/// a Farkas certificate, then shrunk by single-row deletion.
pub fn iis(a: &RatMatrix, b: &RatVector) -> Result<Vec<usize>, LpError> {
    let cert = match solve(&LpProblem::feasibility(a.clone(), b.clone())) {
        LpOutcome::Infeasible { cert } => cert,
        _ => return Err(LpError::Feasible),
    };
    let mut rows: Vec<usize> = (0..a.nrows()).filter(|&i| cert[i].is_positive()).collect();
    let infeasible_subset = |rows: &[usize]| -> bool {
        let sub = RatMatrix::from_rows(rows.iter().map(|&i| a.row(i).clone()).collect(), a.ncols());
        let sb = RatVector::new(rows.iter().map(|&i| b[i].clone()).collect());
        !is_feasible(&sub, &sb)
    };
    debug_assert!(infeasible_subset(&rows));
    let mut i = 0;
    while i < rows.len() {
        let mut cand = rows.clone();
        cand.remove(i);
        if infeasible_subset(&cand) {
            rows = cand;
        } else {
            i += 1;
        }
    }
    debug_assert!(rows.len() <= a.ncols() + 1);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn m(rows: &[&[i64]], ncols: usize) -> RatMatrix {
        RatMatrix::from_i64(rows, ncols)
    }

    fn v(entries: &[i64]) -> RatVector {
        RatVector::from_i64(entries)
    }

    #[test]
    fn optimal_simple() {
        // max x s.t. x <= 5, -x <= 0
        let p = LpProblem::optimize(m(&[&[1], &[-1]], 1), v(&[5, 0]), v(&[1]), Sense::Max);
        match solve(&p) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, int(5));
                assert_eq!(point, v(&[5]));
            }
            o => panic!("expected optimal, got {:?}", o),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x <= 1, -x <= -2: summing gives 0 <= -1
        let p = LpProblem::feasibility(m(&[&[1], &[-1]], 1), v(&[1, -2]));
        match solve(&p) {
            LpOutcome::Infeasible { cert } => {
                assert!(cert.dot(&v(&[1, -2])).is_negative());
            }
            o => panic!("expected infeasible, got {:?}", o),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        // max x s.t. -x <= 0
        let p = LpProblem::optimize(m(&[&[-1]], 1), v(&[0]), v(&[1]), Sense::Max);
        match solve(&p) {
            LpOutcome::Unbounded { ray, .. } => {
                assert!(ray[0].is_positive());
            }
            o => panic!("expected unbounded, got {:?}", o),
        }
    }

    #[test]
    fn optimal_fractional() {
        // max x + y s.t. x + 2y <= 2, 2x + y <= 2; optimum 4/3 at (2/3, 2/3)
        let p = LpProblem::optimize(
            m(&[&[1, 2], &[2, 1]], 2),
            v(&[2, 2]),
            v(&[1, 1]),
            Sense::Max,
        );
        match solve(&p) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, rat(4, 3));
                assert_eq!(point, RatVector::new(vec![rat(2, 3), rat(2, 3)]));
            }
            o => panic!("expected optimal, got {:?}", o),
        }
    }

    #[test]
    fn minimize_free_variables() {
        // min x - y s.t. x >= -3, y <= 7  ->  -10
        let p = LpProblem::optimize(
            m(&[&[-1, 0], &[0, 1]], 2),
            v(&[3, 7]),
            v(&[1, -1]),
            Sense::Min,
        );
        match solve(&p) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(-10)),
            o => panic!("expected optimal, got {:?}", o),
        }
    }

    #[test]
    fn implied_equality_examples() {
        // {x <= 0, -x <= 0}: both rows implied
        let r = implied_equalities(&m(&[&[1], &[-1]], 1), &v(&[0, 0])).unwrap();
        assert_eq!(r, vec![0, 1]);
        // full-dimensional triangle: none
        let r = implied_equalities(&m(&[&[1, 1], &[-1, 0], &[0, -1]], 2), &v(&[1, 0, 0])).unwrap();
        assert!(r.is_empty());
        // x pinned to 1
        let r = implied_equalities(&m(&[&[1, 0], &[-1, 0], &[0, 1]], 2), &v(&[1, -1, 2])).unwrap();
        assert_eq!(r, vec![0, 1]);
    }

    #[test]
    fn implied_equalities_rejects_infeasible() {
        assert_eq!(
            implied_equalities(&m(&[&[1], &[-1]], 1), &v(&[1, -2])),
            Err(LpError::Infeasible)
        );
    }

    #[test]
    fn iis_two_rows() {
        // {x <= 1, -x <= -2, y <= 0}: the first two rows form the IIS
        let a = m(&[&[1, 0], &[-1, 0], &[0, 1]], 2);
        let rows = iis(&a, &v(&[1, -2, 0])).unwrap();
        assert_eq!(rows, vec![0, 1]);
    }

    #[test]
    fn iis_rejects_feasible() {
        assert_eq!(iis(&m(&[&[1]], 1), &v(&[1])), Err(LpError::Feasible));
    }

    #[test]
    fn degenerate_lp_terminates() {
        // A classically degenerate system; Bland fallback must terminate.
        let a = m(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
            3,
        );
        let b = v(&[1, 1, 1, 1, 0, 0, 0]);
        let p = LpProblem::optimize(a, b, v(&[1, 1, 1]), Sense::Max);
        match solve(&p) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            o => panic!("expected optimal, got {:?}", o),
        }
    }
}
