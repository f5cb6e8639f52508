//! Dense two-phase primal simplex over exact rationals.
//!
//! Free variables are split into nonnegative pairs; variables flagged
//! nonnegative get a single column. Every row receives an artificial
//! variable, so after phase 1 the artificial block of the tableau holds
//! B^-1 and the Farkas certificate can be read off the phase-1 costs.

use super::{LpOutcome, RowKind, Sense};
use crate::linalg::{RatMatrix, RatVector, Rational};
use num::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Col {
    /// positive part of variable v
    Pos(usize),
    /// negated part of a free variable v
    Neg(usize),
    /// slack of row r (only Le rows)
    Slack(usize),
    /// artificial of row r
    Art(usize),
}

struct Tableau {
    cols: Vec<Col>,
    /// m rows, each of length cols.len() + 1; last entry is the rhs
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// row sign flip applied to make the rhs nonnegative
    flipped: Vec<bool>,
    /// reduced-cost row: z_j = c_B^T (B^-1 A)_j - c_j, rhs = objective value
    obj: Vec<Rational>,
    /// columns barred from entering (artificials in phase 2)
    banned: Vec<bool>,
}

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 40;

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.cols.len()]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.cols.len() + 1;
        let p = self.t[row][col].clone();
        debug_assert!(!p.is_zero());
        let inv = p.recip();
        for j in 0..w {
            if !self.t[row][j].is_zero() {
                let v = &self.t[row][j] * &inv;
                self.t[row][j] = v;
            }
        }
        for i in 0..self.t.len() {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let f = self.t[i][col].clone();
            for j in 0..w {
                if !self.t[row][j].is_zero() {
                    let v = &self.t[i][j] - &f * &self.t[row][j];
                    self.t[i][j] = v;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..w {
                if !self.t[row][j].is_zero() {
                    let v = &self.obj[j] - &f * &self.t[row][j];
                    self.obj[j] = v;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Entering column: Dantzig pricing normally, Bland under degeneracy.
    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in 0..self.cols.len() {
            if self.banned[j] || !self.obj[j].is_positive() {
                continue;
            }
            if bland {
                return Some(j);
            }
            match best {
                None => best = Some(j),
                Some(b) if self.obj[j] > self.obj[b] => best = Some(j),
                _ => {}
            }
        }
        best
    }

    /// Leaving row by minimum ratio; ties broken by smallest basis variable
    /// (Bland). Returns None when the column is unbounded.
    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.t.len() {
            if !self.t[i][col].is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / &self.t[i][col];
            match &best {
                None => best = Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]) {
                        best = Some((i, ratio));
                    }
                }
            }
        }
        best.map(|(i, _)| i)
    }

    /// Run simplex to optimality (Ok) or detect an unbounded entering column
    /// (Err with the column index).
    fn optimize(&mut self) -> Result<(), usize> {
        let mut streak = 0usize;
        loop {
            let bland = streak >= DEGENERATE_STREAK;
            let Some(col) = self.entering(bland) else {
                return Ok(());
            };
            let Some(row) = self.leaving(col) else {
                return Err(col);
            };
            if self.rhs(row).is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(row, col);
        }
    }

    fn set_costs(&mut self, cost: &[Rational]) {
        let w = self.cols.len() + 1;
        self.obj = vec![Rational::zero(); w];
        for j in 0..self.cols.len() {
            self.obj[j] = -cost[j].clone();
        }
        for i in 0..self.t.len() {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..w {
                if !self.t[i][j].is_zero() {
                    let v = &self.obj[j] + &cb * &self.t[i][j];
                    self.obj[j] = v;
                }
            }
        }
    }

    /// Current value of structural variable v.
    fn var_value(&self, pos_col: usize, neg_col: Option<usize>) -> Rational {
        let mut val = Rational::zero();
        for i in 0..self.t.len() {
            if self.basis[i] == pos_col {
                val += self.rhs(i);
            }
            if Some(self.basis[i]) == neg_col {
                val -= self.rhs(i);
            }
        }
        val
    }

    fn point(&self, var_cols: &[(usize, Option<usize>)]) -> RatVector {
        RatVector::new(
            var_cols
                .iter()
                .map(|&(p, n)| self.var_value(p, n))
                .collect(),
        )
    }
}

/// Solve `sum_j a[i][j] x_j (<=|=) b_i`, with `x_j >= 0` where `nonneg[j]`.
pub(crate) fn solve_general(
    a: &RatMatrix,
    b: &RatVector,
    kinds: &[RowKind],
    nonneg: &[bool],
    objective: Option<&(RatVector, Sense)>,
) -> LpOutcome {
    let m = a.nrows();
    let d = a.ncols();
    assert_eq!(b.dim(), m);
    assert_eq!(kinds.len(), m);
    assert_eq!(nonneg.len(), d);

    // Column layout: variable columns, then slacks, then artificials.
    let mut cols = Vec::new();
    let mut var_cols = Vec::with_capacity(d);
    for v in 0..d {
        let p = cols.len();
        cols.push(Col::Pos(v));
        let n = if nonneg[v] {
            None
        } else {
            cols.push(Col::Neg(v));
            Some(cols.len() - 1)
        };
        var_cols.push((p, n));
    }
    let mut slack_col = vec![None; m];
    for (i, k) in kinds.iter().enumerate() {
        if *k == RowKind::Le {
            slack_col[i] = Some(cols.len());
            cols.push(Col::Slack(i));
        }
    }
    let art_base = cols.len();
    for i in 0..m {
        cols.push(Col::Art(i));
    }
    let w = cols.len() + 1;

    let mut t = Vec::with_capacity(m);
    let mut flipped = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let s: Rational = if flip { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); w];
        for (v, &(p, n)) in var_cols.iter().enumerate() {
            let c = &a.row(i)[v] * &s;
            if !c.is_zero() {
                row[p] = c.clone();
                if let Some(nc) = n {
                    row[nc] = -c;
                }
            }
        }
        if let Some(sc) = slack_col[i] {
            row[sc] = s.clone();
        }
        row[art_base + i] = Rational::one();
        row[cols.len()] = &b[i] * &s;
        t.push(row);
        flipped.push(flip);
    }

    let mut tab = Tableau {
        basis: (0..m).map(|i| art_base + i).collect(),
        obj: vec![Rational::zero(); w],
        banned: vec![false; cols.len()],
        cols,
        t,
        flipped,
    };

    // Phase 1: minimize the sum of artificials.
    let mut cost1 = vec![Rational::zero(); tab.cols.len()];
    for j in art_base..tab.cols.len() {
        cost1[j] = Rational::one();
    }
    tab.set_costs(&cost1);
    // For minimization of c, reduced costs z_j - c_j are positive exactly for
    // improving columns; set_costs built z - c with c_B from the artificials.
    tab.optimize().expect("phase 1 is bounded below by zero");

    let phase1_value = tab.obj[tab.cols.len()].clone();
    if phase1_value.is_positive() {
        // Farkas certificate from the phase-1 duals: w_i = z(Art(i)) + 1,
        // cert_i = -sigma_i * w_i over the original rows.
        let mut cert = RatVector::zeros(m);
        for i in 0..m {
            let wi = &tab.obj[art_base + i] + Rational::one();
            cert[i] = if tab.flipped[i] { wi } else { -wi };
        }
        return LpOutcome::Infeasible { cert };
    }

    // Drive remaining basic artificials out; drop redundant rows.
    let mut r = 0;
    while r < tab.t.len() {
        if matches!(tab.cols[tab.basis[r]], Col::Art(_)) {
            debug_assert!(tab.rhs(r).is_zero());
            let mut pivot_col = None;
            for j in 0..art_base {
                if !tab.t[r][j].is_zero() {
                    pivot_col = Some(j);
                    break;
                }
            }
            match pivot_col {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                    tab.flipped.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for j in art_base..tab.cols.len() {
        tab.banned[j] = true;
    }

    let Some((c, sense)) = objective else {
        return LpOutcome::FeasibleNoObjective {
            point: tab.point(&var_cols),
        };
    };

    // Phase 2: minimize c (Max is negated here and nowhere else).
    let mut cost2 = vec![Rational::zero(); tab.cols.len()];
    for (v, &(p, n)) in var_cols.iter().enumerate() {
        let cv = match sense {
            Sense::Min => c[v].clone(),
            Sense::Max => -c[v].clone(),
        };
        cost2[p] = cv.clone();
        if let Some(nc) = n {
            cost2[nc] = -cv;
        }
    }
    tab.set_costs(&cost2);
    match tab.optimize() {
        Ok(()) => {
            let point = tab.point(&var_cols);
            let value = c.dot(&point);
            LpOutcome::Optimal { point, value }
        }
        Err(col) => {
            // Ray: entering variable grows by 1, basics move by -t[i][col].
            let mut delta = vec![Rational::zero(); tab.cols.len()];
            delta[col] = Rational::one();
            for i in 0..tab.t.len() {
                if !tab.t[i][col].is_zero() {
                    delta[tab.basis[i]] = -tab.t[i][col].clone();
                }
            }
            let ray = RatVector::new(
                var_cols
                    .iter()
                    .map(|&(p, n)| match n {
                        Some(nc) => &delta[p] - &delta[nc],
                        None => delta[p].clone(),
                    })
                    .collect(),
            );
            LpOutcome::Unbounded {
                feasible_point: tab.point(&var_cols),
                ray,
            }
        }
    }
}

/// Convenience wrapper for building mixed Le/Eq systems with sign flags.
#[derive(Clone)]
pub(crate) struct GeneralSystem {
    pub ncols: usize,
    pub nonneg: Vec<bool>,
    pub rows: Vec<RatVector>,
    pub kinds: Vec<RowKind>,
    pub rhs: Vec<Rational>,
}

impl GeneralSystem {
    pub fn new(ncols: usize) -> Self {
        GeneralSystem {
            ncols,
            nonneg: vec![false; ncols],
            rows: Vec::new(),
            kinds: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push(&mut self, row: RatVector, kind: RowKind, rhs: Rational) {
        assert_eq!(row.dim(), self.ncols);
        self.rows.push(row);
        self.kinds.push(kind);
        self.rhs.push(rhs);
    }

    pub fn solve(&self, objective: Option<&(RatVector, Sense)>) -> LpOutcome {
        let a = RatMatrix::from_rows(self.rows.clone(), self.ncols);
        let b = RatVector::new(self.rhs.clone());
        solve_general(&a, &b, &self.kinds, &self.nonneg, objective)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, RatMatrix, RatVector};

    #[test]
    fn equality_rows_and_nonneg_vars() {
        // x + y = 3, x - y <= 1, x,y >= 0; max x -> x = 2, y = 1
        let a = RatMatrix::from_i64(&[&[1, 1], &[1, -1]], 2);
        let b = RatVector::from_i64(&[3, 1]);
        let out = solve_general(
            &a,
            &b,
            &[RowKind::Eq, RowKind::Le],
            &[true, true],
            Some(&(RatVector::from_i64(&[1, 0]), Sense::Max)),
        );
        match out {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, int(2));
                assert_eq!(point, RatVector::from_i64(&[2, 1]));
            }
            o => panic!("unexpected {:?}", o),
        }
    }

    #[test]
    fn infeasible_equalities() {
        // x = 1, x = 2
        let a = RatMatrix::from_i64(&[&[1], &[1]], 1);
        let b = RatVector::from_i64(&[1, 2]);
        let out = solve_general(&a, &b, &[RowKind::Eq, RowKind::Eq], &[false], None);
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn nonneg_infeasibility_certificate() {
        // x >= 0 (native), x <= -1: infeasible
        let a = RatMatrix::from_i64(&[&[1]], 1);
        let b = RatVector::from_i64(&[-1]);
        let out = solve_general(&a, &b, &[RowKind::Le], &[true], None);
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
    }
}
