//! Polyhedron representation and geometry.
//!
//! Constraint and generator representations with exact conversion in both
//! directions (incremental double description on the homogenization),
//! recession cones, dimension, faces by tight-row conversion, membership,
//! and relative-interior point selection by a per-coordinate sweep.

use crate::linalg::hnf;
use crate::linalg::{AffineFunc, RatMatrix, RatVector, Rational};
use crate::lp::{self, LpOutcome, LpProblem, Sense};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polyhedron is empty")]
    Empty,
    #[error("hyperplane is not valid over the polyhedron")]
    InvalidHyperplane,
}

/// A polyhedron {x | Ax <= b}; non-strict inequalities only. May be empty or
/// unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintPoly {
    pub a: RatMatrix,
    pub b: RatVector,
}

impl ConstraintPoly {
    pub fn new(ambient: usize) -> Self {
        ConstraintPoly {
            a: RatMatrix::new(ambient),
            b: RatVector::new(Vec::new()),
        }
    }

    pub fn from_rows(a: RatMatrix, b: RatVector) -> Self {
        assert_eq!(a.nrows(), b.dim(), "from_rows: row count mismatch");
        ConstraintPoly { a, b }
    }

    pub fn from_i64(rows: &[&[i64]], rhs: &[i64], ambient: usize) -> Self {
        ConstraintPoly::from_rows(RatMatrix::from_i64(rows, ambient), RatVector::from_i64(rhs))
    }

    /// The canonical empty polyhedron 0.x <= -1.
    pub fn empty(ambient: usize) -> Self {
        let mut p = ConstraintPoly::new(ambient);
        p.push_row(RatVector::zeros(ambient), crate::linalg::int(-1));
        p
    }

    pub fn ambient(&self) -> usize {
        self.a.ncols()
    }

    pub fn nrows(&self) -> usize {
        self.a.nrows()
    }

    pub fn push_row(&mut self, row: RatVector, rhs: Rational) {
        self.a.push_row(row);
        let mut entries: Vec<Rational> = self.b.iter().cloned().collect();
        entries.push(rhs);
        self.b = RatVector::new(entries);
    }

    /// Append an equality row as the usual inequality pair.
    pub fn push_equality(&mut self, row: RatVector, rhs: Rational) {
        self.push_row(row.clone(), rhs.clone());
        self.push_row(row.neg(), -rhs);
    }

    pub fn conjoin(&self, other: &ConstraintPoly) -> ConstraintPoly {
        assert_eq!(self.ambient(), other.ambient());
        let mut out = self.clone();
        for i in 0..other.nrows() {
            out.push_row(other.a.row(i).clone(), other.b[i].clone());
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        !lp::is_feasible(&self.a, &self.b)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        assert_eq!(x.dim(), self.ambient(), "contains: dimension mismatch");
        (0..self.nrows()).all(|i| self.a.row(i).dot(x) <= self.b[i])
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&RatVector::zeros(self.ambient()))
    }

    pub fn maximize(&self, obj: &RatVector) -> LpOutcome {
        lp::solve(&LpProblem::optimize(
            self.a.clone(),
            self.b.clone(),
            obj.clone(),
            Sense::Max,
        ))
    }

    pub fn minimize(&self, obj: &RatVector) -> LpOutcome {
        lp::solve(&LpProblem::optimize(
            self.a.clone(),
            self.b.clone(),
            obj.clone(),
            Sense::Min,
        ))
    }
}

/// P = convhull{vertices} + cone{rays}. The empty polyhedron is the empty
/// vertex and ray lists; lineality directions appear as +/- ray pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRep {
    pub vertices: Vec<RatVector>,
    pub rays: Vec<RatVector>,
}

impl GeneratorRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A face of `base` given by the rows forced to equality. `empty` flags a
/// hyperplane section that misses the polyhedron.
#[derive(Clone, Debug)]
pub struct FaceSpec {
    pub base: ConstraintPoly,
    pub tight_rows: BTreeSet<usize>,
    pub empty: bool,
}

impl FaceSpec {
    pub fn whole(base: ConstraintPoly) -> Self {
        let empty = base.is_empty();
        FaceSpec {
            base,
            tight_rows: BTreeSet::new(),
            empty,
        }
    }

    /// The face as a constraint polyhedron (tight rows become equalities).
    pub fn induced(&self) -> ConstraintPoly {
        if self.empty {
            return ConstraintPoly::empty(self.base.ambient());
        }
        let mut p = self.base.clone();
        for &i in &self.tight_rows {
            p.push_row(self.base.a.row(i).neg(), -self.base.b[i].clone());
        }
        p
    }
}

// ---------------------------------------------------------------------------
// Double description on cones
// ---------------------------------------------------------------------------

/// Generators of the cone {y | By <= 0}: a lineality basis plus extreme rays
/// of the pointed quotient.
pub(crate) struct ConeGenerators {
    pub lineality: Vec<RatVector>,
    pub rays: Vec<RatVector>,
}

pub(crate) fn cone_generators(rows: &RatMatrix) -> ConeGenerators {
    let d = rows.ncols();
    if rows.nrows() == 0 || (0..rows.nrows()).all(|i| rows.row(i).is_zero()) {
        return ConeGenerators {
            lineality: (0..d)
                .map(|i| {
                    let mut v = RatVector::zeros(d);
                    v[i] = Rational::one();
                    v
                })
                .collect(),
            rays: Vec::new(),
        };
    }
    let lineality = rows.kernel_basis();
    // Complement of the kernel: the row space. Parametrize the pointed part
    // by z with y = W^T z, W a maximal independent row subset.
    let w_rows = independent_rows(rows);
    let w = w_rows.len();
    let wmat = RatMatrix::from_rows(w_rows.iter().map(|&i| rows.row(i).clone()).collect(), d);
    // Constraint rows in z-coordinates: (B W^T) z <= 0.
    let zrows: Vec<RatVector> = (0..rows.nrows())
        .map(|i| RatVector::new((0..w).map(|j| rows.row(i).dot(wmat.row(j))).collect()))
        .collect();
    let zrays = pointed_cone_rays(&zrows, w);
    let rays = zrays
        .iter()
        .map(|z| {
            let mut y = RatVector::zeros(d);
            for (j, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    y = y.add(&wmat.row(j).scale(c));
                }
            }
            y.canonical_ray()
        })
        .collect();
    ConeGenerators { lineality, rays }
}

/// Greedy maximal linearly independent subset of the rows.
fn independent_rows(m: &RatMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for i in 0..m.nrows() {
        let mut cand = chosen.clone();
        cand.push(i);
        let sub = RatMatrix::from_rows(cand.iter().map(|&j| m.row(j).clone()).collect(), m.ncols());
        if sub.rank() > rank {
            rank += 1;
            chosen.push(i);
        }
    }
    chosen
}

/// Extreme rays of a pointed cone {z | Rz <= 0} with rank(R) = dim.
/// Incremental double description with the combinatorial adjacency test.
fn pointed_cone_rays(rows: &[RatVector], dim: usize) -> Vec<RatVector> {
    // Initial basis: `dim` independent rows; the initial cone's extreme rays
    // are the negated columns of the inverse.
    let mat = RatMatrix::from_rows(rows.to_vec(), dim);
    let base = independent_rows(&mat);
    assert_eq!(base.len(), dim, "pointed_cone_rays: cone not pointed");
    let b0 = RatMatrix::from_rows(base.iter().map(|&i| rows[i].clone()).collect(), dim);
    let inv = invert(&b0).expect("independent rows are invertible");
    let mut rays: Vec<RatVector> = (0..dim)
        .map(|j| {
            RatVector::new((0..dim).map(|i| -inv.row(i)[j].clone()).collect()).canonical_ray()
        })
        .collect();
    let mut processed: Vec<usize> = base.clone();
    let base_set: BTreeSet<usize> = base.into_iter().collect();

    for (k, row) in rows.iter().enumerate() {
        if base_set.contains(&k) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| row.dot(r)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            processed.push(k);
            continue;
        }
        let tight: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| {
                processed
                    .iter()
                    .filter(|&&j| rows[j].dot(r).is_zero())
                    .cloned()
                    .collect()
            })
            .collect();
        let mut next: Vec<RatVector> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                next.push(r.clone());
            }
        }
        for (pi, pv) in vals.iter().enumerate() {
            if !pv.is_positive() {
                continue;
            }
            for (ni, nv) in vals.iter().enumerate() {
                if !nv.is_negative() {
                    continue;
                }
                let meet: BTreeSet<usize> = tight[pi].intersection(&tight[ni]).cloned().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(oi, _)| oi == pi || oi == ni || !meet.is_subset(&tight[oi]));
                if !adjacent {
                    continue;
                }
                // positive combination killing the new row
                let combo = rays[ni].scale(pv).sub(&rays[pi].scale(nv));
                let combo = combo.canonical_ray();
                if !combo.is_zero() && !next.contains(&combo) {
                    next.push(combo);
                }
            }
        }
        rays = next;
        processed.push(k);
    }
    rays.sort();
    rays
}

fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.ncols();
    assert_eq!(m.nrows(), n);
    let mut work: Vec<RatVector> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).iter().cloned().collect();
            let mut aug = vec![Rational::zero(); n];
            aug[i] = Rational::one();
            row.extend(aug);
            RatVector::new(row)
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !work[i][c].is_zero())?;
        work.swap(c, piv);
        let inv = work[c][c].recip();
        work[c] = work[c].scale(&inv);
        for i in 0..n {
            if i != c && !work[i][c].is_zero() {
                let f = work[i][c].clone();
                work[i] = work[i].sub(&work[c].scale(&f));
            }
        }
    }
    Some(RatMatrix::from_rows(
        work.into_iter()
            .map(|r| RatVector::new(r.entries()[n..].to_vec()))
            .collect(),
        n,
    ))
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

/// Generator representation of a constraint polyhedron, via double
/// description of the homogenization cone {(x, t) | Ax - bt <= 0, t >= 0}.
pub fn to_generators(p: &ConstraintPoly) -> GeneratorRep {
    let d = p.ambient();
    let mut rows = RatMatrix::new(d + 1);
    for i in 0..p.nrows() {
        let mut r: Vec<Rational> = p.a.row(i).iter().cloned().collect();
        r.push(-p.b[i].clone());
        rows.push_row(RatVector::new(r));
    }
    let mut last = RatVector::zeros(d + 1);
    last[d] = -Rational::one();
    rows.push_row(last);
    let cone = cone_generators(&rows);

    let mut vertices: Vec<RatVector> = Vec::new();
    let mut rays: Vec<RatVector> = Vec::new();
    for r in &cone.rays {
        let t = &r[d];
        let x = RatVector::new(r.entries()[..d].to_vec());
        if t.is_positive() {
            vertices.push(x.scale(&t.recip()));
        } else {
            debug_assert!(t.is_zero());
            if !x.is_zero() {
                rays.push(x.canonical_ray());
            }
        }
    }
    if vertices.is_empty() {
        return GeneratorRep {
            vertices: Vec::new(),
            rays: Vec::new(),
        };
    }
    for l in &cone.lineality {
        debug_assert!(l[d].is_zero());
        let x = RatVector::new(l.entries()[..d].to_vec()).canonical_direction();
        if !x.is_zero() {
            rays.push(x.clone());
            rays.push(x.neg());
        }
    }
    // Prefer integer coordinates for points on non-pointed minimal faces.
    let vertices = vertices
        .into_iter()
        .map(|v| integer_point_on_minimal_face(p, &v).unwrap_or(v))
        .collect::<Vec<_>>();
    let mut rep = GeneratorRep { vertices, rays };
    rep.vertices.sort();
    rep.vertices.dedup();
    rep.rays.sort();
    rep.rays.dedup();
    rep
}

/// Constraint representation of a generated set, via the polar cone.
pub fn to_constraints(g: &GeneratorRep, ambient: usize) -> ConstraintPoly {
    if g.vertices.is_empty() {
        return ConstraintPoly::empty(ambient);
    }
    // D = {(a, beta) | a.v <= beta for vertices, a.r <= 0 for rays}; its
    // generators are exactly the valid inequalities of P.
    let mut rows = RatMatrix::new(ambient + 1);
    for v in &g.vertices {
        let mut r: Vec<Rational> = v.iter().cloned().collect();
        r.push(-Rational::one());
        rows.push_row(RatVector::new(r));
    }
    for r in &g.rays {
        let mut row: Vec<Rational> = r.iter().cloned().collect();
        row.push(Rational::zero());
        rows.push_row(RatVector::new(row));
    }
    let cone = cone_generators(&rows);
    let mut out = ConstraintPoly::new(ambient);
    let mut push = |gen: &RatVector| {
        let a = RatVector::new(gen.entries()[..ambient].to_vec());
        let beta = gen[ambient].clone();
        if a.is_zero() {
            debug_assert!(!beta.is_negative());
            return;
        }
        out.push_row(a, beta);
    };
    for r in &cone.rays {
        push(r);
    }
    for l in &cone.lineality {
        push(l);
        push(&l.neg());
    }
    out
}

/// The recession cone {y | Ay <= 0}.
pub fn recession_cone(p: &ConstraintPoly) -> ConstraintPoly {
    ConstraintPoly::from_rows(p.a.clone(), RatVector::zeros(p.nrows()))
}

/// Dimension of the polyhedron; -1 for the empty polyhedron.
pub fn dim(p: &ConstraintPoly) -> i64 {
    match lp::implied_equalities(&p.a, &p.b) {
        Err(_) => -1,
        Ok(implied) => {
            let sub = RatMatrix::from_rows(
                implied.iter().map(|&i| p.a.row(i).clone()).collect(),
                p.ambient(),
            );
            p.ambient() as i64 - sub.rank() as i64
        }
    }
}

/// A point in the relative interior of `p`, by the per-coordinate sweep:
/// minimize and maximize each coordinate in turn, pick a value strictly
/// inside the open interval (prioritizing 0, then the integer of smallest
/// magnitude, else the midpoint), fix it, continue.
pub fn relative_interior_point(
    p: &ConstraintPoly,
    coord_order: Option<&[usize]>,
) -> Result<RatVector, PolyError> {
    if p.is_empty() {
        return Err(PolyError::Empty);
    }
    let d = p.ambient();
    let default_order: Vec<usize> = (0..d).collect();
    let order = coord_order.unwrap_or(&default_order);
    assert_eq!(order.len(), d, "coord_order must be a permutation");
    let mut sys = p.clone();
    let mut point = RatVector::zeros(d);
    for &i in order {
        let mut obj = RatVector::zeros(d);
        obj[i] = Rational::one();
        let lo = match sys.minimize(&obj) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded { .. } => None,
            _ => unreachable!("system stays feasible during the sweep"),
        };
        let hi = match sys.maximize(&obj) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded { .. } => None,
            _ => unreachable!("system stays feasible during the sweep"),
        };
        let c = pick_inside(lo.as_ref(), hi.as_ref());
        sys.push_equality(obj, c.clone());
        point[i] = c;
    }
    Ok(point)
}

/// Value selection inside the open interval (lo, hi); None means infinite.
pub(crate) fn pick_inside(lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    use crate::linalg::{ceil_int, floor_int};
    match (lo, hi) {
        (Some(a), Some(b)) if a == b => a.clone(),
        (lo, hi) => {
            let zero = Rational::zero();
            let above_zero = lo.map_or(true, |a| a < &zero);
            let below_zero = hi.map_or(true, |b| b > &zero);
            if above_zero && below_zero {
                return zero;
            }
            match (lo, hi) {
                (Some(a), Some(b)) => {
                    let first = floor_int(a) + BigInt::one();
                    let last = ceil_int(b) - BigInt::one();
                    if first <= last {
                        // 0 is outside, so the interval is sign-definite and
                        // the extreme integer closest to zero wins.
                        let cand = if a >= &zero { first } else { last };
                        Rational::from_integer(cand)
                    } else {
                        (a + b) / Rational::from_integer(BigInt::from(2))
                    }
                }
                (Some(a), None) => Rational::from_integer(floor_int(a) + BigInt::one()),
                (None, Some(b)) => Rational::from_integer(ceil_int(b) - BigInt::one()),
                (None, None) => zero,
            }
        }
    }
}

/// The face of `p` induced by a valid hyperplane h.x = c, by tight-row
/// conversion: the rows that the section forces to equality.
pub fn face(p: &ConstraintPoly, h: &RatVector, c: &Rational) -> Result<FaceSpec, PolyError> {
    assert_eq!(h.dim(), p.ambient(), "face: dimension mismatch");
    match p.maximize(h) {
        LpOutcome::Unbounded { .. } => return Err(PolyError::InvalidHyperplane),
        LpOutcome::Optimal { value, .. } => {
            if &value > c {
                return Err(PolyError::InvalidHyperplane);
            }
            if &value < c {
                return Ok(FaceSpec {
                    base: p.clone(),
                    tight_rows: BTreeSet::new(),
                    empty: true,
                });
            }
        }
        LpOutcome::Infeasible { .. } => {
            return Ok(FaceSpec {
                base: p.clone(),
                tight_rows: BTreeSet::new(),
                empty: true,
            });
        }
        LpOutcome::FeasibleNoObjective { .. } => unreachable!(),
    }
    let mut sys = p.clone();
    sys.push_equality(h.clone(), c.clone());
    let mut tight = BTreeSet::new();
    for i in 0..p.nrows() {
        match lp::solve(&LpProblem::optimize(
            sys.a.clone(),
            sys.b.clone(),
            p.a.row(i).clone(),
            Sense::Min,
        )) {
            LpOutcome::Optimal { value, .. } if value == p.b[i] => {
                tight.insert(i);
            }
            _ => {}
        }
    }
    Ok(FaceSpec {
        base: p.clone(),
        tight_rows: tight,
        empty: false,
    })
}

// ---------------------------------------------------------------------------
// Set comparisons and hygiene
// ---------------------------------------------------------------------------

/// Does `sub` imply the inequality row . x <= rhs?
pub fn implies_row(sub: &ConstraintPoly, row: &RatVector, rhs: &Rational) -> bool {
    match sub.maximize(row) {
        LpOutcome::Optimal { value, .. } => &value <= rhs,
        LpOutcome::Unbounded { .. } => false,
        LpOutcome::Infeasible { .. } => true,
        LpOutcome::FeasibleNoObjective { .. } => unreachable!(),
    }
}

pub fn is_subset(sub: &ConstraintPoly, sup: &ConstraintPoly) -> bool {
    (0..sup.nrows()).all(|i| implies_row(sub, sup.a.row(i), &sup.b[i]))
}

pub fn set_equal(p: &ConstraintPoly, q: &ConstraintPoly) -> bool {
    is_subset(p, q) && is_subset(q, p)
}

/// Drop duplicate and implied rows. Empty input collapses to the canonical
/// empty polyhedron.
pub fn remove_redundant_rows(p: &ConstraintPoly) -> ConstraintPoly {
    if p.is_empty() {
        return ConstraintPoly::empty(p.ambient());
    }
    let mut rows: Vec<(RatVector, Rational)> = Vec::new();
    for i in 0..p.nrows() {
        let pair = (p.a.row(i).clone(), p.b[i].clone());
        if !rows.contains(&pair) {
            rows.push(pair);
        }
    }
    let mut i = 0;
    while i < rows.len() {
        if rows.len() == 1 {
            break;
        }
        let mut rest = ConstraintPoly::new(p.ambient());
        for (j, (r, c)) in rows.iter().enumerate() {
            if j != i {
                rest.push_row(r.clone(), c.clone());
            }
        }
        if implies_row(&rest, &rows[i].0, &rows[i].1) {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    let mut out = ConstraintPoly::new(p.ambient());
    for (r, c) in rows {
        out.push_row(r, c);
    }
    out
}

/// An integer point on the minimal face of `p` whose relative interior
/// contains `v`, when one exists. The minimal face is the affine subspace cut
/// out by the rows tight at `v`.
pub fn integer_point_on_minimal_face(p: &ConstraintPoly, v: &RatVector) -> Option<RatVector> {
    if v.is_integral() {
        return Some(v.clone());
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for i in 0..p.nrows() {
        if p.a.row(i).dot(v) != p.b[i] {
            continue;
        }
        // scale the row to integer entries, including the right-hand side
        let mut full: Vec<Rational> = p.a.row(i).iter().cloned().collect();
        full.push(p.b[i].clone());
        let fullv = RatVector::new(full);
        let l = fullv.denominator_lcm();
        let ints: Vec<BigInt> = fullv.iter().map(|e| e.numer() * (&l / e.denom())).collect();
        rhs.push(ints[p.ambient()].clone());
        rows.push(ints[..p.ambient()].to_vec());
    }
    let sol = hnf::solve_integer(&rows, p.ambient(), &rhs)?;
    let z = RatVector::new(sol.into_iter().map(Rational::from_integer).collect());
    if p.contains(&z) {
        Some(z)
    } else {
        None
    }
}

/// Is every minimal face of `p` inhabited by an integer point? For a
/// polyhedron this is exactly integrality (P equals its integer hull).
pub fn is_integral(p: &ConstraintPoly) -> bool {
    if p.is_empty() {
        return true;
    }
    let gens = to_generators(p);
    gens.vertices
        .iter()
        .all(|v| integer_point_on_minimal_face(p, v).is_some())
}

/// Membership of a point in the generated set, for tests and checkers:
/// converts and uses constraint membership.
pub fn generators_contain(g: &GeneratorRep, ambient: usize, x: &RatVector) -> bool {
    to_constraints(g, ambient).contains(x)
}

/// AffineFunc's delta as a hyperplane over transition space: the row
/// (-lambda, lambda) with bound 0, i.e. -delta(rho) <= 0 is the valid side.
pub fn delta_zero_hyperplane(rho: &AffineFunc) -> (RatVector, Rational) {
    (rho.delta_row().neg(), Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn unit_square() -> ConstraintPoly {
        ConstraintPoly::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 0, 1, 0], 2)
    }

    #[test]
    fn square_generators() {
        let g = to_generators(&unit_square());
        assert!(g.rays.is_empty());
        let mut vs = g.vertices.clone();
        vs.sort();
        assert_eq!(
            vs,
            vec![
                RatVector::from_i64(&[0, 0]),
                RatVector::from_i64(&[0, 1]),
                RatVector::from_i64(&[1, 0]),
                RatVector::from_i64(&[1, 1]),
            ]
        );
    }

    #[test]
    fn halfline_generators() {
        // {x >= 1}: vertex 1, ray +1
        let p = ConstraintPoly::from_i64(&[&[-1]], &[-1], 1);
        let g = to_generators(&p);
        assert_eq!(g.vertices, vec![RatVector::from_i64(&[1])]);
        assert_eq!(g.rays, vec![RatVector::from_i64(&[1])]);
    }

    #[test]
    fn empty_generators() {
        let p = ConstraintPoly::from_i64(&[&[1], &[-1]], &[-1, -1], 1);
        let g = to_generators(&p);
        assert!(g.vertices.is_empty());
        assert!(g.rays.is_empty());
    }

    #[test]
    fn constraints_from_generators() {
        // vertices {0, 1} in 1D -> the segment
        let g = GeneratorRep {
            vertices: vec![RatVector::from_i64(&[0]), RatVector::from_i64(&[1])],
            rays: vec![],
        };
        let p = to_constraints(&g, 1);
        assert!(p.contains(&RatVector::new(vec![rat(1, 2)])));
        assert!(!p.contains(&RatVector::from_i64(&[2])));
        assert!(!p.contains(&RatVector::from_i64(&[-1])));

        // nonnegative quadrant
        let g = GeneratorRep {
            vertices: vec![RatVector::from_i64(&[0, 0])],
            rays: vec![RatVector::from_i64(&[1, 0]), RatVector::from_i64(&[0, 1])],
        };
        let p = to_constraints(&g, 2);
        assert!(p.contains(&RatVector::from_i64(&[3, 5])));
        assert!(!p.contains(&RatVector::from_i64(&[-1, 0])));
        assert!(!p.contains(&RatVector::from_i64(&[0, -1])));
    }

    #[test]
    fn roundtrip_square() {
        let p = unit_square();
        let q = to_constraints(&to_generators(&p), 2);
        assert!(set_equal(&p, &q));
    }

    #[test]
    fn recession_cone_examples() {
        let sq = unit_square();
        let rc = recession_cone(&sq);
        let g = to_generators(&rc);
        assert_eq!(g.vertices, vec![RatVector::from_i64(&[0, 0])]);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn dim_examples() {
        assert_eq!(dim(&ConstraintPoly::empty(3)), -1);
        let point = ConstraintPoly::from_i64(&[&[1], &[-1]], &[2, -2], 1);
        assert_eq!(dim(&point), 0);
        assert_eq!(dim(&unit_square()), 2);
    }

    #[test]
    fn relative_interior_examples() {
        // segment [0, 2] -> the prioritized interior integer 1
        let seg = ConstraintPoly::from_i64(&[&[1], &[-1]], &[2, 0], 1);
        assert_eq!(
            relative_interior_point(&seg, None).unwrap(),
            RatVector::from_i64(&[1])
        );
        // single point {2}
        let pt = ConstraintPoly::from_i64(&[&[1], &[-1]], &[2, -2], 1);
        assert_eq!(
            relative_interior_point(&pt, None).unwrap(),
            RatVector::from_i64(&[2])
        );
        // open box: strictly inside the unit square
        let sq = unit_square();
        let p = relative_interior_point(&sq, None).unwrap();
        for i in 0..sq.nrows() {
            assert!(sq.a.row(i).dot(&p) < sq.b[i], "not strictly inside");
        }
        // empty -> error
        assert_eq!(
            relative_interior_point(&ConstraintPoly::empty(1), None),
            Err(PolyError::Empty)
        );
    }

    #[test]
    fn face_right_edge() {
        let sq = unit_square();
        let f = face(&sq, &RatVector::from_i64(&[1, 0]), &int(1)).unwrap();
        assert!(!f.empty);
        assert_eq!(f.tight_rows.iter().cloned().collect::<Vec<_>>(), vec![0]);
        let edge = f.induced();
        assert!(edge.contains(&RatVector::new(vec![int(1), rat(1, 2)])));
        assert!(!edge.contains(&RatVector::new(vec![rat(1, 2), rat(1, 2)])));
    }

    #[test]
    fn face_invalid_hyperplane() {
        let sq = unit_square();
        assert_eq!(
            face(&sq, &RatVector::from_i64(&[1, 0]), &rat(1, 2)).unwrap_err(),
            PolyError::InvalidHyperplane
        );
    }

    #[test]
    fn face_of_whole_polyhedron() {
        // hyperplane implied everywhere: x = 1 over the segment {x = 1, y free}
        let p = ConstraintPoly::from_i64(&[&[1, 0], &[-1, 0]], &[1, -1], 2);
        let f = face(&p, &RatVector::from_i64(&[1, 0]), &int(1)).unwrap();
        assert!(!f.empty);
        assert!(set_equal(&f.induced(), &p));
    }

    #[test]
    fn pick_inside_rules() {
        // 0 has priority
        assert_eq!(pick_inside(Some(&int(-1)), Some(&int(1))), int(0));
        // sign-definite interval: integer closest to zero
        assert_eq!(pick_inside(Some(&int(0)), Some(&int(2))), int(1));
        assert_eq!(pick_inside(Some(&int(-5)), Some(&int(-2))), int(-3));
        // no integer inside: midpoint
        assert_eq!(pick_inside(Some(&int(1)), Some(&int(2))), rat(3, 2));
        // infinite ends
        assert_eq!(pick_inside(None, None), int(0));
        assert_eq!(pick_inside(Some(&int(3)), None), int(4));
        assert_eq!(pick_inside(None, Some(&int(-2))), int(-3));
        assert_eq!(pick_inside(None, Some(&rat(-1, 2))), int(-1));
    }

    #[test]
    fn integral_checks() {
        assert!(is_integral(&unit_square()));
        // half-integral segment {x = 1/2} is not integral
        let p = ConstraintPoly::from_rows(
            RatMatrix::from_i64(&[&[1], &[-1]], 1),
            RatVector::new(vec![rat(1, 2), rat(-1, 2)]),
        );
        assert!(!is_integral(&p));
        // the non-pointed line {x - y = 0} is integral
        let p = ConstraintPoly::from_i64(&[&[1, -1], &[-1, 1]], &[0, 0], 2);
        assert!(is_integral(&p));
    }

    #[test]
    fn redundancy_removal() {
        let p = ConstraintPoly::from_i64(&[&[1], &[1], &[1]], &[1, 2, 3], 1);
        let r = remove_redundant_rows(&p);
        assert_eq!(r.nrows(), 1);
        assert!(set_equal(&p, &r));
    }

    #[test]
    fn whole_space_roundtrip() {
        let p = ConstraintPoly::new(2);
        let g = to_generators(&p);
        assert!(!g.is_empty());
        let q = to_constraints(&g, 2);
        assert!(set_equal(&p, &q));
    }
}
