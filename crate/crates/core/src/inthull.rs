//! The integer-hull pipeline.
//!
//! A polyhedron is decomposed into independent components (connected
//! components of the constraint-variable graph); each component is matched
//! against fast special cases -- cones, totally unimodular systems,
//! difference bounds, two-variable components, octagonal relations -- and
//! everything else goes through an iterated Chvatal-Gomory cutting-plane
//! fallback. Results carry per-component provenance and an exactness flag:
//! an inexact result is still a sound outer approximation (it contains every
//! integer point of the input).

use crate::linalg::hnf;
use crate::linalg::{ceil_int, floor_int, RatMatrix, RatVector, Rational};
use crate::polyhedra::{
    integer_point_on_minimal_face, is_integral, remove_redundant_rows, to_constraints,
    to_generators, ConstraintPoly, GeneratorRep,
};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Classification of a component, in decreasing priority.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullClass {
    /// b = 0: the cone is integral as-is.
    Cone,
    /// totally unimodular matrix with integer right-hand side: integral as-is.
    TotallyUnimodular,
    /// rows of the form x - y <= d or +-x <= d: floor the constants.
    DifferenceBounds,
    /// at most two variables in the whole component: exact fast hull.
    TwoDim { vars: Vec<usize> },
    /// <= 2 variables per row, coefficients in {0, +-1}: tight closure.
    Octagon,
    General,
}

impl HullClass {
    pub fn name(&self) -> &'static str {
        match self {
            HullClass::Cone => "cone",
            HullClass::TotallyUnimodular => "totally-unimodular",
            HullClass::DifferenceBounds => "difference-bounds",
            HullClass::TwoDim { .. } => "two-dim",
            HullClass::Octagon => "octagon",
            HullClass::General => "general",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctagonMode {
    /// tight closure only: fast, not guaranteed to reach the hull
    Closure,
    /// verify integrality of the closure; escalate to General when it falls short
    Exact,
}

#[derive(Clone, Debug)]
pub struct HullConfig {
    /// Chvatal-Gomory rounds before giving up with `exact = false`.
    pub cut_round_cap: usize,
    pub octagon_mode: OctagonMode,
}

impl Default for HullConfig {
    fn default() -> Self {
        HullConfig {
            cut_round_cap: 25,
            octagon_mode: OctagonMode::Exact,
        }
    }
}

/// Per-component provenance of a hull computation.
#[derive(Clone, Debug)]
pub struct ComponentReport {
    /// original variable indices of the component
    pub vars: Vec<usize>,
    pub class: HullClass,
    /// hull rows (in ambient coordinates) not present in the input
    pub added: Vec<(RatVector, Rational)>,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct HullReport {
    pub components: Vec<ComponentReport>,
    pub exact: bool,
}

impl HullReport {
    fn exact_trivially() -> Self {
        HullReport {
            components: Vec::new(),
            exact: true,
        }
    }
}

/// One independent component: variable indices (ambient), the rows it owns,
/// and its polyhedron in local coordinates.
#[derive(Clone, Debug)]
pub struct Component {
    pub vars: Vec<usize>,
    pub rows: Vec<usize>,
    pub poly: ConstraintPoly,
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// Split `p` into components over disjoint variable sets (connected
/// components of the constraint-variable graph). Rows without variables are
/// dropped when trivially true; the caller is expected to have ruled out
/// infeasible constant rows. The conjunction of the components equals `p`.
pub fn decompose_components(p: &ConstraintPoly) -> Vec<Component> {
    let d = p.ambient();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
            r
        } else {
            i
        }
    }
    let supports: Vec<Vec<usize>> = (0..p.nrows())
        .map(|i| {
            (0..d)
                .filter(|&j| !p.a.row(i)[j].is_zero())
                .collect::<Vec<_>>()
        })
        .collect();
    for sup in &supports {
        for w in sup.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..d {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut components = Vec::new();
    for (_, vars) in groups {
        let rows: Vec<usize> = (0..p.nrows())
            .filter(|&i| !supports[i].is_empty() && vars.contains(&supports[i][0]))
            .collect();
        if rows.is_empty() {
            continue; // unconstrained variables form no component
        }
        let mut local = ConstraintPoly::new(vars.len());
        for &i in &rows {
            let row = RatVector::new(vars.iter().map(|&v| p.a.row(i)[v].clone()).collect());
            local.push_row(row, p.b[i].clone());
        }
        components.push(Component {
            vars,
            rows,
            poly: local,
        });
    }
    components
}

fn embed_row(row: &RatVector, vars: &[usize], ambient: usize) -> RatVector {
    let mut out = RatVector::zeros(ambient);
    for (local, &v) in vars.iter().enumerate() {
        out[v] = row[local].clone();
    }
    out
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// The most specific applicable class, in the priority order
/// Cone > TotallyUnimodular > DifferenceBounds > TwoDim > Octagon > General.
pub fn classify(p: &ConstraintPoly) -> HullClass {
    if p.b.iter().all(|c| c.is_zero()) {
        return HullClass::Cone;
    }
    let one = Rational::one();
    let entries_unit = (0..p.nrows()).all(|i| {
        p.a.row(i)
            .iter()
            .all(|c| c.is_zero() || c.abs() == one)
    });
    if entries_unit && p.b.is_integral() && tu_within_budget(&p.a) {
        return HullClass::TotallyUnimodular;
    }
    let is_db_row = |i: usize| {
        let nz: Vec<&Rational> = p.a.row(i).iter().filter(|c| !c.is_zero()).collect();
        match nz.len() {
            1 => nz[0].abs() == one,
            2 => (nz[0].abs() == one && nz[1].abs() == one) && nz[0] != nz[1],
            _ => false,
        }
    };
    if (0..p.nrows()).all(is_db_row) {
        return HullClass::DifferenceBounds;
    }
    let used: Vec<usize> = (0..p.ambient())
        .filter(|&j| (0..p.nrows()).any(|i| !p.a.row(i)[j].is_zero()))
        .collect();
    if used.len() <= 2 {
        return HullClass::TwoDim { vars: used };
    }
    let octagon_row = |i: usize| {
        let nz: Vec<&Rational> = p.a.row(i).iter().filter(|c| !c.is_zero()).collect();
        nz.len() <= 2 && nz.iter().all(|c| c.abs() == one)
    };
    if (0..p.nrows()).all(octagon_row) {
        return HullClass::Octagon;
    }
    HullClass::General
}

fn is_octagon_shaped(p: &ConstraintPoly) -> bool {
    let one = Rational::one();
    (0..p.nrows()).all(|i| {
        let nz: Vec<&Rational> = p.a.row(i).iter().filter(|c| !c.is_zero()).collect();
        nz.len() <= 2 && nz.iter().all(|c| c.abs() == one)
    })
}

/// True iff every square subdeterminant of `m` is in {0, +-1}. Exact
/// enumeration with early exit; intended for small matrices.
pub fn is_totally_unimodular(m: &RatMatrix) -> bool {
    let one = Rational::one();
    for i in 0..m.nrows() {
        for c in m.row(i).iter() {
            if !c.is_zero() && c.abs() != one {
                return false;
            }
        }
    }
    let ints: Vec<Vec<BigInt>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|c| c.to_integer()).collect())
        .collect();
    let kmax = m.nrows().min(m.ncols());
    for k in 2..=kmax {
        let mut rows_idx = combinations_first(m.nrows(), k);
        loop {
            let mut cols_idx = combinations_first(m.ncols(), k);
            loop {
                let det = int_det(&ints, &rows_idx, &cols_idx);
                if det.abs() > BigInt::one() {
                    return false;
                }
                if !combinations_next(&mut cols_idx, m.ncols()) {
                    break;
                }
            }
            if !combinations_next(&mut rows_idx, m.nrows()) {
                break;
            }
        }
    }
    true
}

fn tu_within_budget(m: &RatMatrix) -> bool {
    // subdeterminant enumeration up to 6x6 minors; larger systems fall
    // through to the general hull
    let kmax = m.nrows().min(m.ncols());
    if kmax > 6 {
        return false;
    }
    let mut count: u128 = 0;
    for k in 2..=kmax {
        count += binomial(m.nrows(), k) * binomial(m.ncols(), k);
        if count > 200_000 {
            return false;
        }
    }
    is_totally_unimodular(m)
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

fn combinations_first(_n: usize, k: usize) -> Vec<usize> {
    (0..k).collect()
}

fn combinations_next(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn int_det(m: &[Vec<BigInt>], rows: &[usize], cols: &[usize]) -> BigInt {
    // fraction-free elimination on a copy
    let k = rows.len();
    let mut w: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for c in 0..k {
        let piv = match (c..k).find(|&i| !w[i][c].is_zero()) {
            Some(p) => p,
            None => return BigInt::zero(),
        };
        if piv != c {
            w.swap(c, piv);
            sign = -sign;
        }
        for i in (c + 1)..k {
            for j in (c + 1)..k {
                let t = &w[c][c] * &w[i][j] - &w[i][c] * &w[c][j];
                w[i][j] = &t / &prev;
            }
            w[i][c] = BigInt::zero();
        }
        prev = w[c][c].clone();
    }
    sign * w[k - 1][k - 1].clone()
}

// ---------------------------------------------------------------------------
// Row normalization
// ---------------------------------------------------------------------------

/// Scale every row positively to coprime integer coefficients, keeping the
/// right-hand side rational. Trivial rows vanish; a contradictory constant
/// row collapses the whole polyhedron.
fn normalize_rows(p: &ConstraintPoly) -> ConstraintPoly {
    let mut out = ConstraintPoly::new(p.ambient());
    for i in 0..p.nrows() {
        let row = p.a.row(i);
        if row.is_zero() {
            if p.b[i].is_negative() {
                return ConstraintPoly::empty(p.ambient());
            }
            continue;
        }
        let canon = row.canonical_ray();
        // canonical_ray scales by a positive rational; apply the same scale
        // to the rhs: scale = canon_j / row_j on any nonzero entry.
        let j = (0..row.dim()).find(|&j| !row[j].is_zero()).unwrap();
        let scale = &canon[j] / &row[j];
        out.push_row(canon, &p.b[i] * scale);
    }
    out
}

/// normalize_rows followed by flooring every right-hand side. Valid for
/// integer-hull computations: each left-hand side is integer on Z^d.
fn normalize_rows_floor(p: &ConstraintPoly) -> ConstraintPoly {
    let n = normalize_rows(p);
    let mut out = ConstraintPoly::new(n.ambient());
    for i in 0..n.nrows() {
        if n.a.row(i).is_zero() {
            // the canonical empty marker from normalize_rows
            return ConstraintPoly::empty(n.ambient());
        }
        out.push_row(n.a.row(i).clone(), Rational::from_integer(floor_int(&n.b[i])));
    }
    out
}

// ---------------------------------------------------------------------------
// Special-case hulls
// ---------------------------------------------------------------------------

/// Floor each bound: exact hull for difference-bound systems (the matrix is
/// totally unimodular and the floored right-hand side is integer).
pub fn tighten_difference_bounds(p: &ConstraintPoly) -> ConstraintPoly {
    let one = Rational::one();
    let db_shaped = (0..p.nrows()).all(|i| {
        let nz: Vec<&Rational> = p.a.row(i).iter().filter(|c| !c.is_zero()).collect();
        match nz.len() {
            0 => true,
            1 => nz[0].abs() == one,
            2 => (nz[0].abs() == one && nz[1].abs() == one) && nz[0] != nz[1],
            _ => false,
        }
    });
    assert!(db_shaped, "tighten_difference_bounds: wrong class");
    let t = normalize_rows_floor(p);
    if t.is_empty() {
        return ConstraintPoly::empty(p.ambient());
    }
    t
}

/// Exact integer hull of a component with at most two used variables.
/// Bounded part by enumeration over the vertex+ray box (the decomposition
/// P = conv(V) + cone(R) makes conv(I(P cap box)) + cone(R) the hull), with
/// the recession cone re-attached; degenerate directions go through the
/// one-dimensional lattice quotient.
pub fn harvey_2d_hull(p: &ConstraintPoly) -> ConstraintPoly {
    let used: Vec<usize> = (0..p.ambient())
        .filter(|&j| (0..p.nrows()).any(|i| !p.a.row(i)[j].is_zero()))
        .collect();
    assert!(used.len() <= 2, "harvey_2d_hull: more than 2 variables");
    let p = normalize_rows(p);
    if p.is_empty() {
        return ConstraintPoly::empty(p.ambient());
    }
    if p.nrows() == 0 {
        return p;
    }
    let lineality = p.a.kernel_basis();
    let effective = p.ambient() as i64 - lineality.len() as i64;
    if effective == 0 {
        return ConstraintPoly::new(p.ambient());
    }
    if effective == 1 {
        return one_dim_lattice_hull(&p);
    }
    let gens = to_generators(&p);
    debug_assert!(!gens.is_empty());
    hull_by_box_enumeration(&p, &gens)
}

/// Integer hull of a polyhedron whose constraints cut a single effective
/// dimension: every row is a multiple of one primitive integer form phi with
/// phi(Z^d) = Z, so the hull is the floored/ceiled interval of phi.
fn one_dim_lattice_hull(p: &ConstraintPoly) -> ConstraintPoly {
    let j = (0..p.nrows()).find(|&i| !p.a.row(i).is_zero()).unwrap();
    let phi = p.a.row(j).canonical_direction();
    let mut lo: Option<Rational> = None; // phi(x) >= lo
    let mut hi: Option<Rational> = None; // phi(x) <= hi
    for i in 0..p.nrows() {
        let row = p.a.row(i);
        if row.is_zero() {
            continue;
        }
        // row = alpha * phi
        let k = (0..row.dim()).find(|&k| !row[k].is_zero()).unwrap();
        let alpha = &row[k] / &phi[k];
        debug_assert_eq!(&phi.scale(&alpha), row, "rows not parallel in 1-dim component");
        let bound = &p.b[i] / &alpha;
        if alpha.is_positive() {
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        }
    }
    let lo_int = lo.map(|l| ceil_int(&l));
    let hi_int = hi.map(|h| floor_int(&h));
    if let (Some(l), Some(h)) = (&lo_int, &hi_int) {
        if l > h {
            return ConstraintPoly::empty(p.ambient());
        }
    }
    let mut out = ConstraintPoly::new(p.ambient());
    if let Some(h) = hi_int {
        out.push_row(phi.clone(), Rational::from_integer(h));
    }
    if let Some(l) = lo_int {
        out.push_row(phi.neg(), Rational::from_integer(-l));
    }
    out
}

/// conv(I(P cap box)) + cone(rays) for a pointed P given by its generators.
/// Exact whenever the box contains conv(vertices) + the ray zonotope.
fn hull_by_box_enumeration(p: &ConstraintPoly, gens: &GeneratorRep) -> ConstraintPoly {
    let d = p.ambient();
    let rays: Vec<RatVector> = gens.rays.iter().map(|r| r.canonical_ray()).collect();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for c in 0..d {
        let mut l = gens.vertices[0][c].clone();
        let mut h = gens.vertices[0][c].clone();
        for v in &gens.vertices[1..] {
            if v[c] < l {
                l = v[c].clone();
            }
            if v[c] > h {
                h = v[c].clone();
            }
        }
        for r in &rays {
            if r[c].is_negative() {
                l += &r[c];
            } else {
                h += &r[c];
            }
        }
        lo.push(ceil_int(&l));
        hi.push(floor_int(&h));
    }
    let mut points: Vec<RatVector> = Vec::new();
    let mut cursor: Vec<BigInt> = lo.clone();
    'outer: loop {
        let cand = RatVector::new(cursor.iter().cloned().map(Rational::from_integer).collect());
        if p.contains(&cand) {
            points.push(cand);
        }
        // advance odometer
        let mut c = 0;
        loop {
            if c == d {
                break 'outer;
            }
            cursor[c] += 1;
            if cursor[c] <= hi[c] {
                break;
            }
            cursor[c] = lo[c].clone();
            c += 1;
        }
    }
    if points.is_empty() {
        return ConstraintPoly::empty(d);
    }
    remove_redundant_rows(&to_constraints(
        &GeneratorRep {
            vertices: points,
            rays,
        },
        d,
    ))
}

// ---------------------------------------------------------------------------
// Octagon tight closure
// ---------------------------------------------------------------------------

/// Transitive + tightening closure over the integers of an octagonal system
/// (<= 2 variables per row, coefficients in {0, +-1}). The result is closed
/// and contains the same integer points; it is NOT guaranteed to be the
/// integer hull.
pub fn octagon_tight_closure(p: &ConstraintPoly) -> ConstraintPoly {
    assert!(is_octagon_shaped(p), "octagon_tight_closure: wrong class");
    let p = normalize_rows_floor(p);
    let d = p.ambient();
    if p.is_empty() {
        return ConstraintPoly::empty(d);
    }
    let n = 2 * d; // node 2k carries +x_k, node 2k+1 carries -x_k
    let mut m: Vec<Vec<Option<BigInt>>> = vec![vec![None; n]; n];
    let set_min = |m: &mut Vec<Vec<Option<BigInt>>>, i: usize, j: usize, v: BigInt| {
        if m[i][j].as_ref().map_or(true, |old| &v < old) {
            m[i][j] = Some(v);
        }
    };
    for i in 0..p.nrows() {
        let row = p.a.row(i);
        let nz: Vec<usize> = (0..d).filter(|&j| !row[j].is_zero()).collect();
        let b = p.b[i].to_integer();
        match nz.len() {
            1 => {
                let a = nz[0];
                if row[a].is_positive() {
                    set_min(&mut m, 2 * a, 2 * a + 1, BigInt::from(2) * &b);
                } else {
                    set_min(&mut m, 2 * a + 1, 2 * a, BigInt::from(2) * &b);
                }
            }
            2 => {
                let (a, c) = (nz[0], nz[1]);
                let (pa, pc) = (row[a].is_positive(), row[c].is_positive());
                // V_i - V_j <= b with V_{2k} = x_k, V_{2k+1} = -x_k
                let (i1, j1, i2, j2) = match (pa, pc) {
                    (true, true) => (2 * a, 2 * c + 1, 2 * c, 2 * a + 1),
                    (true, false) => (2 * a, 2 * c, 2 * c + 1, 2 * a + 1),
                    (false, true) => (2 * c, 2 * a, 2 * a + 1, 2 * c + 1),
                    (false, false) => (2 * a + 1, 2 * c, 2 * c + 1, 2 * a),
                };
                set_min(&mut m, i1, j1, b.clone());
                set_min(&mut m, i2, j2, b);
            }
            _ => unreachable!("octagon shape checked above"),
        }
    }
    // closure loop: shortest paths, then integer tightening of unary bounds
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = m[i][k].clone() else { continue };
                for j in 0..n {
                    let Some(kj) = &m[k][j] else { continue };
                    let cand = &ik + kj;
                    if m[i][j].as_ref().map_or(true, |old| &cand < old) {
                        m[i][j] = Some(cand);
                        changed = true;
                    }
                }
            }
        }
        for i in 0..n {
            if let Some(v) = &m[i][i] {
                if v.is_negative() {
                    return ConstraintPoly::empty(d);
                }
            }
        }
        for a in 0..d {
            for (i, j) in [(2 * a, 2 * a + 1), (2 * a + 1, 2 * a)] {
                if let Some(v) = m[i][j].clone() {
                    let t = BigInt::from(2) * floor_div(&v, 2);
                    if t < v {
                        m[i][j] = Some(t);
                        changed = true;
                    }
                }
            }
        }
        // strengthening through the tightened unary bounds
        for i in 0..n {
            let ibar = i ^ 1;
            let Some(ii) = m[i][ibar].clone() else { continue };
            for j in 0..n {
                let jbar = j ^ 1;
                if i == j {
                    continue;
                }
                let Some(jj) = &m[jbar][j] else { continue };
                let cand = (&ii + jj) / BigInt::from(2);
                if m[i][j].as_ref().map_or(true, |old| &cand < old) {
                    m[i][j] = Some(cand);
                    changed = true;
                }
            }
        }
        for a in 0..d {
            if let (Some(u), Some(v)) = (&m[2 * a][2 * a + 1], &m[2 * a + 1][2 * a]) {
                if (u + v).is_negative() {
                    return ConstraintPoly::empty(d);
                }
            }
        }
        if !changed {
            break;
        }
    }
    // decode the closed matrix back into inequalities
    let mut out = ConstraintPoly::new(d);
    for a in 0..d {
        if let Some(v) = &m[2 * a][2 * a + 1] {
            let mut row = RatVector::zeros(d);
            row[a] = Rational::one();
            out.push_row(row, Rational::new(v.clone(), BigInt::from(2)));
        }
        if let Some(v) = &m[2 * a + 1][2 * a] {
            let mut row = RatVector::zeros(d);
            row[a] = -Rational::one();
            out.push_row(row, Rational::new(v.clone(), BigInt::from(2)));
        }
        for c in 0..d {
            if a == c {
                continue;
            }
            if let Some(v) = &m[2 * a][2 * c] {
                let mut row = RatVector::zeros(d);
                row[a] = Rational::one();
                row[c] = -Rational::one();
                out.push_row(row, Rational::from_integer(v.clone()));
            }
            if a < c {
                if let Some(v) = &m[2 * a][2 * c + 1] {
                    let mut row = RatVector::zeros(d);
                    row[a] = Rational::one();
                    row[c] = Rational::one();
                    out.push_row(row, Rational::from_integer(v.clone()));
                }
                if let Some(v) = &m[2 * a + 1][2 * c] {
                    let mut row = RatVector::zeros(d);
                    row[a] = -Rational::one();
                    row[c] = -Rational::one();
                    out.push_row(row, Rational::from_integer(v.clone()));
                }
            }
        }
    }
    let out = normalize_rows_floor(&out);
    remove_redundant_rows(&out)
}

fn floor_div(v: &BigInt, by: i64) -> BigInt {
    let by = BigInt::from(by);
    num::Integer::div_floor(v, &by)
}

// ---------------------------------------------------------------------------
// General fallback: iterated Chvatal-Gomory cuts
// ---------------------------------------------------------------------------

/// The general integer hull: unimodular reduction of lineality, bounding box
/// from the generator representation for unbounded inputs, then iterated
/// Gomory cuts at fractional vertices. Returns the hull and whether it is
/// certified exact; on a round-cap the partial closure (a sound outer
/// approximation) is returned with `false`.
pub fn general_integer_hull(p: &ConstraintPoly, cap: usize) -> (ConstraintPoly, bool) {
    let p = normalize_rows_floor(p);
    if p.is_empty() {
        return (ConstraintPoly::empty(p.ambient()), true);
    }
    if p.nrows() == 0 {
        return (p, true);
    }
    let lineality = p.a.kernel_basis();
    if !lineality.is_empty() {
        return lineality_reduced_hull(&p, cap);
    }
    let gens = to_generators(&p);
    debug_assert!(!gens.is_empty());
    let rays: Vec<RatVector> = gens.rays.iter().map(|r| r.canonical_ray()).collect();
    if rays.is_empty() {
        return cg_close_bounded(&p, cap);
    }
    // Bound the interesting part: conv(V) + ray zonotope fits in the box.
    let d = p.ambient();
    let mut boxed = p.clone();
    for c in 0..d {
        let mut l = gens.vertices[0][c].clone();
        let mut h = gens.vertices[0][c].clone();
        for v in &gens.vertices[1..] {
            if v[c] < l {
                l = v[c].clone();
            }
            if v[c] > h {
                h = v[c].clone();
            }
        }
        for r in &rays {
            if r[c].is_negative() {
                l += &r[c];
            } else {
                h += &r[c];
            }
        }
        let mut row = RatVector::zeros(d);
        row[c] = Rational::one();
        boxed.push_row(row.clone(), Rational::from_integer(floor_int(&h)));
        boxed.push_row(row.neg(), Rational::from_integer(-ceil_int(&l)));
    }
    let (bounded_hull, exact) = cg_close_bounded(&boxed, cap);
    if bounded_hull.is_empty() {
        // no integer point in conv(V)+zonotope means none anywhere
        return (ConstraintPoly::empty(d), exact);
    }
    let hull_gens = to_generators(&bounded_hull);
    let full = to_constraints(
        &GeneratorRep {
            vertices: hull_gens.vertices,
            rays,
        },
        d,
    );
    (remove_redundant_rows(&full), exact)
}

/// Change coordinates unimodularly so the lineality space becomes trailing
/// free coordinates, hull the pointed part, and map the rows back.
fn lineality_reduced_hull(p: &ConstraintPoly, cap: usize) -> (ConstraintPoly, bool) {
    let d = p.ambient();
    // rows already have integer coefficients after normalization
    let ints: Vec<Vec<BigInt>> = (0..p.nrows())
        .map(|i| p.a.row(i).iter().map(|c| c.to_integer()).collect())
        .collect();
    let ech = hnf::column_echelon(&ints, d);
    let r = ech.rank();
    debug_assert!(r < d);
    // x = U z; constraints involve only z_1..z_r
    let mut reduced = ConstraintPoly::new(r);
    for i in 0..p.nrows() {
        let row = RatVector::new(
            (0..r)
                .map(|c| Rational::from_integer(ech.h[i][c].clone()))
                .collect(),
        );
        reduced.push_row(row, p.b[i].clone());
    }
    let (hz, exact) = general_integer_hull(&reduced, cap);
    if hz.is_empty() {
        return (ConstraintPoly::empty(d), exact);
    }
    // z' = (U^-1 x)_{1..r}
    let umat = RatMatrix::from_rows(
        ech.u
            .iter()
            .map(|row| RatVector::new(row.iter().cloned().map(Rational::from_integer).collect()))
            .collect(),
        d,
    );
    let uinv = invert_square(&umat).expect("unimodular matrix is invertible");
    let mut out = ConstraintPoly::new(d);
    for i in 0..hz.nrows() {
        let mut row = RatVector::zeros(d);
        for (c, coeff) in hz.a.row(i).iter().enumerate() {
            if !coeff.is_zero() {
                row = row.add(&uinv.row(c).scale(coeff));
            }
        }
        out.push_row(row, hz.b[i].clone());
    }
    (out, exact)
}

fn invert_square(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.ncols();
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

/// Iterated Gomory cuts on a bounded pointed polyhedron with integer rows.
/// Exactness certificate: a bounded polytope whose vertices are all integer
/// is integral, and a closure sandwiched between P_I and P that is integral
/// equals P_I.
fn cg_close_bounded(p: &ConstraintPoly, cap: usize) -> (ConstraintPoly, bool) {
    let mut cur = normalize_rows_floor(p);
    for _ in 0..cap {
        if cur.is_empty() {
            return (ConstraintPoly::empty(p.ambient()), true);
        }
        let gens = to_generators(&cur);
        if gens.is_empty() {
            return (ConstraintPoly::empty(p.ambient()), true);
        }
        debug_assert!(gens.rays.is_empty(), "cg_close_bounded: unbounded input");
        let fractional: Vec<&RatVector> =
            gens.vertices.iter().filter(|v| !v.is_integral()).collect();
        if fractional.is_empty() {
            return (remove_redundant_rows(&cur), true);
        }
        let mut cuts = ConstraintPoly::new(cur.ambient());
        for v in fractional {
            for (row, rhs) in gomory_cuts_at(&cur, v) {
                cuts.push_row(row, rhs);
            }
        }
        cur = normalize_rows_floor(&remove_redundant_rows(&cur.conjoin(&cuts)));
    }
    (remove_redundant_rows(&cur), false)
}

/// Gomory fractional cuts at a fractional vertex, derived from an invertible
/// subset B of the rows tight at v: x = v - B^-1 s with the tight slacks s
/// nonnegative integers on I(P), so each fractional coordinate row yields
/// sum_j frac(B^-1[i][j]) s_j >= frac(v_i), violated at v.
fn gomory_cuts_at(p: &ConstraintPoly, v: &RatVector) -> Vec<(RatVector, Rational)> {
    let d = p.ambient();
    let tight: Vec<usize> = (0..p.nrows())
        .filter(|&i| p.a.row(i).dot(v) == p.b[i])
        .collect();
    // greedy independent subset of size d
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for &i in &tight {
        let mut cand = chosen.clone();
        cand.push(i);
        let sub = RatMatrix::from_rows(cand.iter().map(|&j| p.a.row(j).clone()).collect(), d);
        if sub.rank() > rank {
            rank += 1;
            chosen.push(i);
            if rank == d {
                break;
            }
        }
    }
    if rank < d {
        return Vec::new(); // not a vertex basis; nothing to cut here
    }
    let bmat = RatMatrix::from_rows(chosen.iter().map(|&j| p.a.row(j).clone()).collect(), d);
    let Some(binv) = invert_square(&bmat) else {
        return Vec::new();
    };
    let mut cuts = Vec::new();
    for i in 0..d {
        if v[i].is_integer() {
            continue;
        }
        let f0 = &v[i] - Rational::from_integer(floor_int(&v[i]));
        // sum_j f_ij (b_j - a_j x) >= f0
        let mut lhs = RatVector::zeros(d);
        let mut rhs = -f0;
        for (jj, &rowidx) in chosen.iter().enumerate() {
            let coef = &binv.row(i)[jj];
            let f = coef - Rational::from_integer(floor_int(coef));
            if f.is_zero() {
                continue;
            }
            lhs = lhs.add(&p.a.row(rowidx).scale(&f));
            rhs += &f * &p.b[rowidx];
        }
        if !lhs.is_zero() {
            debug_assert!(lhs.dot(v) > rhs, "cut must be violated at the vertex");
            cuts.push((lhs, rhs));
        }
    }
    cuts
}

// ---------------------------------------------------------------------------
// The pipeline
// ---------------------------------------------------------------------------

pub fn integer_hull(p: &ConstraintPoly) -> (ConstraintPoly, HullReport) {
    integer_hull_with(p, &HullConfig::default())
}

/// decompose -> classify each component -> fast hull or general fallback ->
/// conjoin, with per-component provenance and exactness.
pub fn integer_hull_with(p: &ConstraintPoly, config: &HullConfig) -> (ConstraintPoly, HullReport) {
    let ambient = p.ambient();
    let norm = normalize_rows(p);
    if norm.is_empty() {
        return (ConstraintPoly::empty(ambient), HullReport::exact_trivially());
    }
    if norm.nrows() == 0 {
        return (norm, HullReport::exact_trivially());
    }
    if !crate::lp::is_feasible(&norm.a, &norm.b) {
        return (ConstraintPoly::empty(ambient), HullReport::exact_trivially());
    }
    let mut out = ConstraintPoly::new(ambient);
    let mut reports = Vec::new();
    let mut all_exact = true;
    for comp in decompose_components(&norm) {
        let class = classify(&comp.poly);
        let (hull, exact) = match &class {
            HullClass::Cone | HullClass::TotallyUnimodular => (comp.poly.clone(), true),
            HullClass::DifferenceBounds => (tighten_difference_bounds(&comp.poly), true),
            HullClass::TwoDim { .. } => (harvey_2d_hull(&comp.poly), true),
            HullClass::Octagon => {
                let closure = octagon_tight_closure(&comp.poly);
                let integral = !closure.is_empty() && is_integral(&closure);
                match config.octagon_mode {
                    OctagonMode::Closure => (closure.clone(), closure.is_empty() || integral),
                    OctagonMode::Exact => {
                        if closure.is_empty() || integral {
                            (closure, true)
                        } else {
                            general_integer_hull(&closure, config.cut_round_cap)
                        }
                    }
                }
            }
            HullClass::General => general_integer_hull(&comp.poly, config.cut_round_cap),
        };
        if hull.is_empty() {
            // a component without integer points empties the whole hull
            return (
                ConstraintPoly::empty(ambient),
                HullReport {
                    components: vec![ComponentReport {
                        vars: comp.vars,
                        class,
                        added: Vec::new(),
                        exact: true,
                    }],
                    exact: true,
                },
            );
        }
        let mut added = Vec::new();
        for i in 0..hull.nrows() {
            let row = embed_row(hull.a.row(i), &comp.vars, ambient);
            let rhs = hull.b[i].clone();
            let present = (0..norm.nrows())
                .any(|j| norm.a.row(j) == &row && norm.b[j] == rhs);
            if !present {
                added.push((row.clone(), rhs.clone()));
            }
            out.push_row(row, rhs);
        }
        all_exact &= exact;
        reports.push(ComponentReport {
            vars: comp.vars,
            class,
            added,
            exact,
        });
    }
    (
        out,
        HullReport {
            components: reports,
            exact: all_exact,
        },
    )
}

/// Generator representation of the integer hull with all generators integer;
/// only meaningful when the hull is exact. Points are moved to integer
/// points of their minimal faces, rays are primitive integer already.
pub fn integral_generators(hull: &ConstraintPoly) -> Option<GeneratorRep> {
    let gens = to_generators(hull);
    if gens.is_empty() {
        return Some(gens);
    }
    let mut vertices = Vec::new();
    for v in &gens.vertices {
        vertices.push(integer_point_on_minimal_face(hull, v)?);
    }
    Some(GeneratorRep {
        vertices,
        rays: gens.rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::polyhedra::{self, set_equal};

    #[test]
    fn classify_examples() {
        // cone
        let cone = ConstraintPoly::from_i64(&[&[2, -3], &[1, 1]], &[0, 0], 2);
        assert_eq!(classify(&cone), HullClass::Cone);
        // difference bounds with fractional rhs
        let db = ConstraintPoly::from_rows(
            RatMatrix::from_i64(&[&[1, -1], &[0, 1]], 2),
            RatVector::new(vec![rat(3, 2), int(0)]),
        );
        assert_eq!(classify(&db), HullClass::DifferenceBounds);
        // the 3-variable octagonal guard of the inverting loop
        let oct = ConstraintPoly::from_i64(
            &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]],
            &[2, 3, 4],
            3,
        );
        assert_eq!(classify(&oct), HullClass::Octagon);
    }

    #[test]
    fn tu_examples() {
        assert!(is_totally_unimodular(&RatMatrix::identity(3)));
        assert!(!is_totally_unimodular(&RatMatrix::from_i64(
            &[&[1, 1], &[-1, 1]],
            2
        )));
        // incidence-style difference matrix
        let inc = RatMatrix::from_i64(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]], 3);
        assert!(is_totally_unimodular(&inc));
    }

    #[test]
    fn db_tightening() {
        let p = ConstraintPoly::from_rows(
            RatMatrix::from_i64(&[&[1, -1]], 2),
            RatVector::new(vec![rat(3, 2)]),
        );
        let t = tighten_difference_bounds(&p);
        assert_eq!(t.b[0], int(1));

        // already integer: unchanged
        let p = ConstraintPoly::from_i64(&[&[1, -1], &[0, -1]], &[2, 0], 2);
        let t = tighten_difference_bounds(&p);
        assert!(set_equal(&p, &t));

        // floors to an empty integer set
        let p = ConstraintPoly::from_rows(
            RatMatrix::from_i64(&[&[1], &[-1]], 1),
            RatVector::new(vec![rat(-1, 2), rat(-1, 2)]),
        );
        let t = tighten_difference_bounds(&p);
        assert!(t.is_empty());
    }

    #[test]
    fn harvey_adds_paper_cuts() {
        // the two-variable block of the division loop:
        // 4x >= 1, 2x - 5x' <= 3, -2x + 5x' <= 1
        let t1 = ConstraintPoly::from_i64(
            &[&[-4, 0], &[2, -5], &[-2, 5]],
            &[-1, 3, 1],
            2,
        );
        let hull = harvey_2d_hull(&t1);
        // expected: adds -x + x' <= -1 and (1/3)x - x' <= 1/3
        let mut expected = t1.clone();
        expected.push_row(RatVector::from_i64(&[-1, 1]), int(-1));
        expected.push_row(RatVector::new(vec![rat(1, 3), int(-1)]), rat(1, 3));
        // also x >= 1 is implied on the integer side
        assert!(set_equal(&hull, &remove_redundant_rows(&expected)));
    }

    #[test]
    fn harvey_guard_example() {
        // {-x1 + x2 <= 0, -2x1 - x2 <= -1} gains x1 >= 1
        let p = ConstraintPoly::from_i64(&[&[-1, 1], &[-2, -1]], &[0, -1], 2);
        let hull = harvey_2d_hull(&p);
        assert!(polyhedra::implies_row(
            &hull,
            &RatVector::from_i64(&[-1, 0]),
            &int(-1)
        ));
        let mut expected = p.clone();
        expected.push_row(RatVector::from_i64(&[-1, 0]), int(-1));
        assert!(set_equal(&hull, &expected));
    }

    #[test]
    fn harvey_integral_square_unchanged() {
        let sq = ConstraintPoly::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 0, 1, 0], 2);
        let hull = harvey_2d_hull(&sq);
        assert!(set_equal(&hull, &sq));
    }

    #[test]
    fn octagon_closure_examples() {
        // {-x1+x2<=0, -x1-x2<=-1, x2-x3<=0, -x2-x3<=-1} adds -x1 <= -1, -x3 <= 0
        let p = ConstraintPoly::from_i64(
            &[&[-1, 1, 0], &[-1, -1, 0], &[0, 1, -1], &[0, -1, -1]],
            &[0, -1, 0, -1],
            3,
        );
        let c = octagon_tight_closure(&p);
        assert!(polyhedra::implies_row(&c, &RatVector::from_i64(&[-1, 0, 0]), &int(-1)));
        assert!(polyhedra::implies_row(&c, &RatVector::from_i64(&[0, 0, -1]), &int(0)));
        assert!(is_integral(&c));

        // the inverting loop's condition polyhedron is already tightly closed
        let q = ConstraintPoly::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[2, 3, 4], 3);
        let c = octagon_tight_closure(&q);
        assert!(set_equal(&c, &q));

        // single constraint: unchanged
        let s = ConstraintPoly::from_i64(&[&[1, -1, 0]], &[5], 3);
        let c = octagon_tight_closure(&s);
        assert!(set_equal(&c, &s));
    }

    #[test]
    fn general_hull_inverting_loop_condition() {
        // integer hull of the 3-variable octagon gains x1 + x2 + x3 <= 4
        let q = ConstraintPoly::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[2, 3, 4], 3);
        let (hull, exact) = general_integer_hull(&q, 25);
        assert!(exact);
        assert!(polyhedra::implies_row(
            &hull,
            &RatVector::from_i64(&[1, 1, 1]),
            &int(4)
        ));
        // soundness: integer points of q survive
        for x in [[0, 0, 0], [2, 0, 1], [-1, 3, 1]] {
            let v = RatVector::from_i64(&[x[0], x[1], x[2]]);
            if q.contains(&v) {
                assert!(hull.contains(&v));
            }
        }
    }

    #[test]
    fn integer_hull_pipeline_decomposes() {
        // division-loop transition polyhedron: component {x1, x1'} is 2-dim,
        // component {x2, x2'} is integral
        let q = ConstraintPoly::from_i64(
            &[
                &[-4, 0, 0, 0],
                &[2, 0, -5, 0],
                &[-2, 0, 5, 0],
                &[0, -1, 0, 0],
                &[0, 1, 0, -1],
                &[0, -1, 0, 1],
            ],
            &[-1, 3, 1, -1, -1, 1],
            4,
        );
        let (hull, report) = integer_hull(&q);
        assert!(report.exact);
        assert_eq!(report.components.len(), 2);
        assert!(polyhedra::implies_row(
            &hull,
            &RatVector::from_i64(&[-1, 0, 1, 0]),
            &int(-1)
        ));
        // idempotence
        let (hull2, report2) = integer_hull(&hull);
        assert!(report2.exact);
        assert!(set_equal(&hull, &hull2));
    }

    #[test]
    fn cone_untouched() {
        let cone = ConstraintPoly::from_i64(&[&[2, -3], &[-1, -1]], &[0, 0], 2);
        let (hull, report) = integer_hull(&cone);
        assert!(report.exact);
        assert_eq!(report.components[0].class, HullClass::Cone);
        assert!(set_equal(&hull, &cone));
    }

    #[test]
    fn decompose_example() {
        let q = ConstraintPoly::from_i64(
            &[&[-4, 0, 0], &[2, -5, 0], &[0, 0, -1]],
            &[-1, 3, -1],
            3,
        );
        let comps = decompose_components(&q);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vars, vec![0, 1]);
        assert_eq!(comps[1].vars, vec![2]);
    }

    #[test]
    fn general_hull_unbounded_with_lineality() {
        // x' = x + y (equality pair) with x >= 0, fractional-ish variant:
        // 2x' = 2x + 2y + 1 has no integer solutions -> empty hull
        let mut p = ConstraintPoly::new(3);
        p.push_equality(RatVector::from_i64(&[2, 2, -2]), int(-1));
        let (hull, exact) = general_integer_hull(&p, 25);
        assert!(exact);
        assert!(hull.is_empty());

        // and with an achievable equality the hull keeps the constraint
        let mut p = ConstraintPoly::new(3);
        p.push_equality(RatVector::from_i64(&[1, 1, -1]), int(0));
        p.push_row(RatVector::from_i64(&[-1, 0, 0]), int(0));
        let (hull, exact) = general_integer_hull(&p, 25);
        assert!(exact);
        assert!(set_equal(&hull, &p));
    }
}
