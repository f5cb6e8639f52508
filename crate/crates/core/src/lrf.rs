//! Linear ranking functions.
//!
//! Synthesis over the rationals via the multiplier encoding (one
//! Podelski-Rybalchenko block per path, shared function coefficients), and
//! over the integers by first replacing every transition polyhedron with its
//! integer hull. A generator-based route builds the witness-set system over
//! the hull generators instead. Nonexistence over the integers is certified
//! by finite integer point/ray sets whose induced system is rationally
//! infeasible; both directions come with exact checkers.

use crate::inthull::{self, HullConfig, HullReport};
use crate::linalg::{AffineFunc, RatMatrix, RatVector, Rational};
use crate::loopmodel::{quick_checks, TransitionSystem};
use crate::lp::{self, GeneralSystem, LpOutcome, RowKind, Sense};

use crate::polyhedra::{self, pick_inside, ConstraintPoly, GeneratorRep};
use num::{One, Zero};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    Rational,
    Integer,
}

/// Which synthesis route to run for the existence test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Engine {
    /// multiplier encoding on the constraint representation (default)
    Eq29,
    /// witness-set system over the generator representation
    Generators,
}

#[derive(Clone, Debug)]
pub struct LrfQuery {
    pub ts: TransitionSystem,
    pub domain: Domain,
    pub witness_wanted: bool,
    pub engine: Engine,
    pub hull_config: HullConfig,
}

impl LrfQuery {
    pub fn new(ts: TransitionSystem, domain: Domain) -> Self {
        LrfQuery {
            ts,
            domain,
            witness_wanted: false,
            engine: Engine::Eq29,
            hull_config: HullConfig::default(),
        }
    }
}

/// Nonexistence witness: per path, integer transition points X_i and integer
/// recession rays Y_i whose induced inequality system is infeasible.
#[derive(Clone, Debug, Default)]
pub struct Witness {
    pub xs: Vec<Vec<RatVector>>,
    pub ys: Vec<Vec<RatVector>>,
}

impl Witness {
    pub fn size(&self) -> usize {
        self.xs.iter().map(|v| v.len()).sum::<usize>()
            + self.ys.iter().map(|v| v.len()).sum::<usize>()
    }
}

#[derive(Clone, Debug)]
pub enum LrfVerdict {
    Found { rho: AffineFunc },
    None { witness: Option<Witness> },
    NonTerminating,
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct LrfAnalysis {
    pub verdict: LrfVerdict,
    /// per-path hull provenance (integer domain only)
    pub hull_reports: Option<Vec<HullReport>>,
    /// false when some hull hit the round cap: a None verdict is then only
    /// "none modulo hull" and carries no completeness claim
    pub hulls_exact: bool,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("point {index} of path {path} is not integral")]
    NonIntegralPoint { path: usize, index: usize },
    #[error("point {index} of path {path} is not a transition of that path")]
    PointOutsidePath { path: usize, index: usize },
    #[error("ray {index} of path {path} is not integral")]
    NonIntegralRay { path: usize, index: usize },
    #[error("ray {index} of path {path} is not a recession direction of that path")]
    RayOutsideRecession { path: usize, index: usize },
    #[error("path {path} has rays but no points")]
    RaysWithoutPoint { path: usize },
    #[error("the induced system is satisfiable; the sets do not witness nonexistence")]
    SystemSatisfiable,
    #[error("witness has {got} per-path sets, the loop has {want} paths")]
    PathCountMismatch { got: usize, want: usize },
}

// ---------------------------------------------------------------------------
// The multiplier encoding
// ---------------------------------------------------------------------------

/// The Podelski-Rybalchenko system for one path, over the nonnegative
/// multiplier vectors (mu, eta), one entry per constraint row:
/// mu A' = 0, (mu - eta) A = 0, eta (A + A') = 0, eta c'' <= -1,
/// with A and A' the unprimed/primed column blocks.
pub struct PrSystem {
    sys: GeneralSystem,
    /// rows of the transition polyhedron (the multiplier count)
    pub m: usize,
}

impl PrSystem {
    pub fn is_feasible(&self) -> bool {
        self.sys.solve(None).is_feasible()
    }
}

pub fn pr_system(q: &ConstraintPoly, n: usize) -> PrSystem {
    assert_eq!(q.ambient(), 2 * n, "pr_system: polyhedron is not over 2n");
    let m = q.nrows();
    let mut sys = GeneralSystem::new(2 * m);
    for flag in sys.nonneg.iter_mut() {
        *flag = true;
    }
    push_gamma_rows(&mut sys, q, n, 0, m, None, false);
    PrSystem { sys, m }
}

/// Emit the Gamma block of one path into `sys`. Multipliers mu live at
/// columns mu0..mu0+m, eta at mu0+m..mu0+2m. When `lambda_link` is given,
/// the shared function block (lambda0 at that column, lambda after it) is
/// linked by lambda = eta A' and lambda0 >= mu c''. `relax` turns the
/// decrease row eta c'' <= -1 into eta c'' <= 0 (the quasi form).
fn push_gamma_rows(
    sys: &mut GeneralSystem,
    q: &ConstraintPoly,
    n: usize,
    mu0: usize,
    m: usize,
    lambda_link: Option<usize>,
    relax: bool,
) {
    let eta0 = mu0 + m;
    let width = sys.ncols;
    let col_a = |r: usize, j: usize| q.a.row(r)[j].clone(); // A block
    let col_ap = |r: usize, j: usize| q.a.row(r)[n + j].clone(); // A' block

    // mu A' = 0
    for j in 0..n {
        let mut row = RatVector::zeros(width);
        for r in 0..m {
            row[mu0 + r] = col_ap(r, j);
        }
        sys.push(row, RowKind::Eq, Rational::zero());
    }
    // (mu - eta) A = 0
    for j in 0..n {
        let mut row = RatVector::zeros(width);
        for r in 0..m {
            row[mu0 + r] = col_a(r, j);
            row[eta0 + r] = -col_a(r, j);
        }
        sys.push(row, RowKind::Eq, Rational::zero());
    }
    // eta (A + A') = 0
    for j in 0..n {
        let mut row = RatVector::zeros(width);
        for r in 0..m {
            row[eta0 + r] = col_a(r, j) + col_ap(r, j);
        }
        sys.push(row, RowKind::Eq, Rational::zero());
    }
    // eta c'' <= -1 (or <= 0 relaxed)
    let mut row = RatVector::zeros(width);
    for r in 0..m {
        row[eta0 + r] = q.b[r].clone();
    }
    let rhs = if relax { Rational::zero() } else { -Rational::one() };
    sys.push(row, RowKind::Le, rhs);

    if let Some(l0) = lambda_link {
        // lambda_j - eta A'_j = 0
        for j in 0..n {
            let mut row = RatVector::zeros(width);
            row[l0 + 1 + j] = Rational::one();
            for r in 0..m {
                row[eta0 + r] = -col_ap(r, j);
            }
            sys.push(row, RowKind::Eq, Rational::zero());
        }
        // -lambda0 + mu c'' <= 0
        let mut row = RatVector::zeros(width);
        row[l0] = -Rational::one();
        for r in 0..m {
            row[mu0 + r] = q.b[r].clone();
        }
        sys.push(row, RowKind::Le, Rational::zero());
    }
}

/// Layout of the combined system: the shared (lambda0, lambda) block comes
/// first (free variables), then one (mu_i, eta_i) block per path
/// (nonnegative).
pub(crate) struct Eq29System {
    pub sys: GeneralSystem,
    pub n: usize,
}

pub(crate) fn eq29_system(polys: &[&ConstraintPoly], n: usize, relax: bool) -> Eq29System {
    let total = n + 1 + polys.iter().map(|q| 2 * q.nrows()).sum::<usize>();
    let mut sys = GeneralSystem::new(total);
    for c in (n + 1)..total {
        sys.nonneg[c] = true;
    }
    let mut mu0 = n + 1;
    for q in polys {
        let m = q.nrows();
        push_gamma_rows(&mut sys, q, n, mu0, m, Some(0), relax);
        mu0 += 2 * m;
    }
    Eq29System { sys, n }
}

/// Pick the reported function from a feasible system whose first n+1
/// columns are (lambda0, lambda): sweep lambda_1..lambda_n picking a value
/// in the relative interior of each projection interval (0 and small
/// integers preferred), then minimize lambda0.
pub(crate) fn pick_lambda_solution(base: &Eq29System) -> Option<AffineFunc> {
    if !base.sys.solve(None).is_feasible() {
        return None;
    }
    let n = base.n;
    let width = base.sys.ncols;
    let mut sys = base.sys.clone();
    let mut lambda = RatVector::zeros(n);
    for j in 1..=n {
        let mut obj = RatVector::zeros(width);
        obj[j] = Rational::one();
        let lo = match sys.solve(Some(&(obj.clone(), Sense::Min))) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded { .. } => None,
            _ => unreachable!("system is feasible"),
        };
        let hi = match sys.solve(Some(&(obj.clone(), Sense::Max))) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded { .. } => None,
            _ => unreachable!("system is feasible"),
        };
        let c = pick_inside(lo.as_ref(), hi.as_ref());
        sys.push(obj, RowKind::Eq, c.clone());
        lambda[j - 1] = c;
    }
    let mut obj = RatVector::zeros(width);
    obj[0] = Rational::one();
    let lambda0 = match sys.solve(Some(&(obj.clone(), Sense::Min))) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded { .. } => {
            let hi = match sys.solve(Some(&(obj, Sense::Max))) {
                LpOutcome::Optimal { value, .. } => Some(value),
                _ => None,
            };
            pick_inside(None, hi.as_ref())
        }
        _ => unreachable!("system is feasible"),
    };
    Some(AffineFunc::new(lambda0, lambda))
}

// ---------------------------------------------------------------------------
// The witness-set system over generators
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum GenKind {
    Vertex,
    Ray,
}

/// One inequality of the witness-set system, tagged with the generator that
/// produced it. Rows are over (lambda0, lambda_1..lambda_n), as `row . v <= rhs`.
pub(crate) struct PsiRow {
    pub row: RatVector,
    pub rhs: Rational,
    pub path: usize,
    pub kind: GenKind,
    pub index: usize,
}

/// Rows of Psi_WS(X, Y): per point, nonnegativity at the point and unit
/// decrease along it; per ray, nonnegativity and non-increase in the limit.
pub(crate) fn psi_ws_rows(gens: &[(usize, &GeneratorRep)], n: usize) -> Vec<PsiRow> {
    let mut rows = Vec::new();
    for &(path, g) in gens {
        for (index, v) in g.vertices.iter().enumerate() {
            let (x, xp) = v.split_half();
            // lambda . x + lambda0 >= 0
            let mut r = RatVector::zeros(n + 1);
            r[0] = -Rational::one();
            for j in 0..n {
                r[1 + j] = -x[j].clone();
            }
            rows.push(PsiRow {
                row: r,
                rhs: Rational::zero(),
                path,
                kind: GenKind::Vertex,
                index,
            });
            // lambda . (x - x') >= 1
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = &xp[j] - &x[j];
            }
            rows.push(PsiRow {
                row: r,
                rhs: -Rational::one(),
                path,
                kind: GenKind::Vertex,
                index,
            });
        }
        for (index, y) in g.rays.iter().enumerate() {
            let (yy, yp) = y.split_half();
            // lambda . y >= 0
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = -yy[j].clone();
            }
            rows.push(PsiRow {
                row: r,
                rhs: Rational::zero(),
                path,
                kind: GenKind::Ray,
                index,
            });
            // lambda . (y - y') >= 0
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = &yp[j] - &yy[j];
            }
            rows.push(PsiRow {
                row: r,
                rhs: Rational::zero(),
                path,
                kind: GenKind::Ray,
                index,
            });
        }
    }
    rows
}

fn rows_to_system(rows: &[PsiRow], n: usize) -> Eq29System {
    let mut sys = GeneralSystem::new(n + 1);
    for r in rows {
        sys.push(r.row.clone(), RowKind::Le, r.rhs.clone());
    }
    Eq29System { sys, n }
}

/// Synthesis from generator representations (of the integer hulls for the
/// integer domain, of the transition polyhedra themselves for the rational
/// domain): feasible witness-set system yields the function, infeasibility
/// proves nonexistence.
pub fn synth_lrf_generators(gens: &[GeneratorRep], n: usize) -> Option<AffineFunc> {
    assert!(!gens.is_empty(), "synth_lrf_generators: empty generator list");
    let tagged: Vec<(usize, &GeneratorRep)> = gens.iter().enumerate().collect();
    let rows = psi_ws_rows(&tagged, n);
    pick_lambda_solution(&rows_to_system(&rows, n))
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

pub fn synth_lrf(query: &LrfQuery) -> LrfAnalysis {
    let ts = &query.ts;
    let qc = quick_checks(ts);
    let active: Vec<usize> = (0..ts.k()).filter(|&i| !qc.empty[i]).collect();
    if active.is_empty() {
        return LrfAnalysis {
            verdict: LrfVerdict::Vacuous,
            hull_reports: None,
            hulls_exact: true,
        };
    }
    if active.iter().any(|&i| qc.origin_fixpoint[i]) {
        return LrfAnalysis {
            verdict: LrfVerdict::NonTerminating,
            hull_reports: None,
            hulls_exact: true,
        };
    }

    let mut hull_reports = None;
    let mut hulls_exact = true;
    // per remaining path: (original index, polyhedron to synthesize over)
    let mut polys: Vec<(usize, ConstraintPoly)> = Vec::new();
    match query.domain {
        Domain::Rational => {
            for &i in &active {
                polys.push((i, ts.polys[i].clone()));
            }
        }
        Domain::Integer => {
            let mut reports = Vec::new();
            for &i in &active {
                let (hull, report) = inthull::integer_hull_with(&ts.polys[i], &query.hull_config);
                hulls_exact &= report.exact;
                reports.push(report);
                if !hull.is_empty() {
                    polys.push((i, hull));
                }
            }
            hull_reports = Some(reports);
            if polys.is_empty() {
                return LrfAnalysis {
                    verdict: LrfVerdict::Vacuous,
                    hull_reports,
                    hulls_exact,
                };
            }
        }
    }

    let found = match query.engine {
        Engine::Eq29 => {
            let refs: Vec<&ConstraintPoly> = polys.iter().map(|(_, p)| p).collect();
            pick_lambda_solution(&eq29_system(&refs, ts.n, false))
        }
        Engine::Generators => {
            let gens: Vec<GeneratorRep> = polys
                .iter()
                .map(|(_, p)| match query.domain {
                    Domain::Integer => inthull::integral_generators(p)
                        .unwrap_or_else(|| polyhedra::to_generators(p)),
                    Domain::Rational => polyhedra::to_generators(p),
                })
                .collect();
            synth_lrf_generators(&gens, ts.n)
        }
    };

    match found {
        Some(rho) => {
            debug_assert!(verify_lrf_on_polys(
                &rho,
                &polys.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>()
            ));
            LrfAnalysis {
                verdict: LrfVerdict::Found { rho },
                hull_reports,
                hulls_exact,
            }
        }
        None => {
            let witness = if query.witness_wanted
                && query.domain == Domain::Integer
                && hulls_exact
            {
                extract_lrf_witness_from_hulls(ts, &polys)
            } else {
                None
            };
            LrfAnalysis {
                verdict: LrfVerdict::None { witness },
                hull_reports,
                hulls_exact,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// rho(x) >= 0 and delta rho(x'') >= 1 over every path, by LP. Over the
/// integer domain the checks run on the integer hulls (sound even when a
/// hull is an outer approximation).
pub fn verify_lrf(rho: &AffineFunc, ts: &TransitionSystem, domain: Domain) -> bool {
    if rho.arity() != ts.n {
        return false;
    }
    let polys: Vec<ConstraintPoly> = match domain {
        Domain::Rational => ts.polys.clone(),
        Domain::Integer => ts
            .polys
            .iter()
            .map(|p| inthull::integer_hull(p).0)
            .collect(),
    };
    verify_lrf_on_polys(rho, &polys)
}

pub(crate) fn verify_lrf_on_polys(rho: &AffineFunc, polys: &[ConstraintPoly]) -> bool {
    let n = rho.arity();
    for q in polys {
        if q.is_empty() {
            continue;
        }
        // min rho(x) over the path
        let mut obj = RatVector::zeros(2 * n);
        for j in 0..n {
            obj[j] = rho.lambda[j].clone();
        }
        match q.minimize(&obj) {
            LpOutcome::Optimal { value, .. } => {
                if value + &rho.lambda0 < Rational::zero() {
                    return false;
                }
            }
            LpOutcome::Unbounded { .. } => return false,
            _ => unreachable!("path is nonempty"),
        }
        // min delta rho over the path
        match q.minimize(&rho.delta_row()) {
            LpOutcome::Optimal { value, .. } => {
                if value < Rational::one() {
                    return false;
                }
            }
            LpOutcome::Unbounded { .. } => return false,
            _ => unreachable!("path is nonempty"),
        }
    }
    true
}

/// Witness checking: membership of every point in I(Q_i) and every ray in
/// I(R_{Q_i}), the rays-imply-points condition, and rational infeasibility
/// of the induced witness-set system.
pub fn verify_lrf_witness(w: &Witness, ts: &TransitionSystem) -> Result<(), WitnessError> {
    check_membership(w, ts)?;
    let reps: Vec<GeneratorRep> = (0..ts.k())
        .map(|i| GeneratorRep {
            vertices: w.xs.get(i).cloned().unwrap_or_default(),
            rays: w.ys.get(i).cloned().unwrap_or_default(),
        })
        .collect();
    let tagged: Vec<(usize, &GeneratorRep)> = reps.iter().enumerate().collect();
    let rows = psi_ws_rows(&tagged, ts.n);
    if rows_to_system(&rows, ts.n).sys.solve(None).is_feasible() {
        return Err(WitnessError::SystemSatisfiable);
    }
    Ok(())
}

pub(crate) fn check_membership(w: &Witness, ts: &TransitionSystem) -> Result<(), WitnessError> {
    if w.xs.len() != ts.k() || w.ys.len() != ts.k() {
        return Err(WitnessError::PathCountMismatch {
            got: w.xs.len().max(w.ys.len()),
            want: ts.k(),
        });
    }
    for (path, q) in ts.polys.iter().enumerate() {
        for (index, x) in w.xs[path].iter().enumerate() {
            if !x.is_integral() {
                return Err(WitnessError::NonIntegralPoint { path, index });
            }
            if !q.contains(x) {
                return Err(WitnessError::PointOutsidePath { path, index });
            }
        }
        let rec = polyhedra::recession_cone(q);
        for (index, y) in w.ys[path].iter().enumerate() {
            if !y.is_integral() {
                return Err(WitnessError::NonIntegralRay { path, index });
            }
            if !rec.contains(y) {
                return Err(WitnessError::RayOutsideRecession { path, index });
            }
        }
        if !w.ys[path].is_empty() && w.xs[path].is_empty() {
            return Err(WitnessError::RaysWithoutPoint { path });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Witness extraction
// ---------------------------------------------------------------------------

/// Build the full witness-set system over all hull generators, shrink it to
/// an irredundant infeasible core, map surviving rows back to their
/// generating points, and repair paths that keep rays but lost all points.
/// Requires exact hulls; the result passes the checker and respects the
/// 2n + 3 size bound.
pub fn extract_lrf_witness(ts: &TransitionSystem, hull_config: &HullConfig) -> Option<Witness> {
    let mut polys = Vec::new();
    for (i, q) in ts.polys.iter().enumerate() {
        if q.is_empty() {
            continue;
        }
        let (hull, report) = inthull::integer_hull_with(q, hull_config);
        if !report.exact {
            return None;
        }
        if !hull.is_empty() {
            polys.push((i, hull));
        }
    }
    extract_lrf_witness_from_hulls(ts, &polys)
}

fn extract_lrf_witness_from_hulls(
    ts: &TransitionSystem,
    polys: &[(usize, ConstraintPoly)],
) -> Option<Witness> {
    let n = ts.n;
    let mut gens: Vec<(usize, GeneratorRep)> = Vec::new();
    for (orig, hull) in polys {
        let g = inthull::integral_generators(hull)?;
        gens.push((*orig, g));
    }
    let tagged: Vec<(usize, &GeneratorRep)> = gens.iter().map(|(i, g)| (*i, g)).collect();
    let rows = psi_ws_rows(&tagged, n);
    let a = RatMatrix::from_rows(rows.iter().map(|r| r.row.clone()).collect(), n + 1);
    let b = RatVector::new(rows.iter().map(|r| r.rhs.clone()).collect());
    let core = lp::iis(&a, &b).ok()?;

    let mut w = Witness {
        xs: vec![Vec::new(); ts.k()],
        ys: vec![Vec::new(); ts.k()],
    };
    for &ri in &core {
        let tag = &rows[ri];
        let (path, g) = gens.iter().find(|(i, _)| *i == tag.path).unwrap();
        match tag.kind {
            GenKind::Vertex => {
                let v = g.vertices[tag.index].clone();
                if !w.xs[*path].contains(&v) {
                    w.xs[*path].push(v);
                }
            }
            GenKind::Ray => {
                let y = g.rays[tag.index].clone();
                if !w.ys[*path].contains(&y) {
                    w.ys[*path].push(y);
                }
            }
        }
    }
    // a path contributing only rays needs one anchor point
    for (orig, g) in &gens {
        if !w.ys[*orig].is_empty() && w.xs[*orig].is_empty() {
            w.xs[*orig].push(g.vertices.first()?.clone());
        }
    }
    debug_assert!(w.size() <= 2 * n + 3, "witness exceeds the 2n+3 bound");
    debug_assert!(verify_lrf_witness(&w, ts).is_ok());
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::loopmodel::{build_transition_system, parse_loop};

    fn ts(text: &str) -> TransitionSystem {
        build_transition_system(&parse_loop(text).unwrap())
    }

    const LOOP1: &str = "\
vars: x1 x2
path:
  guard: x2 - x1 <= 0; x1 + x2 >= 1
  update: x2' = x2 - 2*x1 + 1; x1' = x1
";

    const EX36: &str = "\
vars: x1 x2
path:
  guard: x1 >= 0
  update: x1' = x1 + x2; x2' = x2 - 1
";

    const LOOP3: &str = "\
vars: x1 x2
path:
  guard: x1 >= 0; x2 >= 0
  update: x1' = x1 - 1
path:
  guard: x1 >= 0; x2 >= 0
  update: x2' = x2 - 1; x1' = x1
";

    #[test]
    fn pr_system_loop1() {
        let t = ts(LOOP1);
        // no rational LRF: the loop does not terminate over the rationals
        assert!(!pr_system(&t.polys[0], t.n).is_feasible());
        // over the integer hull the system becomes feasible
        let (hull, report) = inthull::integer_hull(&t.polys[0]);
        assert!(report.exact);
        assert!(pr_system(&hull, t.n).is_feasible());
    }

    #[test]
    fn loop1_integer_found_rational_none() {
        let t = ts(LOOP1);
        let res = synth_lrf(&LrfQuery::new(t.clone(), Domain::Integer));
        let LrfVerdict::Found { rho } = &res.verdict else {
            panic!("expected Found over Z");
        };
        assert!(verify_lrf(rho, &t, Domain::Integer));
        // the paper's x1 + x2 - 1 also passes
        let paper = AffineFunc::new(int(-1), RatVector::from_i64(&[1, 1]));
        assert!(verify_lrf(&paper, &t, Domain::Integer));
        assert!(!verify_lrf(&paper, &t, Domain::Rational));

        let res = synth_lrf(&LrfQuery::new(t, Domain::Rational));
        assert!(matches!(res.verdict, LrfVerdict::None { .. }));
    }

    #[test]
    fn ex36_none_with_witness() {
        let t = ts(EX36);
        let mut q = LrfQuery::new(t.clone(), Domain::Integer);
        q.witness_wanted = true;
        let res = synth_lrf(&q);
        let LrfVerdict::None { witness: Some(w) } = &res.verdict else {
            panic!("expected None with witness");
        };
        assert!(verify_lrf_witness(w, &t).is_ok());
        assert!(w.size() <= 2 * t.n + 3);
        // the paper's witness: X = {(0,2,2,1)}, Y = {(1,-2,-1,-2)}
        let paper = Witness {
            xs: vec![vec![RatVector::from_i64(&[0, 2, 2, 1])]],
            ys: vec![vec![RatVector::from_i64(&[1, -2, -1, -2])]],
        };
        assert!(verify_lrf_witness(&paper, &t).is_ok());
        // and the smaller one from the generator representation
        let small = Witness {
            xs: vec![vec![RatVector::from_i64(&[0, 1, 1, 0])]],
            ys: vec![vec![RatVector::from_i64(&[0, -1, -1, -1])]],
        };
        assert!(verify_lrf_witness(&small, &t).is_ok());
    }

    #[test]
    fn loop3_multipath_none_each_path_found() {
        let t = ts(LOOP3);
        let res = synth_lrf(&LrfQuery::new(t.clone(), Domain::Integer));
        assert!(matches!(res.verdict, LrfVerdict::None { .. }));
        // each path alone has an LRF
        for i in 0..2 {
            let single = TransitionSystem {
                n: t.n,
                var_names: t.var_names.clone(),
                polys: vec![t.polys[i].clone()],
            };
            let res = synth_lrf(&LrfQuery::new(single, Domain::Integer));
            assert!(matches!(res.verdict, LrfVerdict::Found { .. }), "path {}", i);
        }
        // the paper's multipath witness
        let w = Witness {
            xs: vec![
                vec![RatVector::from_i64(&[0, 0, -1, 0])],
                vec![RatVector::from_i64(&[0, 0, 0, -1])],
            ],
            ys: vec![vec![RatVector::from_i64(&[0, 0, 0, 1])], vec![]],
        };
        assert!(verify_lrf_witness(&w, &t).is_ok());
        // a perturbed point must fail membership
        let bad = Witness {
            xs: vec![
                vec![RatVector::from_i64(&[0, 2, 2, 2])],
                vec![RatVector::from_i64(&[0, 0, 0, -1])],
            ],
            ys: vec![vec![RatVector::from_i64(&[0, 0, 0, 1])], vec![]],
        };
        assert!(matches!(
            verify_lrf_witness(&bad, &t),
            Err(WitnessError::PointOutsidePath { path: 0, .. })
        ));
    }

    #[test]
    fn generator_engine_agrees_on_paper_loops() {
        for (text, expect_int) in [(LOOP1, true), (EX36, false), (LOOP3, false)] {
            let t = ts(text);
            let mut q = LrfQuery::new(t.clone(), Domain::Integer);
            q.engine = Engine::Generators;
            let by_gens = matches!(synth_lrf(&q).verdict, LrfVerdict::Found { .. });
            assert_eq!(by_gens, expect_int, "loop:\n{}", text);
            let by_eq29 = matches!(
                synth_lrf(&LrfQuery::new(t, Domain::Integer)).verdict,
                LrfVerdict::Found { .. }
            );
            assert_eq!(by_eq29, expect_int);
        }
    }

    #[test]
    fn psi_ws_on_paper_generators() {
        // the generators of the no-LRF loop's integral transition polyhedron
        let g = GeneratorRep {
            vertices: vec![RatVector::from_i64(&[0, 1, 1, 0])],
            rays: vec![
                RatVector::from_i64(&[0, -1, -1, -1]),
                RatVector::from_i64(&[0, 1, 1, 1]),
                RatVector::from_i64(&[1, -1, 0, -1]),
            ],
        };
        assert!(synth_lrf_generators(&[g], 2).is_none());
        // Loop (1)'s integer-hull generators admit lambda1 = lambda2 = 1
        let g = GeneratorRep {
            vertices: vec![
                RatVector::from_i64(&[1, 1, 1, 0]),
                RatVector::from_i64(&[1, 0, 1, -1]),
            ],
            rays: vec![
                RatVector::from_i64(&[1, 1, 1, -1]),
                RatVector::from_i64(&[1, -1, 1, -3]),
            ],
        };
        let rho = synth_lrf_generators(&[g], 2).expect("feasible");
        // whatever the interior pick, the paper's function satisfies the system
        let paper = AffineFunc::new(int(-1), RatVector::from_i64(&[1, 1]));
        for v in [
            RatVector::from_i64(&[1, 1, 1, 0]),
            RatVector::from_i64(&[1, 0, 1, -1]),
        ] {
            let (x, _) = v.split_half();
            assert!(paper.eval(&x) >= int(0));
            assert!(paper.delta(&v) >= int(1));
            assert!(rho.eval(&x) >= int(0));
            assert!(rho.delta(&v) >= int(1));
        }
    }

    #[test]
    fn vacuous_and_nonterminating() {
        let t = ts("vars: x\npath:\n  guard: x <= 0; x >= 1\n  update: x' = x\n");
        let res = synth_lrf(&LrfQuery::new(t, Domain::Rational));
        assert!(matches!(res.verdict, LrfVerdict::Vacuous));

        let t = ts("vars: x\npath:\n  guard: x >= 0\n  update: x' = x\n");
        let res = synth_lrf(&LrfQuery::new(t, Domain::Integer));
        assert!(matches!(res.verdict, LrfVerdict::NonTerminating));
    }

    #[test]
    fn zero_function_never_verifies() {
        let t = ts(LOOP1);
        assert!(!verify_lrf(&AffineFunc::zero(2), &t, Domain::Integer));
    }
}
