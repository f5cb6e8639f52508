//! Lexicographic-linear ranking.
//!
//! The synthesis loop repeatedly picks an optimal non-trivial quasi ranking
//! function from the relative interior of the quasi space (the multiplier
//! encoding with the decrease row relaxed to non-strict), restricts every
//! path to its delta-zero face by tight-row conversion, and recurses. Over
//! the integers the paths are replaced by their integer hulls first and each
//! component is integer-scaled, giving unit decrease. Over the rationals the
//! result is a weak lexicographic function; a Farkas-based conversion
//! produces a strong one with explicit per-component decreases, which also
//! yields iteration bounds.

use crate::inthull::{self, HullConfig, HullReport};
use crate::linalg::{floor_int, AffineFunc, RatMatrix, RatVector, Rational};
use crate::loopmodel::{quick_checks, TransitionSystem};
use crate::lp::{self, GeneralSystem, LpOutcome, RowKind, Sense};
use crate::lrf::{self, Domain, Witness, WitnessError};
use crate::polyhedra::{self, delta_zero_hyperplane, ConstraintPoly, FaceSpec, GeneratorRep};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LlrfKind {
    Weak,
    Strong,
}

/// A lexicographic-linear ranking function: components with per-component
/// decreases (empty for weak functions).
#[derive(Clone, Debug)]
pub struct Llrf {
    pub components: Vec<AffineFunc>,
    pub deltas: Vec<Rational>,
    pub kind: LlrfKind,
    pub domain: Domain,
}

impl Llrf {
    pub fn dimension(&self) -> usize {
        self.components.len()
    }
}

/// The nested transition sets left unranked by successive components:
/// `levels[0]` is the whole system, `levels[i]` restricts `levels[i-1]` to
/// the delta-zero face of component i, one face per path.
#[derive(Clone, Debug)]
pub struct RankingChain {
    pub levels: Vec<Vec<FaceSpec>>,
}

impl RankingChain {
    /// Induced polyhedron of path `j` at level `i` (0-based level = U_{i+1}).
    pub fn piece(&self, level: usize, path: usize) -> ConstraintPoly {
        self.levels[level][path].induced()
    }
}

/// Nonexistence witness for lexicographic functions: same point/ray shape as
/// the linear one, checked against a different induced system.
#[derive(Clone, Debug, Default)]
pub struct LexWitness {
    pub xs: Vec<Vec<RatVector>>,
    pub ys: Vec<Vec<RatVector>>,
}

impl LexWitness {
    pub fn size(&self) -> usize {
        self.xs.iter().map(|v| v.len()).sum::<usize>()
            + self.ys.iter().map(|v| v.len()).sum::<usize>()
    }
}

/// Everything the synthesis produced for a Found verdict; enough to rebuild
/// conversions and bounds without re-running synthesis.
#[derive(Clone, Debug)]
pub struct LlrfSynthesis {
    /// the raw (weak) components, before any integer scaling
    pub weak_components: Vec<AffineFunc>,
    pub chain: RankingChain,
    /// original path index of each chain column
    pub path_indices: Vec<usize>,
    /// the polyhedra synthesized over (integer hulls in the integer domain)
    pub polys: Vec<ConstraintPoly>,
}

#[derive(Clone, Debug)]
pub enum LlrfVerdict {
    Found {
        llrf: Llrf,
        synthesis: LlrfSynthesis,
    },
    None {
        witness: Option<LexWitness>,
    },
    NonTerminating,
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct LlrfAnalysis {
    pub verdict: LlrfVerdict,
    pub hull_reports: Option<Vec<HullReport>>,
    pub hulls_exact: bool,
}

#[derive(Clone, Debug)]
pub struct LlrfQuery {
    pub ts: TransitionSystem,
    pub domain: Domain,
    pub witness_wanted: bool,
    pub hull_config: HullConfig,
}

impl LlrfQuery {
    pub fn new(ts: TransitionSystem, domain: Domain) -> Self {
        LlrfQuery {
            ts,
            domain,
            witness_wanted: false,
            hull_config: HullConfig::default(),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConversionError {
    #[error("chain is not an irredundant weak ranking chain (Farkas step failed at level {level}, path {path})")]
    FarkasFailed { level: usize, path: usize },
    #[error("decrease minimum is not positive at level {level}, path {path}: the chain violates the conversion premise")]
    NonPositiveDecrease { level: usize, path: usize },
}

// ---------------------------------------------------------------------------
// Quasi ranking functions
// ---------------------------------------------------------------------------

/// The space of all quasi ranking functions of the union of the given paths:
/// the multiplier encoding with the decrease row relaxed to `<= 0`. Layout:
/// the first n + 1 coordinates are (lambda0, lambda), then per path the
/// nonnegative multiplier blocks (mu_i, eta_i).
#[derive(Clone, Debug)]
pub struct QuasiSpace {
    pub poly: ConstraintPoly,
    pub n: usize,
}

pub fn quasi_space(polys: &[&ConstraintPoly], n: usize) -> QuasiSpace {
    let sys = lrf::eq29_system(polys, n, true).sys;
    let mut poly = ConstraintPoly::new(sys.ncols);
    for (i, row) in sys.rows.iter().enumerate() {
        match sys.kinds[i] {
            RowKind::Le => poly.push_row(row.clone(), sys.rhs[i].clone()),
            RowKind::Eq => poly.push_equality(row.clone(), sys.rhs[i].clone()),
        }
    }
    for (c, flag) in sys.nonneg.iter().enumerate() {
        if *flag {
            let mut row = RatVector::zeros(sys.ncols);
            row[c] = -Rational::one();
            poly.push_row(row, Rational::zero());
        }
    }
    QuasiSpace { poly, n }
}

/// An optimal non-trivial quasi ranking function for the union of the paths,
/// if one exists: a function from the relative interior of the quasi space
/// whose delta is strictly positive somewhere. Optimality means any
/// transition strictly decreased by some quasi function is strictly
/// decreased by this one.
pub fn find_nontrivial_quasi_lrf(polys: &[&ConstraintPoly], n: usize) -> Option<AffineFunc> {
    if polys.is_empty() {
        return None;
    }
    let sys = lrf::eq29_system(polys, n, true);
    let rho = lrf::pick_lambda_solution(&sys)?;
    let strict_somewhere = polys.iter().any(|q| match q.maximize(&rho.delta_row()) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Unbounded { .. } => true,
        _ => false,
    });
    if strict_somewhere {
        Some(rho)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// The synthesis recursion
// ---------------------------------------------------------------------------

pub(crate) enum SynOutcome {
    Found {
        components: Vec<AffineFunc>,
        chain: RankingChain,
    },
    Failed {
        /// the per-path polyhedra of the node with no non-trivial quasi function
        failing: Vec<ConstraintPoly>,
    },
}

/// One component per level: find an optimal non-trivial quasi function,
/// restrict every path to its delta-zero face (tight-row conversion keeps
/// the representation small), recurse until all paths are empty.
pub fn llrf_syn(polys: &[ConstraintPoly], n: usize) -> Option<(Vec<AffineFunc>, RankingChain)> {
    match llrf_syn_full(polys, n) {
        SynOutcome::Found { components, chain } => Some((components, chain)),
        SynOutcome::Failed { .. } => None,
    }
}

pub(crate) fn llrf_syn_full(polys: &[ConstraintPoly], n: usize) -> SynOutcome {
    let mut components: Vec<AffineFunc> = Vec::new();
    let mut levels: Vec<Vec<FaceSpec>> = Vec::new();
    let mut current: Vec<ConstraintPoly> = polys.to_vec();
    levels.push(current.iter().map(|p| FaceSpec::whole(p.clone())).collect());
    let mut dims: Vec<i64> = current.iter().map(polyhedra::dim).collect();
    loop {
        let active: Vec<&ConstraintPoly> = current
            .iter()
            .zip(dims.iter())
            .filter(|(_, &d)| d >= 0)
            .map(|(p, _)| p)
            .collect();
        if active.is_empty() {
            let chain = RankingChain { levels };
            debug_assert!(components.len() <= n);
            debug_assert!(independent_lambdas(&components));
            return SynOutcome::Found { components, chain };
        }
        let Some(rho) = find_nontrivial_quasi_lrf(&active, n) else {
            return SynOutcome::Failed { failing: current };
        };
        let (h, c) = delta_zero_hyperplane(&rho);
        let mut faces = Vec::with_capacity(current.len());
        for (p, &d) in current.iter().zip(dims.iter()) {
            if d < 0 {
                let mut f = FaceSpec::whole(p.clone());
                f.empty = true;
                faces.push(f);
            } else {
                faces.push(polyhedra::face(p, &h, &c).expect("quasi delta is valid over the path"));
            }
        }
        let next: Vec<ConstraintPoly> = faces.iter().map(|f| f.induced()).collect();
        let next_dims: Vec<i64> = next.iter().map(polyhedra::dim).collect();
        let total: i64 = dims.iter().sum();
        let next_total: i64 = next_dims.iter().sum();
        assert!(
            next_total < total,
            "recursion must strictly shrink total dimension"
        );
        components.push(rho);
        levels.push(faces);
        current = next;
        dims = next_dims;
        assert!(components.len() <= n + 1, "recursion depth exceeded n + 1");
    }
}

fn independent_lambdas(components: &[AffineFunc]) -> bool {
    if components.is_empty() {
        return true;
    }
    let n = components[0].arity();
    let m = RatMatrix::from_rows(components.iter().map(|c| c.lambda.clone()).collect(), n);
    m.rank() == components.len()
}

// ---------------------------------------------------------------------------
// Domain front ends
// ---------------------------------------------------------------------------

pub fn synth_llrf(query: &LlrfQuery) -> LlrfAnalysis {
    let ts = &query.ts;
    let qc = quick_checks(ts);
    let active: Vec<usize> = (0..ts.k()).filter(|&i| !qc.empty[i]).collect();
    if active.is_empty() {
        return LlrfAnalysis {
            verdict: LlrfVerdict::Vacuous,
            hull_reports: None,
            hulls_exact: true,
        };
    }
    if active.iter().any(|&i| qc.origin_fixpoint[i]) {
        return LlrfAnalysis {
            verdict: LlrfVerdict::NonTerminating,
            hull_reports: None,
            hulls_exact: true,
        };
    }

    let mut hull_reports = None;
    let mut hulls_exact = true;
    let mut path_indices: Vec<usize> = Vec::new();
    let mut polys: Vec<ConstraintPoly> = Vec::new();
    match query.domain {
        Domain::Rational => {
            for &i in &active {
                path_indices.push(i);
                polys.push(ts.polys[i].clone());
            }
        }
        Domain::Integer => {
            let mut reports = Vec::new();
            for &i in &active {
                let (hull, report) = inthull::integer_hull_with(&ts.polys[i], &query.hull_config);
                hulls_exact &= report.exact;
                reports.push(report);
                if !hull.is_empty() {
                    path_indices.push(i);
                    polys.push(hull);
                }
            }
            hull_reports = Some(reports);
            if polys.is_empty() {
                return LlrfAnalysis {
                    verdict: LlrfVerdict::Vacuous,
                    hull_reports,
                    hulls_exact,
                };
            }
        }
    }

    match llrf_syn_full(&polys, ts.n) {
        SynOutcome::Found { components, chain } => {
            let llrf = match query.domain {
                Domain::Rational => Llrf {
                    components: components.clone(),
                    deltas: Vec::new(),
                    kind: LlrfKind::Weak,
                    domain: Domain::Rational,
                },
                Domain::Integer => {
                    // integer scaling turns "strictly positive" into ">= 1"
                    // on integer points
                    let scaled: Vec<AffineFunc> = components
                        .iter()
                        .map(|c| c.integer_scale().0)
                        .collect();
                    Llrf {
                        deltas: vec![Rational::one(); scaled.len()],
                        components: scaled,
                        kind: LlrfKind::Strong,
                        domain: Domain::Integer,
                    }
                }
            };
            debug_assert!(verify_weak_llrf_over(&llrf.components, &polys));
            let synthesis = LlrfSynthesis {
                weak_components: components,
                chain,
                path_indices,
                polys,
            };
            LlrfAnalysis {
                verdict: LlrfVerdict::Found { llrf, synthesis },
                hull_reports,
                hulls_exact,
            }
        }
        SynOutcome::Failed { failing } => {
            let witness = if query.witness_wanted
                && query.domain == Domain::Integer
                && hulls_exact
            {
                let mut aligned = vec![ConstraintPoly::empty(2 * ts.n); ts.k()];
                for (slot, &orig) in path_indices.iter().enumerate() {
                    aligned[orig] = failing[slot].clone();
                }
                extract_lex_witness(&aligned, ts.n).filter(|w| verify_lex_witness(w, ts).is_ok())
            } else {
                None
            };
            LlrfAnalysis {
                verdict: LlrfVerdict::None { witness },
                hull_reports,
                hulls_exact,
            }
        }
    }
}

/// `LLRFint`: hull every path, synthesize, integer-scale, unit decreases.
pub fn llrf_int(ts: &TransitionSystem) -> LlrfAnalysis {
    synth_llrf(&LlrfQuery::new(ts.clone(), Domain::Integer))
}

// ---------------------------------------------------------------------------
// Weak to strong conversion
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct StrongConversion {
    /// the strong function tau with per-component decreases delta_i
    pub llrf: Llrf,
    /// the accumulated functions f_i (tau_i = f_i + i - 1)
    pub fs: Vec<AffineFunc>,
    /// normalization c * tau whose decreases are all at least 1
    pub normalized: Llrf,
    pub scale: Rational,
}

/// Convert an irredundant weak lexicographic function (with its chain) into
/// a strong one: accumulate f_{i+1} = rho_{i+1} + (xi + 1) f_i with xi from
/// per-path Farkas systems, then per path derive the decreases delta_i by
/// backwards induction over the case-split pieces, taking minima of delta f_i
/// over each nonempty closed piece.
pub fn weak_to_strong(synthesis: &LlrfSynthesis) -> Result<StrongConversion, ConversionError> {
    let components = &synthesis.weak_components;
    let chain = &synthesis.chain;
    let polys = &synthesis.polys;
    let d = components.len();
    if d == 0 {
        let empty = Llrf {
            components: Vec::new(),
            deltas: Vec::new(),
            kind: LlrfKind::Strong,
            domain: Domain::Rational,
        };
        return Ok(StrongConversion {
            llrf: empty.clone(),
            fs: Vec::new(),
            normalized: empty,
            scale: Rational::one(),
        });
    }
    let n = components[0].arity();

    // Phase 1: the accumulated functions f_i.
    let mut fs: Vec<AffineFunc> = vec![components[0].clone()];
    for i in 0..d - 1 {
        // paths whose piece of U_{i+2} is nonempty need the Farkas bound
        let mut xi = Rational::zero();
        for (path, q) in polys.iter().enumerate() {
            if chain.levels[i + 1][path].empty || chain.piece(i + 1, path).is_empty() {
                continue;
            }
            let xij = solve_xi(q, &components[i + 1], &fs[i], n)
                .ok_or(ConversionError::FarkasFailed { level: i + 1, path })?;
            if xij > xi {
                xi = xij;
            }
        }
        let next = components[i + 1].add(&fs[i].scale(&(&xi + Rational::one())));
        fs.push(next);
    }

    // Phase 2: per-path decreases by backwards induction, then the global
    // minimum per level over the paths that reach it.
    let mut global: Vec<Option<Rational>> = vec![None; d];
    for (path, _) in polys.iter().enumerate() {
        let dprime = (1..=d)
            .rev()
            .find(|&i| !chain.levels[i - 1][path].empty && !chain.piece(i - 1, path).is_empty());
        let Some(dprime) = dprime else { continue };
        let mut deltas: Vec<Rational> = vec![Rational::zero(); dprime];
        for i in (1..=dprime).rev() {
            let xi_piece = chain.piece(i - 1, path);
            let delta_i = if i == dprime {
                let mu = min_over(&xi_piece, &fs[i - 1].delta_row())
                    .ok_or(ConversionError::NonPositiveDecrease { level: i, path })?;
                if !mu.is_positive() {
                    return Err(ConversionError::NonPositiveDecrease { level: i, path });
                }
                mu / Rational::from_integer(i.into())
            } else {
                // pieces of C_i: all later deltas small (58), or some f_l
                // already nonpositive after shifting (59)
                let mut pieces: Vec<ConstraintPoly> = Vec::new();
                let mut base = xi_piece.clone();
                for j in (i + 1)..=dprime {
                    let bound = Rational::from_integer(i.into()) * &deltas[j - 1];
                    base.push_row(fs[j - 1].delta_row(), bound);
                }
                pieces.push(base);
                for l in (i + 1)..=dprime {
                    let mut piece = xi_piece.clone();
                    for j in (i + 1)..l {
                        let bound = Rational::from_integer(i.into()) * &deltas[j - 1];
                        piece.push_row(fs[j - 1].delta_row(), bound);
                    }
                    // f_l(x) + (l - i) <= 0 over the unprimed half
                    let mut row = RatVector::zeros(2 * n);
                    for j in 0..n {
                        row[j] = fs[l - 1].lambda[j].clone();
                    }
                    let rhs = Rational::from_integer((i as i64 - l as i64).into())
                        - &fs[l - 1].lambda0;
                    piece.push_row(row, rhs);
                    pieces.push(piece);
                }
                let mut mu: Option<Rational> = None;
                for piece in &pieces {
                    if piece.is_empty() {
                        continue;
                    }
                    let m = min_over(piece, &fs[i - 1].delta_row())
                        .ok_or(ConversionError::NonPositiveDecrease { level: i, path })?;
                    mu = Some(match mu {
                        Some(cur) if cur <= m => cur,
                        _ => m,
                    });
                }
                match mu {
                    None => deltas[i].clone(), // C_i empty: inherit delta_{i+1}
                    Some(m) => {
                        if !m.is_positive() {
                            return Err(ConversionError::NonPositiveDecrease { level: i, path });
                        }
                        m / Rational::from_integer(i.into())
                    }
                }
            };
            deltas[i - 1] = delta_i;
        }
        for (i, dl) in deltas.iter().enumerate() {
            global[i] = Some(match &global[i] {
                Some(cur) if cur <= dl => cur.clone(),
                _ => dl.clone(),
            });
        }
    }
    let deltas: Vec<Rational> = global
        .into_iter()
        .map(|o| o.expect("every level is reached by some path"))
        .collect();
    let tau: Vec<AffineFunc> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| f.add_constant(&Rational::from_integer((i as i64).into())))
        .collect();
    let llrf = Llrf {
        components: tau.clone(),
        deltas: deltas.clone(),
        kind: LlrfKind::Strong,
        domain: Domain::Rational,
    };
    // c tau with c > 1/min(delta) makes every decrease at least 1
    let min_delta = deltas.iter().min().expect("d >= 1").clone();
    let scale = Rational::from_integer(num::integer::div_ceil(
        min_delta.denom().clone(),
        min_delta.numer().clone(),
    )) + Rational::one();
    let normalized = Llrf {
        components: tau.iter().map(|t| t.scale(&scale)).collect(),
        deltas: deltas.iter().map(|dl| dl * &scale).collect(),
        kind: LlrfKind::Strong,
        domain: Domain::Rational,
    };
    Ok(StrongConversion {
        llrf,
        fs,
        normalized,
        scale,
    })
}

/// Minimal xi >= 0 with multipliers mu >= 0 certifying
/// (x'' in Q, delta f <= 0) => delta rho >= 0 via the Farkas identity
/// mu A'' + xi (delta f row) = -(delta rho row), mu c'' <= 0.
fn solve_xi(q: &ConstraintPoly, rho: &AffineFunc, f: &AffineFunc, n: usize) -> Option<Rational> {
    let m = q.nrows();
    let mut sys = GeneralSystem::new(m + 1);
    for flag in sys.nonneg.iter_mut() {
        *flag = true;
    }
    let drho = rho.delta_row();
    let df = f.delta_row();
    for c in 0..2 * n {
        let mut row = RatVector::zeros(m + 1);
        for r in 0..m {
            row[r] = q.a.row(r)[c].clone();
        }
        row[m] = df[c].clone();
        sys.push(row, RowKind::Eq, -drho[c].clone());
    }
    let mut row = RatVector::zeros(m + 1);
    for r in 0..m {
        row[r] = q.b[r].clone();
    }
    sys.push(row, RowKind::Le, Rational::zero());
    let mut obj = RatVector::zeros(m + 1);
    obj[m] = Rational::one();
    match sys.solve(Some(&(obj, Sense::Min))) {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

fn min_over(p: &ConstraintPoly, obj: &RatVector) -> Option<Rational> {
    match p.minimize(obj) {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Check a weak lexicographic function against the transition system by
/// rebuilding its chain: at every level each nonempty piece must keep the
/// component nonnegative and non-increasing, and the final level must be
/// empty.
pub fn verify_weak_llrf(components: &[AffineFunc], ts: &TransitionSystem) -> bool {
    verify_weak_llrf_over(components, &ts.polys)
}

/// The chain check against an explicit list of per-path polyhedra (the
/// integer hulls, for functions produced over the integer domain).
pub fn verify_weak_llrf_over(components: &[AffineFunc], polys: &[ConstraintPoly]) -> bool {
    if components.iter().any(|c| {
        polys
            .first()
            .is_some_and(|p| 2 * c.arity() != p.ambient())
    }) {
        return false;
    }
    let n = match components.first() {
        Some(c) => c.arity(),
        None => return polys.iter().all(|p| p.is_empty()),
    };
    let mut current: Vec<ConstraintPoly> = polys.to_vec();
    for rho in components {
        let mut next = Vec::with_capacity(current.len());
        for p in &current {
            if p.is_empty() {
                next.push(ConstraintPoly::empty(2 * n));
                continue;
            }
            // rho(x) >= 0 over the piece
            let mut obj = RatVector::zeros(2 * n);
            for j in 0..n {
                obj[j] = rho.lambda[j].clone();
            }
            match p.minimize(&obj) {
                LpOutcome::Optimal { value, .. } => {
                    if value + &rho.lambda0 < Rational::zero() {
                        return false;
                    }
                }
                _ => return false,
            }
            // delta rho >= 0 over the piece
            match p.minimize(&rho.delta_row()) {
                LpOutcome::Optimal { value, .. } => {
                    if value.is_negative() {
                        return false;
                    }
                }
                _ => return false,
            }
            let (h, c) = delta_zero_hyperplane(rho);
            let face = polyhedra::face(p, &h, &c).expect("delta just checked valid");
            next.push(face.induced());
        }
        current = next;
    }
    current.iter().all(|p| p.is_empty())
}

/// Is the transition ranked by component i of a strong function, for some i?
pub fn ranked_by_some(llrf: &Llrf, xpp: &RatVector) -> bool {
    let d = llrf.components.len();
    for i in 0..d {
        let rho_i = &llrf.components[i];
        let (x, _) = xpp.split_half();
        let cond39 = rho_i.delta(xpp) >= llrf.deltas[i];
        if !cond39 {
            continue;
        }
        let cond38 = (0..=i).all(|j| {
            let (xj, _) = xpp.split_half();
            llrf.components[j].eval(&xj) >= Rational::zero()
        });
        let cond37 = (0..i).all(|j| !llrf.components[j].delta(xpp).is_negative());
        let _ = x;
        if cond37 && cond38 {
            return true;
        }
    }
    false
}

/// Sampled strong verification: vertices, vertex+ray and vertex+2*ray
/// combinations, vertex midpoints, and any extra transitions supplied by the
/// caller must all be ranked by some component with the reported deltas.
pub fn check_strong_sampled(llrf: &Llrf, ts: &TransitionSystem, extra: &[RatVector]) -> bool {
    assert_eq!(llrf.kind, LlrfKind::Strong);
    let mut samples: Vec<RatVector> = extra.to_vec();
    let two = Rational::from_integer(2.into());
    let half = Rational::new(1.into(), 2.into());
    for p in &ts.polys {
        if p.is_empty() {
            continue;
        }
        let g = polyhedra::to_generators(p);
        for v in &g.vertices {
            samples.push(v.clone());
            for r in &g.rays {
                samples.push(v.add(r));
                samples.push(v.add(&r.scale(&two)));
            }
            for w in &g.vertices {
                if v < w {
                    samples.push(v.add(w).scale(&half));
                }
            }
        }
    }
    for s in &samples {
        if !ts.polys.iter().any(|p| p.contains(s)) {
            continue;
        }
        if !ranked_by_some(llrf, s) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Lexicographic witnesses
// ---------------------------------------------------------------------------

fn phi_system(
    xs: &[Vec<RatVector>],
    ys: &[Vec<RatVector>],
    n: usize,
    extra_sum: Option<&[RatVector]>,
) -> GeneralSystem {
    // variables: lambda0, lambda_1..lambda_n (free)
    let mut sys = GeneralSystem::new(n + 1);
    let mut sum_row = RatVector::zeros(n + 1);
    for xsi in xs {
        for v in xsi {
            let (x, xp) = v.split_half();
            // lambda.x + lambda0 >= 0
            let mut r = RatVector::zeros(n + 1);
            r[0] = -Rational::one();
            for j in 0..n {
                r[1 + j] = -x[j].clone();
            }
            sys.push(r, RowKind::Le, Rational::zero());
            // lambda.(x - x') >= 0
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = &xp[j] - &x[j];
                sum_row[1 + j] = &sum_row[1 + j] + (&xp[j] - &x[j]);
            }
            sys.push(r, RowKind::Le, Rational::zero());
        }
    }
    for ysi in ys {
        for y in ysi {
            let (yy, yp) = y.split_half();
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = -yy[j].clone();
            }
            sys.push(r, RowKind::Le, Rational::zero());
            let mut r = RatVector::zeros(n + 1);
            for j in 0..n {
                r[1 + j] = &yp[j] - &yy[j];
                sum_row[1 + j] = &sum_row[1 + j] + (&yp[j] - &yy[j]);
            }
            sys.push(r, RowKind::Le, Rational::zero());
        }
    }
    match extra_sum {
        None => {
            // (33e): the summed strict decrease over all points and rays
            sys.push(sum_row, RowKind::Le, -Rational::one());
        }
        Some(zs) => {
            // the substituted variant: sum over the independent subset only
            let mut r = RatVector::zeros(n + 1);
            for z in zs {
                let (a, b) = z.split_half();
                for j in 0..n {
                    r[1 + j] = &r[1 + j] + (&b[j] - &a[j]);
                }
            }
            sys.push(r, RowKind::Le, -Rational::one());
        }
    }
    sys
}

/// Membership, the rays-imply-points condition, and infeasibility of the
/// induced lexicographic system.
pub fn verify_lex_witness(w: &LexWitness, ts: &TransitionSystem) -> Result<(), WitnessError> {
    let as_witness = Witness {
        xs: w.xs.clone(),
        ys: w.ys.clone(),
    };
    lrf::check_membership(&as_witness, ts)?;
    let sys = phi_system(&w.xs, &w.ys, ts.n, None);
    if sys.solve(None).is_feasible() {
        return Err(WitnessError::SystemSatisfiable);
    }
    Ok(())
}

/// Extract a lexicographic nonexistence witness from the failing faces of
/// the synthesis recursion (one polyhedron per path, empty allowed; all must
/// be exact integral faces). Generator points and rays are the candidates;
/// the system is shrunk through the substituted sum over a maximal
/// linearly-independent subset and an irredundant infeasible core.
pub fn extract_lex_witness(failing_faces: &[ConstraintPoly], n: usize) -> Option<LexWitness> {
    let k = failing_faces.len();
    let mut gens: Vec<GeneratorRep> = Vec::with_capacity(k);
    for p in failing_faces {
        if p.is_empty() {
            gens.push(GeneratorRep {
                vertices: Vec::new(),
                rays: Vec::new(),
            });
        } else {
            gens.push(inthull::integral_generators(p)?);
        }
    }
    let full_xs: Vec<Vec<RatVector>> = gens.iter().map(|g| g.vertices.clone()).collect();
    let full_ys: Vec<Vec<RatVector>> = gens.iter().map(|g| g.rays.clone()).collect();

    // maximal linearly independent subset of all generators
    let mut zs: Vec<RatVector> = Vec::new();
    let mut rank = 0usize;
    for v in full_xs.iter().chain(full_ys.iter()).flatten() {
        let mut cand = zs.clone();
        cand.push(v.clone());
        let m = RatMatrix::from_rows(cand.clone(), 2 * n);
        if m.rank() > rank {
            rank += 1;
            zs = cand;
        }
    }

    // tag rows exactly like phi_system emits them: two rows per point, two
    // per ray, then the substituted sum row
    #[derive(Clone, Copy)]
    enum Tag {
        X(usize, usize),
        Y(usize, usize),
        Sum,
    }
    let mut tags: Vec<Tag> = Vec::new();
    for (path, xsi) in full_xs.iter().enumerate() {
        for (i, _) in xsi.iter().enumerate() {
            tags.push(Tag::X(path, i));
            tags.push(Tag::X(path, i));
        }
    }
    for (path, ysi) in full_ys.iter().enumerate() {
        for (i, _) in ysi.iter().enumerate() {
            tags.push(Tag::Y(path, i));
            tags.push(Tag::Y(path, i));
        }
    }
    tags.push(Tag::Sum);
    let sys = phi_system(&full_xs, &full_ys, n, Some(&zs));
    let a = RatMatrix::from_rows(sys.rows.clone(), n + 1);
    let b = RatVector::new(sys.rhs.clone());
    let core = lp::iis(&a, &b).ok()?;

    let mut w = LexWitness {
        xs: vec![Vec::new(); k],
        ys: vec![Vec::new(); k],
    };
    let push_point = |w: &mut LexWitness, path: usize, v: &RatVector, is_x: bool| {
        let list = if is_x { &mut w.xs[path] } else { &mut w.ys[path] };
        if !list.contains(v) {
            list.push(v.clone());
        }
    };
    for &ri in &core {
        match tags[ri] {
            Tag::X(path, i) => push_point(&mut w, path, &full_xs[path][i], true),
            Tag::Y(path, i) => push_point(&mut w, path, &full_ys[path][i], false),
            Tag::Sum => {
                // the substituted row involves every member of Z
                for z in &zs {
                    'findz: for (path, xsi) in full_xs.iter().enumerate() {
                        if xsi.contains(z) {
                            push_point(&mut w, path, z, true);
                            break 'findz;
                        }
                        if full_ys[path].contains(z) {
                            push_point(&mut w, path, z, false);
                            break 'findz;
                        }
                    }
                }
            }
        }
    }
    for path in 0..k {
        if !w.ys[path].is_empty() && w.xs[path].is_empty() {
            w.xs[path].push(full_xs[path].first()?.clone());
        }
    }
    // the shrunk candidate should check out; fall back to the full sets
    let shrunk_ok = !phi_system(&w.xs, &w.ys, n, None).solve(None).is_feasible();
    if shrunk_ok {
        debug_assert!(w.size() <= 6 * n + 2, "witness exceeds the 6n+2 bound");
        return Some(w);
    }
    let full = LexWitness {
        xs: full_xs,
        ys: full_ys,
    };
    if !phi_system(&full.xs, &full.ys, n, None).solve(None).is_feasible() {
        Some(full)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Iteration bounds
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound: Rational,
    /// 1-based index of the first component negative at the start state;
    /// d + 1 when none is negative
    pub first_negative: usize,
    /// no component is negative at the start state: the conservative
    /// reading sums over every component (the literal statement would stop
    /// one short)
    pub none_negative: bool,
    pub contributions: Vec<Rational>,
}

/// Upper bound on the number of iterations from a start state, for a strong
/// lexicographic function: sum of floor(tau_i(x0)/delta_i) + 1 over the
/// components before the first negative one.
pub fn iteration_bound(llrf: &Llrf, x0: &RatVector) -> BoundReport {
    assert_eq!(llrf.kind, LlrfKind::Strong, "iteration_bound needs a strong function");
    let d = llrf.components.len();
    let j = (0..d)
        .find(|&i| llrf.components[i].eval(x0).is_negative())
        .map(|i| i + 1)
        .unwrap_or(d + 1);
    let none_negative = j == d + 1;
    let upto = if none_negative { d } else { j - 1 };
    let mut contributions = Vec::with_capacity(upto);
    let mut bound = Rational::zero();
    for i in 0..upto {
        let v = llrf.components[i].eval(x0);
        let c = Rational::from_integer(floor_int(&(v / &llrf.deltas[i]))) + Rational::one();
        bound += &c;
        contributions.push(c);
    }
    BoundReport {
        bound,
        first_negative: j,
        none_negative,
        contributions,
    }
}

/// The bound theorem needs every used component to be non-increasing over
/// every path; true by construction for the converted function on a
/// single-path loop, checked by LP for multipath inputs.
pub fn bound_premise_holds(llrf: &Llrf, polys: &[ConstraintPoly]) -> bool {
    llrf.components.iter().all(|rho| {
        polys.iter().all(|p| match p.minimize(&rho.delta_row()) {
            LpOutcome::Optimal { value, .. } => !value.is_negative(),
            LpOutcome::Infeasible { .. } => true,
            _ => false,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::loopmodel::{build_transition_system, parse_loop};

    fn ts(text: &str) -> TransitionSystem {
        build_transition_system(&parse_loop(text).unwrap())
    }

    // the three-guard single-path loop with a 2-lex function
    const LOOP12: &str = "\
vars: x1 x2 x3
path:
  guard: x1 >= 0; x2 >= 0; x3 >= -1*x1
  update: x2' = x2 - x1; x3' = x3 + x1 - 2
";

    const LOOP12_CUT: &str = "\
vars: x1 x2 x3
path:
  guard: x1 >= 0; x2 >= 0
  update: x2' = x2 - x1; x3' = x3 + x1 - 2
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

    const LOOP41: &str = "\
vars: x1 x2 x3
path:
  guard: x1 >= 0
  update: x1' = x1 - 1
path:
  guard: x1 >= 0; x2 - x1 >= 0
  update: x1' = x1; x2' = x2 - 1
path:
  guard: x1 >= 0; x2 - x1 >= 0; x3 >= 0
  update: 2*x1' <= x1; x2' = x2; x3' = x3 - 1
";

    #[test]
    fn quasi_space_examples() {
        // the countdown loop admits the quasi function x
        let t = ts("vars: x\npath:\n  guard: x >= 0\n  update: x' = x - 1\n");
        let refs: Vec<&ConstraintPoly> = t.polys.iter().collect();
        let space = quasi_space(&refs, 1);
        // fix lambda0 = 0, lambda1 = 1 and check feasibility
        let mut probe = space.poly.clone();
        let mut e0 = RatVector::zeros(probe.ambient());
        e0[0] = Rational::one();
        probe.push_equality(e0, int(0));
        let mut e1 = RatVector::zeros(probe.ambient());
        e1[1] = Rational::one();
        probe.push_equality(e1, int(1));
        assert!(!probe.is_empty());
        // the zero function is always in the space
        let mut zero_probe = space.poly.clone();
        for j in 0..=1 {
            let mut e = RatVector::zeros(zero_probe.ambient());
            e[j] = Rational::one();
            zero_probe.push_equality(e, int(0));
        }
        assert!(!zero_probe.is_empty());
    }

    #[test]
    fn quasi_space_projection_trivial() {
        // {x' <= x - 1} without a lower bound: only trivial quasi functions
        let t = ts("vars: x\npath:\n  update: x' <= x - 1\n");
        let refs: Vec<&ConstraintPoly> = t.polys.iter().collect();
        let space = quasi_space(&refs, 1);
        let mut obj = RatVector::zeros(space.poly.ambient());
        obj[1] = Rational::one();
        match space.poly.maximize(&obj) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(0)),
            o => panic!("unexpected {:?}", o),
        }
        match space.poly.minimize(&obj) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(0)),
            o => panic!("unexpected {:?}", o),
        }
        // and therefore no non-trivial quasi function
        assert!(find_nontrivial_quasi_lrf(&refs, 1).is_none());
    }

    #[test]
    fn quasi_nontrivial_examples() {
        let t = ts(LOOP12);
        let refs: Vec<&ConstraintPoly> = t.polys.iter().collect();
        let rho = find_nontrivial_quasi_lrf(&refs, 3).expect("x2 qualifies");
        // optimality: x2 strictly decreases somewhere, so must rho
        assert!(t.polys.iter().any(|q| match q.maximize(&rho.delta_row()) {
            LpOutcome::Optimal { value, .. } => value.is_positive(),
            LpOutcome::Unbounded { .. } => true,
            _ => false,
        }));
    }

    #[test]
    fn loop12_llrf_dimension_2() {
        let t = ts(LOOP12);
        let res = llrf_int(&t);
        let LlrfVerdict::Found { llrf, .. } = &res.verdict else {
            panic!("expected Found");
        };
        assert_eq!(llrf.dimension(), 2);
        assert_eq!(llrf.deltas, vec![int(1), int(1)]);
        // the paper's weak pair passes the checker
        let paper = vec![
            AffineFunc::new(int(0), RatVector::from_i64(&[0, 1, 0])),
            AffineFunc::new(int(0), RatVector::from_i64(&[0, 0, 1])),
        ];
        assert!(verify_weak_llrf(&paper, &t));
        // x3 alone is not even nonnegative
        let x3 = vec![AffineFunc::new(int(0), RatVector::from_i64(&[0, 0, 1]))];
        assert!(!verify_weak_llrf(&x3, &t));
        // rational domain also synthesizes a 2-dimensional weak function
        let res = synth_llrf(&LlrfQuery::new(t, Domain::Rational));
        let LlrfVerdict::Found { llrf, .. } = &res.verdict else {
            panic!("expected Found over Q");
        };
        assert_eq!(llrf.dimension(), 2);
    }

    #[test]
    fn loop12_without_guard_has_no_llrf() {
        let t = ts(LOOP12_CUT);
        let res = llrf_int(&t);
        assert!(matches!(res.verdict, LlrfVerdict::None { .. }));
    }

    #[test]
    fn loop3_llrf_dimension_2() {
        let t = ts(LOOP3);
        let res = llrf_int(&t);
        let LlrfVerdict::Found { llrf, .. } = &res.verdict else {
            panic!("expected Found");
        };
        assert_eq!(llrf.dimension(), 2);
        assert!(verify_weak_llrf(
            &[
                AffineFunc::new(int(0), RatVector::from_i64(&[1, 0])),
                AffineFunc::new(int(0), RatVector::from_i64(&[0, 1])),
            ],
            &t
        ));
    }

    #[test]
    fn loop41_weak_and_strong() {
        let t = ts(LOOP41);
        let res = synth_llrf(&LlrfQuery::new(t.clone(), Domain::Rational));
        let LlrfVerdict::Found { llrf, synthesis } = &res.verdict else {
            panic!("expected Found over Q");
        };
        assert_eq!(llrf.dimension(), 3);
        // the paper's weak triple verifies
        let paper_weak = vec![
            AffineFunc::new(int(0), RatVector::from_i64(&[1, 0, 0])),
            AffineFunc::new(int(0), RatVector::from_i64(&[-1, 1, 0])),
            AffineFunc::new(int(0), RatVector::from_i64(&[0, 0, 1])),
        ];
        assert!(verify_weak_llrf(&paper_weak, &t));
        // conversion to a strong function succeeds and samples check out
        let conv = weak_to_strong(synthesis).expect("conversion succeeds");
        assert_eq!(conv.llrf.components.len(), llrf.dimension());
        assert!(conv.llrf.deltas.iter().all(|d| d.is_positive()));
        assert!(check_strong_sampled(&conv.llrf, &t, &[]));
        // the paper's strong counterpart with its deltas passes the sampled check
        let paper_strong = Llrf {
            components: vec![
                AffineFunc::new(int(0), RatVector::from_i64(&[1, 0, 0])),
                AffineFunc::new(int(1), RatVector::from_i64(&[1, 1, 0])),
                AffineFunc::new(int(2), RatVector::from_i64(&[1, 1, 1])),
            ],
            deltas: vec![int(1), rat(1, 2), rat(1, 3)],
            kind: LlrfKind::Strong,
            domain: Domain::Rational,
        };
        assert!(check_strong_sampled(&paper_strong, &t, &[]));
    }

    #[test]
    fn conversion_on_paper_chain_matches_example() {
        // run the synthesis on the exact paper components by rebuilding the
        // chain for <x1, x2 - x1, x3> and converting
        let t = ts(LOOP41);
        let comps = vec![
            AffineFunc::new(int(0), RatVector::from_i64(&[1, 0, 0])),
            AffineFunc::new(int(0), RatVector::from_i64(&[-1, 1, 0])),
            AffineFunc::new(int(0), RatVector::from_i64(&[0, 0, 1])),
        ];
        let mut levels = vec![t
            .polys
            .iter()
            .map(|p| FaceSpec::whole(p.clone()))
            .collect::<Vec<_>>()];
        let mut current = t.polys.clone();
        for rho in &comps {
            let (h, c) = delta_zero_hyperplane(rho);
            let faces: Vec<FaceSpec> = current
                .iter()
                .map(|p| {
                    if p.is_empty() {
                        let mut f = FaceSpec::whole(p.clone());
                        f.empty = true;
                        f
                    } else {
                        polyhedra::face(p, &h, &c).unwrap()
                    }
                })
                .collect();
            current = faces.iter().map(|f| f.induced()).collect();
            levels.push(faces);
        }
        assert!(current.iter().all(|p| p.is_empty()));
        let synthesis = LlrfSynthesis {
            weak_components: comps,
            chain: RankingChain { levels },
            path_indices: vec![0, 1, 2],
            polys: t.polys.clone(),
        };
        let conv = weak_to_strong(&synthesis).unwrap();
        // f1 = x1, f2 = x1 + x2, f3 = x1 + x2 + x3
        assert_eq!(conv.fs[0].lambda, RatVector::from_i64(&[1, 0, 0]));
        assert_eq!(conv.fs[1].lambda, RatVector::from_i64(&[1, 1, 0]));
        assert_eq!(conv.fs[2].lambda, RatVector::from_i64(&[1, 1, 1]));
        // tau = <x1, x1 + x2 + 1, x1 + x2 + x3 + 2>; the deltas are the
        // cross-path minima (the paper reports per-path optima), all positive
        assert_eq!(conv.llrf.components[1].lambda0, int(1));
        assert_eq!(conv.llrf.components[2].lambda0, int(2));
        assert_eq!(conv.llrf.deltas.len(), 3);
        assert!(conv.llrf.deltas.iter().all(|d| d.is_positive()));
        assert_eq!(conv.llrf.deltas[2], rat(1, 3));
        assert!(check_strong_sampled(&conv.llrf, &t, &[]));
        // normalization pushes every delta to at least 1
        assert!(conv.normalized.deltas.iter().all(|d| d >= &int(1)));
    }

    #[test]
    fn single_component_conversion() {
        let t = ts("vars: x\npath:\n  guard: x >= 0\n  update: x' = x - 1\n");
        let res = synth_llrf(&LlrfQuery::new(t.clone(), Domain::Rational));
        let LlrfVerdict::Found { synthesis, .. } = &res.verdict else {
            panic!("expected Found");
        };
        let conv = weak_to_strong(synthesis).unwrap();
        assert_eq!(conv.llrf.components.len(), 1);
        assert_eq!(conv.llrf.deltas, vec![int(1)]);
    }

    #[test]
    fn lex_witness_unbounded_countdown() {
        // {x' <= x - 1}: no lexicographic function; the paper's witness
        let t = ts("vars: x\npath:\n  update: x' <= x - 1\n");
        let w = LexWitness {
            xs: vec![vec![RatVector::from_i64(&[0, -1])]],
            ys: vec![vec![RatVector::from_i64(&[1, 1]), RatVector::from_i64(&[-1, -1])]],
        };
        assert!(verify_lex_witness(&w, &t).is_ok());
        // dropping the rays lets x - lambda0 through
        let weak = LexWitness {
            xs: vec![vec![RatVector::from_i64(&[0, -1])]],
            ys: vec![vec![]],
        };
        assert!(matches!(
            verify_lex_witness(&weak, &t),
            Err(WitnessError::SystemSatisfiable)
        ));
        // extraction produces a checkable witness of bounded size
        let mut q = LlrfQuery::new(t.clone(), Domain::Integer);
        q.witness_wanted = true;
        let res = synth_llrf(&q);
        let LlrfVerdict::None { witness: Some(w) } = &res.verdict else {
            panic!("expected None with witness");
        };
        assert!(verify_lex_witness(w, &t).is_ok());
        assert!(w.size() <= 6 * t.n + 2);
    }

    #[test]
    fn lex_witness_two_path_loop() {
        // the two-path loop whose lexicographic system sums to 0 >= 1
        let text = "\
vars: x1 x2
path:
  guard: x1 >= 0; x2 >= 0
  update: x1' = x1 - 1
path:
  guard: x1 >= 0; x2 >= 0
  update: x2' = x2 - 1
";
        let t = ts(text);
        let w = LexWitness {
            xs: vec![
                vec![RatVector::from_i64(&[0, 0, -1, 0])],
                vec![RatVector::from_i64(&[0, 0, 0, -1])],
            ],
            ys: vec![
                vec![RatVector::from_i64(&[0, 0, 0, 1])],
                vec![RatVector::from_i64(&[0, 0, 1, 0])],
            ],
        };
        assert!(verify_lex_witness(&w, &t).is_ok());
        let mut q = LlrfQuery::new(t.clone(), Domain::Integer);
        q.witness_wanted = true;
        let res = synth_llrf(&q);
        let LlrfVerdict::None { witness: Some(got) } = &res.verdict else {
            panic!("expected None with witness");
        };
        assert!(verify_lex_witness(got, &t).is_ok());
        assert!(got.size() <= 6 * t.n + 2);
    }

    #[test]
    fn bound_countdown() {
        let llrf = Llrf {
            components: vec![AffineFunc::new(int(0), RatVector::from_i64(&[1]))],
            deltas: vec![int(1)],
            kind: LlrfKind::Strong,
            domain: Domain::Rational,
        };
        let report = iteration_bound(&llrf, &RatVector::from_i64(&[5]));
        assert_eq!(report.bound, int(6));
        assert!(report.none_negative);
        // negative at the start: empty sum
        let report = iteration_bound(&llrf, &RatVector::from_i64(&[-3]));
        assert_eq!(report.bound, int(0));
        assert_eq!(report.first_negative, 1);
    }

    #[test]
    fn minimality_when_lrf_exists() {
        // a plain countdown has an LRF, so the lexicographic dimension is 1
        let t = ts("vars: x y\npath:\n  guard: x >= 0\n  update: x' = x - 1; y' = y + 1\n");
        let res = llrf_int(&t);
        let LlrfVerdict::Found { llrf, .. } = &res.verdict else {
            panic!("expected Found");
        };
        assert_eq!(llrf.dimension(), 1);
    }
}
