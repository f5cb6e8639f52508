//! `analyze`: linear / lexicographic-linear ranking-function analysis for
//! linear-constraint loops, over exact rational or integer semantics.
//!
//! Exit codes: 0 found or vacuous, 1 no ranking function (with a witness
//! when available), 2 non-termination detected, 3 inconclusive because an
//! integer hull hit its round cap, 64 usage errors, 65 parse/read errors.

mod checkfile;
mod report;

use clap::{Parser, ValueEnum};
use lcl_core::inthull::{HullConfig, OctagonMode};
use lcl_core::linalg::{RatVector, Rational};
use lcl_core::llrf::{
    self, check_strong_sampled, iteration_bound, verify_lex_witness, verify_weak_llrf,
    weak_to_strong, Llrf, LlrfKind, LlrfQuery, LlrfVerdict,
};
use lcl_core::loopmodel::{build_transition_system, parse_loop, TransitionSystem};
use lcl_core::lrf::{
    self, verify_lrf, verify_lrf_witness, Domain, Engine, LrfQuery, LrfVerdict, Witness,
};
use report::{BoundJson, CheckJson, FunctionJson, HullJson, Report, WitnessJson};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Lrf,
    Llrf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Int,
    Rat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Eq29,
    Generators,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Decide existence of, and synthesize, linear and lexicographic-linear
/// ranking functions for linear-constraint loops.
#[derive(Parser)]
#[command(name = "analyze", version, disable_help_subcommand = true)]
struct Args {
    /// analysis kind: a single linear function or a lexicographic tuple
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// variable domain: integer (via integer hulls) or rational
    #[arg(long, value_enum)]
    domain: DomainArg,
    /// extract a machine-checkable nonexistence witness on a None verdict
    #[arg(long)]
    witness: bool,
    /// start state (comma-separated rationals) for an iteration bound
    #[arg(long)]
    bound: Option<String>,
    /// synthesis route for --mode lrf
    #[arg(long, value_enum, default_value = "eq29")]
    engine: EngineArg,
    /// hull options: octagon=closure|exact, cut_round_cap=<n> (repeatable)
    #[arg(long)]
    hull: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// verify a candidate function or witness file instead of synthesizing
    #[arg(long)]
    check: Option<PathBuf>,
    /// loop files
    #[arg(required = true)]
    loopfiles: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    let hull_config = match parse_hull_options(&args.hull) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(64);
        }
    };
    let bound_start = match &args.bound {
        None => None,
        Some(text) => match parse_start_state(text) {
            Ok(v) => Some(v),
            Err(msg) => {
                eprintln!("error: {}", msg);
                return ExitCode::from(64);
            }
        },
    };

    let mut reports: Vec<Report> = Vec::new();
    let mut codes: Vec<u8> = Vec::new();
    for file in &args.loopfiles {
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{}: {}", file.display(), e);
                return ExitCode::from(65);
            }
        };
        let spec = match parse_loop(&text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}:{}", file.display(), e);
                return ExitCode::from(65);
            }
        };
        let ts = build_transition_system(&spec);
        if let Some(x0) = &bound_start {
            if x0.dim() != ts.n {
                eprintln!(
                    "{}: --bound start state has {} entries, the loop has {} variables",
                    file.display(),
                    x0.dim(),
                    ts.n
                );
                return ExitCode::from(64);
            }
        }
        let started = Instant::now();
        let (mut report, code) = match &args.check {
            Some(candidate_path) => match run_check(&args, &ts, file, candidate_path) {
                Ok(rc) => rc,
                Err(msg) => {
                    eprintln!("{}: {}", candidate_path.display(), msg);
                    return ExitCode::from(65);
                }
            },
            None => run_analysis(&args, &hull_config, bound_start.as_ref(), &ts, file),
        };
        report.timing_ms = started.elapsed().as_millis();
        match args.format {
            FormatArg::Text => print!("{}", report.render_text()),
            FormatArg::Json => {
                if args.loopfiles.len() == 1 {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap());
                }
            }
        }
        reports.push(report);
        codes.push(code);
    }
    if args.format == FormatArg::Json && args.loopfiles.len() > 1 {
        println!("{}", serde_json::to_string_pretty(&reports).unwrap());
    }
    let code = if codes.len() == 1 {
        codes[0]
    } else {
        codes.iter().copied().max().unwrap_or(0)
    };
    ExitCode::from(code)
}

fn mode_str(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Lrf => "lrf",
        ModeArg::Llrf => "llrf",
    }
}

fn domain_str(d: DomainArg) -> &'static str {
    match d {
        DomainArg::Int => "int",
        DomainArg::Rat => "rat",
    }
}

fn to_domain(d: DomainArg) -> Domain {
    match d {
        DomainArg::Int => Domain::Integer,
        DomainArg::Rat => Domain::Rational,
    }
}

fn parse_hull_options(opts: &[String]) -> Result<HullConfig, String> {
    let mut config = HullConfig::default();
    for opt in opts {
        for pair in opt.split(',') {
            let pair = pair.trim();
            if pair.is_empty() {
                continue;
            }
            let Some((key, value)) = pair.split_once('=') else {
                return Err(format!("--hull expects key=value, found `{}`", pair));
            };
            match key.trim() {
                "octagon" | "octagon_mode" => {
                    config.octagon_mode = match value.trim() {
                        "closure" => OctagonMode::Closure,
                        "exact" => OctagonMode::Exact,
                        other => return Err(format!("unknown octagon mode `{}`", other)),
                    };
                }
                "cut_round_cap" => {
                    config.cut_round_cap = value
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad cut_round_cap `{}`", value))?;
                }
                other => return Err(format!("unknown hull option `{}`", other)),
            }
        }
    }
    Ok(config)
}

fn parse_start_state(text: &str) -> Result<RatVector, String> {
    let mut entries = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        entries.push(parse_rat(part)?);
    }
    if entries.is_empty() {
        return Err("--bound expects a comma-separated start state".into());
    }
    Ok(RatVector::new(entries))
}

fn parse_rat(text: &str) -> Result<Rational, String> {
    use num::bigint::BigInt;
    use num::Zero;
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1i64, r.trim()),
        None => (1, text),
    };
    let (n, d) = match rest.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (rest, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational `{}`", text))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational `{}`", text))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{}`", text));
    }
    Ok(Rational::new(n * BigInt::from(sign), d))
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

fn run_analysis(
    args: &Args,
    hull_config: &HullConfig,
    bound_start: Option<&RatVector>,
    ts: &TransitionSystem,
    file: &PathBuf,
) -> (Report, u8) {
    let mut report = Report::new(
        &file.display().to_string(),
        mode_str(args.mode),
        domain_str(args.domain),
    );
    let domain = to_domain(args.domain);
    match args.mode {
        ModeArg::Lrf => {
            let mut query = LrfQuery::new(ts.clone(), domain);
            query.witness_wanted = args.witness;
            query.engine = match args.engine {
                EngineArg::Eq29 => Engine::Eq29,
                EngineArg::Generators => Engine::Generators,
            };
            query.hull_config = hull_config.clone();
            let analysis = lrf::synth_lrf(&query);
            if let Some(reports) = &analysis.hull_reports {
                report.hull = Some(HullJson::from_reports(reports, &ts.var_names));
            }
            match &analysis.verdict {
                LrfVerdict::Found { rho } => {
                    report.verdict = "found".into();
                    report.function = Some(FunctionJson::new(rho, &ts.var_names));
                    report.self_check = Some(verify_lrf(rho, ts, domain));
                    if let Some(x0) = bound_start {
                        // an LRF is the 1-component lexicographic case with
                        // unit decrease on every path
                        let tau = Llrf {
                            components: vec![rho.clone()],
                            deltas: vec![Rational::from_integer(1.into())],
                            kind: LlrfKind::Strong,
                            domain,
                        };
                        report.bound =
                            Some(BoundJson::from_report(x0, &iteration_bound(&tau, x0)));
                    }
                    (report, 0)
                }
                LrfVerdict::None { witness } => {
                    let code = finish_none(
                        &mut report,
                        witness.as_ref().map(WitnessJson::from_lrf),
                        analysis.hulls_exact,
                        domain,
                    );
                    (report, code)
                }
                LrfVerdict::NonTerminating => {
                    report.verdict = "nonterminating".into();
                    (report, 2)
                }
                LrfVerdict::Vacuous => {
                    report.verdict = "vacuous".into();
                    (report, 0)
                }
            }
        }
        ModeArg::Llrf => {
            let mut query = LlrfQuery::new(ts.clone(), domain);
            query.witness_wanted = args.witness;
            query.hull_config = hull_config.clone();
            let analysis = llrf::synth_llrf(&query);
            if let Some(reports) = &analysis.hull_reports {
                report.hull = Some(HullJson::from_reports(reports, &ts.var_names));
            }
            match &analysis.verdict {
                LlrfVerdict::Found { llrf, synthesis } => {
                    report.verdict = "found".into();
                    match domain {
                        Domain::Integer => {
                            report.components = Some(
                                llrf.components
                                    .iter()
                                    .map(|c| FunctionJson::new(c, &ts.var_names))
                                    .collect(),
                            );
                            report.deltas =
                                Some(llrf.deltas.iter().map(report::rat_str).collect());
                            report.self_check = Some(llrf::verify_weak_llrf_over(
                                &llrf.components,
                                &synthesis.polys,
                            ));
                        }
                        Domain::Rational => {
                            // report the strong conversion; the raw weak
                            // components ride along
                            report.weak_components = Some(
                                llrf.components
                                    .iter()
                                    .map(|c| FunctionJson::new(c, &ts.var_names))
                                    .collect(),
                            );
                            match weak_to_strong(synthesis) {
                                Ok(conv) => {
                                    report.components = Some(
                                        conv.llrf
                                            .components
                                            .iter()
                                            .map(|c| FunctionJson::new(c, &ts.var_names))
                                            .collect(),
                                    );
                                    report.deltas = Some(
                                        conv.llrf.deltas.iter().map(report::rat_str).collect(),
                                    );
                                    report.self_check =
                                        Some(check_strong_sampled(&conv.llrf, ts, &[]));
                                }
                                Err(e) => {
                                    report.verdict = format!("found (conversion failed: {})", e);
                                    report.self_check = Some(false);
                                }
                            }
                        }
                    }
                    if let Some(x0) = bound_start {
                        report.bound = Some(derive_bound(synthesis, x0));
                    }
                    (report, 0)
                }
                LlrfVerdict::None { witness } => {
                    let code = finish_none(
                        &mut report,
                        witness.as_ref().map(WitnessJson::from_lex),
                        analysis.hulls_exact,
                        domain,
                    );
                    (report, code)
                }
                LlrfVerdict::NonTerminating => {
                    report.verdict = "nonterminating".into();
                    (report, 2)
                }
                LlrfVerdict::Vacuous => {
                    report.verdict = "vacuous".into();
                    (report, 0)
                }
            }
        }
    }
}

fn finish_none(
    report: &mut Report,
    witness: Option<WitnessJson>,
    hulls_exact: bool,
    domain: Domain,
) -> u8 {
    report.witness = witness;
    if domain == Domain::Integer && !hulls_exact {
        report.verdict = "none_modulo_hull".into();
        3
    } else {
        report.verdict = "none".into();
        1
    }
}

/// Iteration bounds come from the converted strong function; the additive
/// bound additionally needs every component non-increasing over every path,
/// which holds by construction on single-path loops and is LP-checked here
/// for multipath ones.
fn derive_bound(synthesis: &llrf::LlrfSynthesis, x0: &RatVector) -> BoundJson {
    match weak_to_strong(synthesis) {
        Err(_) => BoundJson::unavailable(x0),
        Ok(conv) => {
            if !llrf::bound_premise_holds(&conv.llrf, &synthesis.polys) {
                return BoundJson::unavailable(x0);
            }
            BoundJson::from_report(x0, &iteration_bound(&conv.llrf, x0))
        }
    }
}

// ---------------------------------------------------------------------------
// Check mode
// ---------------------------------------------------------------------------

fn run_check(
    args: &Args,
    ts: &TransitionSystem,
    file: &PathBuf,
    candidate_path: &PathBuf,
) -> Result<(Report, u8), String> {
    let text = std::fs::read_to_string(candidate_path).map_err(|e| e.to_string())?;
    let candidate = checkfile::parse_candidate(&text, &ts.var_names, ts.k())?;
    let mut report = Report::new(
        &file.display().to_string(),
        mode_str(args.mode),
        domain_str(args.domain),
    );
    report.verdict = "check".into();
    let domain = to_domain(args.domain);
    let (kind, result, reason): (&str, bool, Option<String>) = match &candidate {
        checkfile::Candidate::Lrf(f) => {
            report.function = Some(FunctionJson::new(f, &ts.var_names));
            ("lrf", verify_lrf(f, ts, domain), None)
        }
        checkfile::Candidate::Llrf { components, deltas } => {
            report.components = Some(
                components
                    .iter()
                    .map(|c| FunctionJson::new(c, &ts.var_names))
                    .collect(),
            );
            match deltas {
                None => {
                    let ok = match domain {
                        Domain::Rational => verify_weak_llrf(components, ts),
                        Domain::Integer => {
                            let hulls: Vec<_> = ts
                                .polys
                                .iter()
                                .map(|p| lcl_core::inthull::integer_hull(p).0)
                                .collect();
                            llrf::verify_weak_llrf_over(components, &hulls)
                        }
                    };
                    ("weak-llrf", ok, None)
                }
                Some(ds) => {
                    report.deltas = Some(ds.iter().map(report::rat_str).collect());
                    let llrf = Llrf {
                        components: components.clone(),
                        deltas: ds.clone(),
                        kind: LlrfKind::Strong,
                        domain,
                    };
                    (
                        "strong-llrf-sampled",
                        check_strong_sampled(&llrf, ts, &[]),
                        None,
                    )
                }
            }
        }
        checkfile::Candidate::Witness { xs, ys } => match args.mode {
            ModeArg::Lrf => {
                let w = Witness {
                    xs: xs.clone(),
                    ys: ys.clone(),
                };
                report.witness = Some(WitnessJson::from_lrf(&w));
                match verify_lrf_witness(&w, ts) {
                    Ok(()) => ("lrf-witness", true, None),
                    Err(e) => ("lrf-witness", false, Some(e.to_string())),
                }
            }
            ModeArg::Llrf => {
                let w = llrf::LexWitness {
                    xs: xs.clone(),
                    ys: ys.clone(),
                };
                report.witness = Some(WitnessJson::from_lex(&w));
                match verify_lex_witness(&w, ts) {
                    Ok(()) => ("lex-witness", true, None),
                    Err(e) => ("lex-witness", false, Some(e.to_string())),
                }
            }
        },
    };
    report.check = Some(CheckJson {
        kind: kind.to_string(),
        result,
        reason,
    });
    Ok((report, if result { 0 } else { 1 }))
}
