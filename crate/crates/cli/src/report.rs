//! Analysis reports: one JSON object per input file (schema version 1),
//! rationals rendered as `p/q` strings, plus a human-readable text form.
//! Field order is fixed by the struct declarations, so identical inputs and
//! flags produce byte-identical JSON apart from the timing field.

use lcl_core::inthull::HullReport;
use lcl_core::linalg::{AffineFunc, RatVector, Rational};
use lcl_core::llrf::{BoundReport, LexWitness, Llrf};
use lcl_core::lrf::Witness;
use serde::Serialize;

pub fn rat_str(r: &Rational) -> String {
    format!("{}", r)
}

pub fn vec_str(v: &RatVector) -> Vec<String> {
    v.iter().map(|e| format!("{}", e)).collect()
}

#[derive(Serialize)]
pub struct FunctionJson {
    pub text: String,
    pub lambda0: String,
    pub lambda: Vec<String>,
}

impl FunctionJson {
    pub fn new(f: &AffineFunc, names: &[String]) -> Self {
        FunctionJson {
            text: f.display(names),
            lambda0: rat_str(&f.lambda0),
            lambda: vec_str(&f.lambda),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessPathJson {
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub paths: Vec<WitnessPathJson>,
}

impl WitnessJson {
    pub fn from_lrf(w: &Witness) -> Self {
        WitnessJson {
            paths: w
                .xs
                .iter()
                .zip(w.ys.iter())
                .map(|(xs, ys)| WitnessPathJson {
                    x: xs.iter().map(vec_str).collect(),
                    y: ys.iter().map(vec_str).collect(),
                })
                .collect(),
        }
    }

    pub fn from_lex(w: &LexWitness) -> Self {
        WitnessJson {
            paths: w
                .xs
                .iter()
                .zip(w.ys.iter())
                .map(|(xs, ys)| WitnessPathJson {
                    x: xs.iter().map(vec_str).collect(),
                    y: ys.iter().map(vec_str).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct HullComponentJson {
    pub vars: Vec<String>,
    pub class: String,
    pub exact: bool,
    pub added_rows: usize,
}

#[derive(Serialize)]
pub struct HullJson {
    pub exact: bool,
    pub components: Vec<HullComponentJson>,
}

impl HullJson {
    pub fn from_reports(reports: &[HullReport], names: &[String]) -> Self {
        let mut components = Vec::new();
        let mut exact = true;
        for r in reports {
            exact &= r.exact;
            for c in &r.components {
                components.push(HullComponentJson {
                    vars: c
                        .vars
                        .iter()
                        .map(|&v| {
                            if v < names.len() {
                                names[v].clone()
                            } else {
                                format!("{}'", names[v - names.len()])
                            }
                        })
                        .collect(),
                    class: c.class.name().to_string(),
                    exact: c.exact,
                    added_rows: c.added.len(),
                });
            }
        }
        HullJson { exact, components }
    }
}

#[derive(Serialize)]
pub struct BoundJson {
    pub start: Vec<String>,
    pub premise_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_negative: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundJson {
    pub fn unavailable(start: &RatVector) -> Self {
        BoundJson {
            start: vec_str(start),
            premise_holds: false,
            value: None,
            components: None,
            first_negative: None,
            note: Some("a component may increase on some path; the additive bound is not derivable for this loop".into()),
        }
    }

    pub fn from_report(start: &RatVector, r: &BoundReport) -> Self {
        let note = if r.none_negative {
            Some("no component is negative at the start state; the sum conservatively includes every component".into())
        } else {
            None
        };
        BoundJson {
            start: vec_str(start),
            premise_holds: true,
            value: Some(rat_str(&r.bound)),
            components: Some(r.contributions.iter().map(rat_str).collect()),
            first_negative: Some(r.first_negative),
            note,
        }
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub kind: String,
    pub result: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub file: String,
    pub mode: String,
    pub domain: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<FunctionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_components: Option<Vec<FunctionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_check: Option<bool>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(file: &str, mode: &str, domain: &str) -> Self {
        Report {
            schema: 1,
            file: file.to_string(),
            mode: mode.to_string(),
            domain: domain.to_string(),
            verdict: String::new(),
            function: None,
            components: None,
            deltas: None,
            weak_components: None,
            witness: None,
            hull: None,
            bound: None,
            check: None,
            self_check: None,
            timing_ms: 0,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{}: {} over {}: {}\n",
            self.file, self.mode, self.domain, self.verdict
        );
        if let Some(f) = &self.function {
            out.push_str(&format!("  function: {}\n", f.text));
        }
        if let Some(cs) = &self.components {
            let texts: Vec<&str> = cs.iter().map(|c| c.text.as_str()).collect();
            out.push_str(&format!("  components: <{}>\n", texts.join(", ")));
        }
        if let Some(ds) = &self.deltas {
            out.push_str(&format!("  deltas: ({})\n", ds.join(", ")));
        }
        if let Some(w) = &self.witness {
            for (i, p) in w.paths.iter().enumerate() {
                if p.x.is_empty() && p.y.is_empty() {
                    continue;
                }
                let xs: Vec<String> = p.x.iter().map(|v| format!("({})", v.join(","))).collect();
                let ys: Vec<String> = p.y.iter().map(|v| format!("({})", v.join(","))).collect();
                out.push_str(&format!(
                    "  witness path {}: X = {{{}}} Y = {{{}}}\n",
                    i + 1,
                    xs.join(", "),
                    ys.join(", ")
                ));
            }
        }
        if let Some(h) = &self.hull {
            out.push_str(&format!(
                "  hull: {}\n",
                if h.exact { "exact" } else { "inexact (round cap hit)" }
            ));
            for c in &h.components {
                out.push_str(&format!(
                    "    component [{}]: {}{}, {} added row(s)\n",
                    c.vars.join(" "),
                    c.class,
                    if c.exact { "" } else { " (inexact)" },
                    c.added_rows
                ));
            }
        }
        if let Some(b) = &self.bound {
            match &b.value {
                Some(v) => out.push_str(&format!(
                    "  bound from ({}): {}\n",
                    b.start.join(", "),
                    v
                )),
                None => out.push_str(&format!(
                    "  bound from ({}): not derivable\n",
                    b.start.join(", ")
                )),
            }
            if let Some(note) = &b.note {
                out.push_str(&format!("    note: {}\n", note));
            }
        }
        if let Some(c) = &self.check {
            out.push_str(&format!(
                "  check [{}]: {}{}\n",
                c.kind,
                if c.result { "PASS" } else { "FAIL" },
                c.reason
                    .as_ref()
                    .map(|r| format!(" ({})", r))
                    .unwrap_or_default()
            ));
        }
        out
    }
}
