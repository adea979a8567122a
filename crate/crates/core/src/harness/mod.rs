//! Executable checks for every registered claim, run over bounded families
//! of instances and collected into a reproducible report.
//!
//! A check passes only when every obligation it reduces to has the
//! predicted outcome. A prover `Unknown` makes the check indeterminate,
//! never passing.

pub mod random;
pub mod registry;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::Family;
use crate::formula::Formula;
use crate::prover::{decide_with, Logic, ProverConfig, Verdict, DEFAULT_MAX_NODES};

pub use registry::{entry, instances, plan, Entry, Obligation, OUT_OF_SCOPE, REGISTRY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coverage {
    /// The claim is checked exactly as stated.
    #[serde(rename = "executable")]
    Executable,
    /// A universally quantified claim checked on a finite family of instances.
    #[serde(rename = "instance evidence, not proof")]
    InstanceEvidence,
    /// A meta-theorem with no finite computational content.
    #[serde(rename = "out of scope: meta-theorem")]
    OutOfScope,
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coverage::Executable => "executable",
            Coverage::InstanceEvidence => "instance evidence, not proof",
            Coverage::OutOfScope => "out of scope: meta-theorem",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDETERMINATE",
        })
    }
}

/// Instantiation of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub logic: Logic,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    /// A formula instance: `sigma_j(x)`, `tau_j(x)` or formula text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
}

impl Params {
    pub fn new(logic: Logic) -> Params {
        Params {
            logic,
            k: None,
            l: None,
            part: None,
            family: None,
            instance: None,
            sample: None,
        }
    }

    pub fn k(mut self, k: usize) -> Params {
        self.k = Some(k);
        self
    }

    pub fn l(mut self, l: usize) -> Params {
        self.l = Some(l);
        self
    }

    pub fn part(mut self, part: u8) -> Params {
        self.part = Some(part);
        self
    }

    pub fn family(mut self, family: Family) -> Params {
        self.family = Some(family);
        self
    }

    pub fn instance(mut self, instance: impl Into<String>) -> Params {
        self.instance = Some(instance.into());
        self
    }

    pub fn sample(mut self, sample: u64) -> Params {
        self.sample = Some(sample);
        self
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let value = serde_json::to_value(self).expect("params serialise");
        let fields: Vec<String> = value
            .as_object()
            .expect("params serialise to an object")
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        f.write_str(&fields.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub logic: Logic,
    pub k_max: usize,
    pub l_max: usize,
    pub seed: u64,
    pub max_nodes: usize,
}

impl SuiteConfig {
    pub fn new(logic: Logic, k_max: usize, l_max: usize, seed: u64) -> SuiteConfig {
        SuiteConfig {
            logic,
            k_max,
            l_max,
            seed,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    fn prover(&self) -> ProverConfig {
        ProverConfig {
            max_nodes: self.max_nodes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub id: String,
    pub params: Params,
    pub status: Status,
    pub coverage: Coverage,
    pub evidence: Vec<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutOfScope {
    pub id: String,
    pub statement: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub config: SuiteConfig,
    pub checks: Vec<LemmaCheck>,
    pub out_of_scope: Vec<OutOfScope>,
}

impl LemmaReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialise")
    }

    /// One line per check followed by a summary line.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<13} {} [{}]\n",
                c.status.to_string(),
                c.id,
                c.params
            ));
        }
        for o in &self.out_of_scope {
            out.push_str(&format!("{:<13} {}\n", "OUT-OF-SCOPE", o.id));
        }
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} indeterminate\n",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Indeterminate)
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("`{0}` is a meta-theorem with no executable check")]
    OutOfScope(String),
    #[error("parameters {params} do not instantiate `{id}` (expects {shape})")]
    BadParams {
        id: String,
        params: String,
        shape: String,
    },
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Valid => "valid",
        Verdict::Invalid(_) => "invalid",
        Verdict::Unknown(_) => "unknown",
    }
}

/// `Some(ok)` when settled, `None` when the prover gave up.
fn evaluate(ob: &Obligation, logic: Logic, config: &ProverConfig) -> (Option<bool>, Value) {
    let mut ev = serde_json::Map::new();
    let ok = match ob {
        Obligation::Decide {
            claim,
            formula,
            valid,
        } => {
            let v = decide_with(logic, formula, config);
            ev.insert("claim".into(), json!(claim));
            ev.insert("formula".into(), json!(formula.to_string()));
            ev.insert(
                "expected".into(),
                json!(if *valid { "valid" } else { "invalid" }),
            );
            if let Value::Object(fields) = v.to_json() {
                ev.extend(fields);
            }
            v.as_bool().map(|b| b == *valid)
        }
        Obligation::Agree { claim, left, right } => {
            let (a, b) = (
                decide_with(logic, left, config),
                decide_with(logic, right, config),
            );
            ev.insert("claim".into(), json!(claim));
            ev.insert(
                "formulas".into(),
                json!([left.to_string(), right.to_string()]),
            );
            ev.insert(
                "verdicts".into(),
                json!([verdict_name(&a), verdict_name(&b)]),
            );
            match (a.as_bool(), b.as_bool()) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            }
        }
        Obligation::Fact {
            claim,
            holds,
            detail,
        } => {
            ev.insert("claim".into(), json!(claim));
            ev.insert("detail".into(), json!(detail));
            Some(*holds)
        }
    };
    ev.insert("ok".into(), json!(ok));
    (ok, Value::Object(ev))
}

fn run_check(
    entry: &Entry,
    params: Params,
    config: &SuiteConfig,
) -> Result<LemmaCheck, HarnessError> {
    let obligations =
        plan(entry.id, &params, config.seed).ok_or_else(|| HarnessError::BadParams {
            id: entry.id.to_string(),
            params: params.to_string(),
            shape: entry.shape.to_string(),
        })?;
    let prover = config.prover();
    let mut failed = false;
    let mut unsettled = false;
    let mut evidence = Vec::with_capacity(obligations.len());
    for ob in &obligations {
        let (ok, ev) = evaluate(ob, params.logic, &prover);
        match ok {
            Some(true) => {}
            Some(false) => failed = true,
            None => unsettled = true,
        }
        evidence.push(ev);
    }
    let status = if failed {
        Status::Fail
    } else if unsettled {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    Ok(LemmaCheck {
        id: entry.id.to_string(),
        params,
        status,
        coverage: entry.coverage,
        evidence,
    })
}

fn lookup(id: &str) -> Result<&'static Entry, HarnessError> {
    let e = entry(id).ok_or_else(|| HarnessError::UnknownLemma(id.to_string()))?;
    if e.coverage == Coverage::OutOfScope {
        return Err(HarnessError::OutOfScope(id.to_string()));
    }
    Ok(e)
}

/// Runs a single instance of a registered claim.
pub fn verify_lemma(
    id: &str,
    params: Params,
    config: &SuiteConfig,
) -> Result<LemmaCheck, HarnessError> {
    run_check(lookup(id)?, params, config)
}

/// Every instance of every executable entry, in registry order.
pub fn suite_instances(config: &SuiteConfig) -> Vec<(&'static Entry, Params)> {
    REGISTRY
        .iter()
        .flat_map(|e| instances(e, config).into_iter().map(move |p| (e, p)))
        .collect()
}

/// Runs the whole registry. Checks run in parallel; the report keeps registry order.
pub fn run_suite(config: &SuiteConfig) -> LemmaReport {
    let checks = suite_instances(config)
        .into_par_iter()
        .map(|(e, p)| run_check(e, p, config).expect("registry instances are well formed"))
        .collect();
    let out_of_scope = OUT_OF_SCOPE
        .iter()
        .map(|e| OutOfScope {
            id: e.id.to_string(),
            statement: e.statement.to_string(),
        })
        .collect();
    LemmaReport {
        config: *config,
        checks,
        out_of_scope,
    }
}

/// Every formula the suite sends to the prover, with duplicates removed.
pub fn suite_formulas(config: &SuiteConfig) -> Vec<Formula> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (e, p) in suite_instances(config) {
        if e.id == "lemma:6:K" {
            continue;
        }
        for ob in plan(e.id, &p, config.seed).expect("registry instances are well formed") {
            let formulas = match ob {
                Obligation::Decide { formula, .. } => vec![formula],
                Obligation::Agree { left, right, .. } => vec![left, right],
                Obligation::Fact { .. } => Vec::new(),
            };
            for f in formulas {
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Human-readable description of every entry registered under `id`.
pub fn describe(id: &str) -> Result<String, HarnessError> {
    let mut out = String::new();
    for e in REGISTRY.iter().chain(OUT_OF_SCOPE).filter(|e| e.id == id) {
        out.push_str(&format!(
            "{}\n  {}\n  claim: {}\n  coverage: {}\n",
            e.id, e.title, e.statement, e.coverage
        ));
        if !e.shape.is_empty() {
            out.push_str(&format!("  parameters: {}\n", e.shape));
        }
    }
    if out.is_empty() {
        return Err(HarnessError::UnknownLemma(id.to_string()));
    }
    Ok(out)
}
