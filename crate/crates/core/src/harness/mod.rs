//! Identity registry, run configuration and machine-readable reports.

pub mod compute;
mod registry;

pub use registry::registry;

use crate::context::{NumError, NumResult, PrecisionContext, SeriesValue};
use crate::report::decimal;
use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format '{s}' (json or csv)")),
        }
    }
}

/// Settings shared by `compute` and `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_bits: u32,
    /// Cap on series and summation lengths; the library default when unset.
    pub max_terms: Option<usize>,
    /// Fixed tolerances keyed by id glob; the first matching key wins.
    pub tolerances: BTreeMap<String, f64>,
    /// Multiplier on the combined error bounds for route cross-checks.
    pub cross_check_factor: f64,
    pub filter: String,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 128,
            max_terms: None,
            tolerances: BTreeMap::new(),
            cross_check_factor: 4.0,
            filter: "*".into(),
            format: OutputFormat::Json,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn context(&self) -> PrecisionContext {
        let mut ctx = PrecisionContext::new(self.precision_bits);
        if let Some(m) = self.max_terms {
            ctx.max_terms = m;
        }
        ctx
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(64..=1 << 16).contains(&self.precision_bits) {
            return Err(format!("precision_bits must be in 64..=65536, got {}", self.precision_bits));
        }
        if !(self.cross_check_factor > 0.0) {
            return Err("cross_check_factor must be positive".into());
        }
        if let Some(bad) = self.tolerances.keys().find(|k| glob::Pattern::new(k).is_err()) {
            return Err(format!("bad tolerance pattern '{bad}'"));
        }
        self.context().validate().map_err(|e| e.to_string())
    }

    fn override_for(&self, id: &str) -> Option<f64> {
        self.tolerances
            .iter()
            .find(|(k, _)| glob::Pattern::new(k).map(|p| p.matches(id)).unwrap_or(false))
            .map(|(_, &v)| v)
    }
}

/// How a check turns its two values into a tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    /// Combined error bounds times the configured factor, floored at the
    /// rounding level of the working precision.
    CrossCheck,
    /// A quoted value with a fixed number of digits.
    Anchor(f64),
    /// Exact algebra: 2^{−(bits − slack)} relative to the larger side.
    WorkingPrecision { slack_bits: u32 },
}

/// The two sides of a check. `discrepancy` overrides |lhs − rhs| when a
/// check compares more than two routes; `extra_error` adds their bounds.
pub struct Evaluation {
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
    pub discrepancy: Option<f64>,
    pub extra_error: f64,
}

impl Evaluation {
    pub fn pair(lhs: SeriesValue, rhs: SeriesValue) -> Self {
        Evaluation {
            lhs,
            rhs,
            discrepancy: None,
            extra_error: 0.0,
        }
    }

    pub fn anchor(lhs: SeriesValue, quoted: &str) -> Self {
        let v = Float::with_val(lhs.value.prec(), Float::parse(quoted).expect("quoted value"));
        Evaluation::pair(lhs, SeriesValue::exact(v))
    }
}

type EvalFn = Box<dyn Fn(&PrecisionContext) -> NumResult<Evaluation> + Send + Sync>;

/// A registry entry: what to compare and how strictly.
pub struct IdentityCheck {
    pub id: String,
    pub equation_refs: Vec<String>,
    pub lhs_route: String,
    pub rhs_route: String,
    pub tolerance: Tolerance,
    eval: EvalFn,
}

impl IdentityCheck {
    pub fn new<F>(id: impl Into<String>, refs: &[&str], lhs: impl Into<String>, rhs: impl Into<String>, tolerance: Tolerance, eval: F) -> Self
    where
        F: Fn(&PrecisionContext) -> NumResult<Evaluation> + Send + Sync + 'static,
    {
        IdentityCheck {
            id: id.into(),
            equation_refs: refs.iter().map(|s| s.to_string()).collect(),
            lhs_route: lhs.into(),
            rhs_route: rhs.into(),
            tolerance,
            eval: Box::new(eval),
        }
    }

    pub fn evaluate(&self, ctx: &PrecisionContext) -> NumResult<Evaluation> {
        (self.eval)(ctx)
    }

    /// Runs the check and renders the record.
    pub fn run(&self, config: &RunConfig) -> IdentityRecord {
        let ctx = config.context();
        let bits = ctx.precision_bits;
        let mut rec = IdentityRecord {
            id: self.id.clone(),
            equation_refs: self.equation_refs.clone(),
            lhs_route: self.lhs_route.clone(),
            rhs_route: self.rhs_route.clone(),
            tolerance: String::new(),
            verdict: Verdict::Fail,
            lhs_value: String::new(),
            rhs_value: String::new(),
            discrepancy: String::new(),
            note: None,
        };
        let e = match self.evaluate(&ctx) {
            Ok(e) => e,
            Err(err) => {
                rec.tolerance = fmt_extended(config.override_for(&self.id).unwrap_or(f64::NAN));
                rec.verdict = match err {
                    NumError::Accuracy { .. } => Verdict::Inconclusive,
                    _ => Verdict::Fail,
                };
                rec.note = Some(err.to_string());
                return rec;
            }
        };
        let prec = e.lhs.value.prec().max(e.rhs.value.prec());
        let d = e
            .discrepancy
            .unwrap_or_else(|| Float::with_val(prec, &e.lhs.value - &e.rhs.value).abs().to_f64());
        let scale = 1.0 + e.lhs.to_f64().abs().max(e.rhs.to_f64().abs());
        let tol = match config.override_for(&self.id) {
            Some(t) => t,
            None => match self.tolerance {
                Tolerance::Anchor(t) => t,
                Tolerance::CrossCheck => {
                    let bounds = e.lhs.error_bound + e.rhs.error_bound + e.extra_error;
                    (config.cross_check_factor * bounds).max(ctx.tol() * scale)
                }
                Tolerance::WorkingPrecision { slack_bits } => (2.0f64).powi(slack_bits as i32 - bits as i32) * scale,
            },
        };
        rec.verdict = if d <= tol {
            Verdict::Pass
        } else if [&e.lhs, &e.rhs].iter().any(|s| s.heuristic && s.error_bound > tol) {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        };
        rec.tolerance = fmt_extended(tol);
        rec.lhs_value = decimal(&e.lhs.value, bits);
        rec.rhs_value = decimal(&e.rhs.value, bits);
        rec.discrepancy = fmt_extended(d);
        rec
    }
}

fn fmt_extended(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.3e}")
    }
}

/// One verified identity as it appears in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    pub equation_refs: Vec<String>,
    pub lhs_route: String,
    pub rhs_route: String,
    pub tolerance: String,
    pub verdict: Verdict,
    pub lhs_value: String,
    pub rhs_value: String,
    pub discrepancy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Checks whose id matches `filter`; an empty selection is an error.
pub fn select<'a>(checks: &'a [IdentityCheck], filter: &str) -> Result<Vec<&'a IdentityCheck>, String> {
    let pat = glob::Pattern::new(filter).map_err(|e| format!("bad filter '{filter}': {e}"))?;
    let chosen: Vec<_> = checks.iter().filter(|c| pat.matches(&c.id)).collect();
    if chosen.is_empty() {
        return Err(format!("no identity matches '{filter}'"));
    }
    Ok(chosen)
}

/// Runs the checks on the rayon pool; records come back in input order.
pub fn run_checks(checks: &[&IdentityCheck], config: &RunConfig) -> Vec<IdentityRecord> {
    checks.par_iter().map(|c| c.run(config)).collect()
}

pub struct VerifyReport {
    pub precision_bits: u32,
    pub filter: String,
    pub timestamp: Option<u64>,
    pub records: Vec<IdentityRecord>,
}

impl VerifyReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::json!({
            "schema": SCHEMA_VERSION,
            "precision_bits": self.precision_bits,
            "filter": self.filter,
            "summary": {
                "pass": self.count(Verdict::Pass),
                "fail": self.count(Verdict::Fail),
                "inconclusive": self.count(Verdict::Inconclusive),
            },
            "records": self.records,
        });
        if let Some(t) = self.timestamp {
            out["timestamp"] = t.into();
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id",
            "equation_refs",
            "lhs_route",
            "rhs_route",
            "tolerance",
            "verdict",
            "lhs_value",
            "rhs_value",
            "discrepancy",
            "note",
        ])
        .expect("in-memory csv");
        for r in &self.records {
            let v = r.verdict.to_string();
            w.write_record([
                r.id.as_str(),
                &r.equation_refs.join(";"),
                &r.lhs_route,
                &r.rhs_route,
                &r.tolerance,
                &v,
                &r.lhs_value,
                &r.rhs_value,
                &r.discrepancy,
                r.note.as_deref().unwrap_or(""),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n",
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Selects, runs and collects in one go.
pub fn verify(config: &RunConfig, timestamp: Option<u64>) -> Result<VerifyReport, String> {
    let all = registry();
    let chosen = select(&all, &config.filter)?;
    Ok(VerifyReport {
        precision_bits: config.precision_bits,
        filter: config.filter.clone(),
        timestamp,
        records: run_checks(&chosen, config),
    })
}
