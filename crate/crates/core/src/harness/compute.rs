//! Tables behind the `compute` command.

use super::{OutputFormat, SCHEMA_VERSION};
use crate::binomial::{s_gamma, s_gamma_bits, s_gamma_definition};
use crate::context::{NumError, PrecisionContext, SeriesValue};
use crate::eta::{eta_limit_table, eta_series_from_gammas, s2_sum, EtaRoute, EtaTable};
use crate::report::decimal;
use crate::sieve::VonMangoldtTable;
use crate::stieltjes::{gamma_limit_oracle, tail_constant, GammaRoute, StieltjesEntry, StieltjesTable};
use rug::Float;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Gamma,
    GammaA,
    C,
    D,
    Eta,
    SGamma,
    S2,
    LogSum,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Gamma,
        Target::GammaA,
        Target::C,
        Target::D,
        Target::Eta,
        Target::SGamma,
        Target::S2,
        Target::LogSum,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Gamma => "gamma",
            Target::GammaA => "gamma-a",
            Target::C => "c",
            Target::D => "d",
            Target::Eta => "eta",
            Target::SGamma => "sgamma",
            Target::S2 => "s2",
            Target::LogSum => "logsum",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Target::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown target '{s}'"))
    }
}

/// Inclusive index range written `lo..hi`, `lo..=hi` or a single `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: u32,
    pub hi: u32,
}

impl IndexRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        IndexRange { lo, hi }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for IndexRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad index '{t}' in range '{s}'"));
        let r = match s.split_once("..") {
            Some((lo, hi)) => IndexRange::new(num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let i = num(s)?;
                IndexRange::new(i, i)
            }
        };
        if r.lo > r.hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(r)
    }
}

/// Parses `0.5`, `2`, `1/3` or `1e-2` at `prec` bits.
pub fn parse_real(s: &str, prec: u32) -> Result<Float, String> {
    let bad = || format!("cannot parse '{s}' as a real number");
    if let Some((p, q)) = s.split_once('/') {
        let p = Float::parse(p.trim()).map_err(|_| bad())?;
        let q = Float::parse(q.trim()).map_err(|_| bad())?;
        let q = Float::with_val(prec, q);
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Float::with_val(prec, p) / q);
    }
    Float::parse(s.trim()).map(|v| Float::with_val(prec, v)).map_err(|_| bad())
}

#[derive(Clone, Debug, Default)]
pub struct ComputeParams {
    pub j: Option<IndexRange>,
    pub k: Option<IndexRange>,
    pub n: Option<IndexRange>,
    pub a: Option<String>,
    /// Sieve cutoff; switches `eta` to the arithmetic limit route.
    pub cutoff: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(i) => (*i).into(),
            Cell::Text(s) => s.clone().into(),
        }
    }
}

/// A computed table. `error` is set when a row failed to reach accuracy;
/// the rows before it are kept.
#[derive(Clone, Debug)]
pub struct Table {
    pub target: Target,
    pub precision_bits: u32,
    pub params: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub error: Option<String>,
}

impl Table {
    fn new(target: Target, ctx: &PrecisionContext, columns: &[&'static str]) -> Self {
        Table {
            target,
            precision_bits: ctx.precision_bits,
            params: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            error: None,
        }
    }

    pub fn complete(&self) -> bool {
        self.error.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: serde_json::Map<String, serde_json::Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                serde_json::Value::Object(m)
            })
            .collect();
        let params: serde_json::Map<String, serde_json::Value> =
            self.params.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect();
        let mut out = serde_json::json!({
            "schema": SCHEMA_VERSION,
            "target": self.target.as_str(),
            "precision_bits": self.precision_bits,
            "params": params,
            "columns": self.columns,
            "complete": self.complete(),
            "entries": entries,
        });
        if let Some(e) = &self.error {
            out["error"] = e.clone().into();
        }
        out
    }

    /// RFC 4180; an incomplete table ends with a `# incomplete:` line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory csv");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::text)).expect("in-memory csv");
        }
        let mut s = String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8");
        if let Some(e) = &self.error {
            s.push_str(&format!("# incomplete: {}\n", e.replace(['\r', '\n'], " ")));
        }
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n",
            OutputFormat::Csv => self.to_csv(),
        }
    }

    fn value_row(&mut self, index: u64, v: &SeriesValue, route: &str) {
        let bits = self.precision_bits;
        self.rows.push(vec![
            Cell::Int(index),
            Cell::Text(decimal(&v.value, bits)),
            Cell::Text(format!("{:e}", v.error_bound)),
            Cell::Text(route.into()),
        ]);
    }
}

/// A bad request, as opposed to a numerical shortfall.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Accuracy failures end the table; anything else is the caller's mistake.
fn settle(table: &mut Table, e: NumError) -> Result<(), UsageError> {
    match e {
        NumError::Accuracy { .. } => {
            table.error = Some(e.to_string());
            Ok(())
        }
        other => Err(UsageError(other.to_string())),
    }
}

fn only(target: Target, p: &ComputeParams, allowed: &[&str]) -> Result<(), UsageError> {
    let given = [
        ("j", p.j.is_some()),
        ("k", p.k.is_some()),
        ("n", p.n.is_some()),
        ("a", p.a.is_some()),
        ("cutoff", p.cutoff.is_some()),
    ];
    for (name, set) in given {
        if set && !allowed.contains(&name) {
            return Err(UsageError(format!("--{name} does not apply to '{target}'")));
        }
    }
    Ok(())
}

fn real_a(p: &ComputeParams, ctx: &PrecisionContext, required: bool) -> Result<Float, UsageError> {
    match &p.a {
        Some(s) => {
            let a = parse_real(s, ctx.work()).map_err(UsageError)?;
            if a <= 0 {
                return Err(UsageError("--a must be positive".into()));
            }
            Ok(a)
        }
        None if required => Err(UsageError("--a is required".into())),
        None => Ok(Float::with_val(ctx.work(), 1)),
    }
}

pub fn compute(target: Target, p: &ComputeParams, ctx: &PrecisionContext) -> Result<Table, UsageError> {
    ctx.validate().map_err(|e| UsageError(e.to_string()))?;
    match target {
        Target::Gamma | Target::GammaA => {
            only(target, p, &["j", "a"])?;
            if target == Target::Gamma && p.a.is_some() {
                return Err(UsageError("'gamma' is at a = 1; use 'gamma-a' with --a".into()));
            }
            let a = real_a(p, ctx, target == Target::GammaA)?;
            let js = p.j.unwrap_or(IndexRange::new(0, 5));
            let mut t = Table::new(target, ctx, &["j", "value", "error", "route"]);
            t.params.push(("a".into(), decimal(&a, ctx.precision_bits)));
            t.params.push(("j".into(), format!("{}..{}", js.lo, js.hi)));
            for j in js.iter() {
                match gamma_limit_oracle(j, &a, ctx) {
                    Ok(v) => t.value_row(j as u64, &v, GammaRoute::LimitOracle.as_str()),
                    Err(e) => {
                        settle(&mut t, e)?;
                        break;
                    }
                }
            }
            Ok(t)
        }
        Target::C | Target::D => {
            only(target, p, &["j", "a"])?;
            if target == Target::C && p.a.is_some() {
                return Err(UsageError("'c' is at a = 1; use 'd' with --a".into()));
            }
            let a = real_a(p, ctx, target == Target::D)?;
            let js = p.j.unwrap_or(IndexRange::new(1, 3));
            if js.lo == 0 {
                return Err(UsageError("tail constants start at j = 1".into()));
            }
            let mut t = Table::new(target, ctx, &["j", "value", "error", "route"]);
            t.params.push(("a".into(), decimal(&a, ctx.precision_bits)));
            t.params.push(("j".into(), format!("{}..{}", js.lo, js.hi)));
            for j in js.iter() {
                match tail_constant(j, &a, ctx) {
                    Ok(v) => t.value_row(j as u64, &v.value, "floor-split"),
                    Err(e) => {
                        settle(&mut t, e)?;
                        break;
                    }
                }
            }
            Ok(t)
        }
        Target::Eta => {
            only(target, p, &["k", "cutoff"])?;
            let ks = p.k.unwrap_or(IndexRange::new(0, 5));
            let mut t = Table::new(target, ctx, &["k", "value", "error", "route"]);
            t.params.push(("k".into(), format!("{}..{}", ks.lo, ks.hi)));
            match p.cutoff {
                Some(n) => {
                    if n < crate::eta::MIN_CUTOFF {
                        return Err(UsageError(format!("--cutoff must be at least {}", crate::eta::MIN_CUTOFF)));
                    }
                    t.params.push(("cutoff".into(), n.to_string()));
                    let sieve = VonMangoldtTable::new(n);
                    for k in ks.iter() {
                        match eta_limit_table(k, &sieve, ctx) {
                            Ok(v) => t.value_row(k as u64, &v, EtaRoute::Limit.as_str()),
                            Err(e) => {
                                settle(&mut t, e)?;
                                break;
                            }
                        }
                    }
                }
                None => {
                    let one = Float::with_val(ctx.work(), 1);
                    let mut gammas = Vec::new();
                    for i in 0..=ks.hi {
                        match gamma_limit_oracle(i, &one, ctx) {
                            Ok(v) => gammas.push(v),
                            Err(e) => {
                                settle(&mut t, e)?;
                                break;
                            }
                        }
                    }
                    let etas = eta_series_from_gammas(&gammas, ctx.work());
                    for (k, v) in etas.iter().enumerate().skip(ks.lo as usize) {
                        t.value_row(k as u64, v, EtaRoute::Recurrence.as_str());
                    }
                }
            }
            Ok(t)
        }
        Target::SGamma => {
            only(target, p, &["n"])?;
            let ns = p.n.unwrap_or(IndexRange::new(1, 10));
            if ns.lo == 0 {
                return Err(UsageError("S_γ(n) needs n ≥ 1".into()));
            }
            let mut t = Table::new(target, ctx, &["n", "value", "error", "shifted"]);
            t.params.push(("n".into(), format!("{}..{}", ns.lo, ns.hi)));
            // one γ table at the precision the largest n needs
            let wide = ctx.with_extra_bits(s_gamma_bits(ns.hi, ctx.precision_bits) - ctx.precision_bits);
            let one = Float::with_val(wide.work(), 1);
            let mut table = StieltjesTable { a: one.clone(), entries: Vec::new() };
            for n in ns.iter() {
                while (table.entries.len() as u32) < n {
                    let j = table.entries.len() as u32;
                    match gamma_limit_oracle(j, &one, &wide) {
                        Ok(value) => table.entries.push(StieltjesEntry { j, value, route: GammaRoute::LimitOracle }),
                        Err(e) => {
                            settle(&mut t, e)?;
                            return Ok(t);
                        }
                    }
                }
                let v = s_gamma_definition(n, &table, &wide).map_err(|e| UsageError(e.to_string()))?;
                let shifted = Float::with_val(wide.work(), &v.value + n);
                t.rows.push(vec![
                    Cell::Int(n as u64),
                    Cell::Text(decimal(&v.value, ctx.precision_bits)),
                    Cell::Text(format!("{:e}", v.error_bound)),
                    Cell::Text(decimal(&shifted, ctx.precision_bits)),
                ]);
            }
            Ok(t)
        }
        Target::S2 => {
            only(target, p, &["n"])?;
            let ns = p.n.unwrap_or(IndexRange::new(1, 5));
            if ns.lo == 0 {
                return Err(UsageError("S₂(n) needs n ≥ 1".into()));
            }
            let mut t = Table::new(target, ctx, &["n", "s2", "error", "s_gamma", "s_lambda"]);
            t.params.push(("n".into(), format!("{}..{}", ns.lo, ns.hi)));
            let etas = match EtaTable::build(ns.hi - 1, ctx) {
                Ok(e) => e,
                Err(e) => {
                    settle(&mut t, e)?;
                    return Ok(t);
                }
            };
            for n in ns.iter() {
                let row = s_gamma(n, false, ctx).and_then(|sg| s2_sum(n, &etas, &sg, ctx));
                match row {
                    Ok(r) => t.rows.push(vec![
                        Cell::Int(n as u64),
                        Cell::Text(decimal(&r.s2.value, ctx.precision_bits)),
                        Cell::Text(format!("{:e}", r.s2.error_bound)),
                        Cell::Text(decimal(&r.s_gamma.value, ctx.precision_bits)),
                        Cell::Text(decimal(&r.s_lambda.value, ctx.precision_bits)),
                    ]),
                    Err(e) => {
                        settle(&mut t, e)?;
                        break;
                    }
                }
            }
            Ok(t)
        }
        Target::LogSum => {
            only(target, p, &[])?;
            let mut t = Table::new(target, ctx, &["variant_id", "value", "error", "terms", "seconds"]);
            logsum_rows(&mut t, ctx)?;
            Ok(t)
        }
    }
}

fn logsum_rows(t: &mut Table, ctx: &PrecisionContext) -> Result<(), UsageError> {
    use crate::binomial::{logsum_variant, LogSumVariantId};
    for id in LogSumVariantId::ALL {
        let start = Instant::now();
        match logsum_variant(id, ctx) {
            Ok(v) => t.rows.push(vec![
                Cell::Text(id.as_str().into()),
                Cell::Text(decimal(&v.value.value, ctx.precision_bits)),
                Cell::Text(format!("{:e}", v.value.error_bound)),
                Cell::Int(v.value.terms_used as u64),
                Cell::Text(format!("{:.3}", start.elapsed().as_secs_f64())),
            ]),
            Err(e) => {
                settle(t, e)?;
                break;
            }
        }
    }
    Ok(())
}

