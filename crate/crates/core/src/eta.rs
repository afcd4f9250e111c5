//! Laurent coefficients η_k of −ζ′/ζ about s = 1:
//! −ζ′/ζ(s) = 1/(s−1) + Σ_k η_k (s−1)^k.

use crate::bernoulli::{binomial, factorial, factorial_f};
use crate::binomial::SGammaResult;
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::jet::Jet;
use crate::report::decimal;
use crate::sieve::VonMangoldtTable;
use crate::special::zeta::hurwitz_zeta_jet;
use crate::stieltjes::{GammaRoute, StieltjesTable};
use crate::summation::{cvz_alternating, cvz_terms};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EtaRoute {
    #[serde(rename = "limit-eq118")]
    Limit,
    #[serde(rename = "recurrence-from-gamma")]
    Recurrence,
}

impl EtaRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            EtaRoute::Limit => "limit-eq118",
            EtaRoute::Recurrence => "recurrence-from-gamma",
        }
    }
}

pub const MIN_CUTOFF: usize = 100;

fn check_cutoff(n: usize) -> NumResult<()> {
    if n < MIN_CUTOFF {
        return Err(NumError::Domain(format!("cutoff N must be at least {MIN_CUTOFF}")));
    }
    Ok(())
}

/// (−1)^k/k! [Σ_{m≤N} Λ(m) ln^k m / m − ln^{k+1} N/(k+1)] over a sieve of
/// length N. The error estimate is the change since N/2 (heuristic).
pub fn eta_limit_table(k: u32, sieve: &VonMangoldtTable, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    let n = sieve.len();
    check_cutoff(n)?;
    let prec = ctx.work();
    let half = n / 2;
    let mut s = Float::new(prec);
    let mut s_half = Float::new(prec);
    for (m, p) in sieve.prime_powers() {
        if m > n {
            break;
        }
        let lp = Float::with_val(prec, p).ln();
        let lm = Float::with_val(prec, m).ln();
        s += lp * Float::with_val(prec, (&lm).pow(k)) / m as u32;
        if m <= half {
            s_half.clone_from(&s);
        }
    }
    let bracket = |sum: &Float, cut: usize| {
        let l = Float::with_val(prec, cut).ln();
        let lead = Float::with_val(prec, (&l).pow(k + 1)) / (k + 1);
        let v = Float::with_val(prec, sum - lead) / factorial_f(k, prec);
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    };
    let v = bracket(&s, n);
    let vh = bracket(&s_half, half);
    let err = Float::with_val(prec, &v - &vh).abs().to_f64();
    Ok(SeriesValue::new(v, err, n, Method::DirectSum))
}

/// [`eta_limit_table`] with a fresh sieve of length `n`.
pub fn eta_limit(k: u32, n: usize, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    check_cutoff(n)?;
    eta_limit_table(k, &VonMangoldtTable::new(n), ctx)
}

/// The Laurent data of (s−1)ζ(s) = Σ F_i (s−1)^i: F_0 = 1 and
/// F_{i+1} = (−1)^i γ_i / i!.
fn laurent_factor(gammas: &[SeriesValue], prec: u32) -> (Vec<Float>, Vec<f64>) {
    let mut f = vec![Float::with_val(prec, 1)];
    let mut e = vec![0.0];
    for (i, g) in gammas.iter().enumerate() {
        let w = Rational::from((1, factorial(i as u32)));
        let v = Float::with_val(prec, &g.value * &w);
        e.push(g.error_bound * w.to_f64());
        f.push(if i % 2 == 0 { v } else { -v });
    }
    (f, e)
}

/// η_0 … η_{n−1} from γ_0 … γ_{n−1} by the power-series quotient
/// −F′/F, with first-order error propagation.
pub fn eta_series_from_gammas(gammas: &[SeriesValue], prec: u32) -> Vec<SeriesValue> {
    let n = gammas.len();
    let (f, fe) = laurent_factor(gammas, prec);
    let mut q: Vec<Float> = Vec::with_capacity(n);
    let mut qe: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = Float::with_val(prec, &f[k + 1] * (k as u32 + 1));
        let mut e = fe[k + 1] * (k + 1) as f64;
        for i in 1..=k {
            v -= Float::with_val(prec, &f[i] * &q[k - i]);
            e += f[i].to_f64().abs() * qe[k - i] + fe[i] * q[k - i].to_f64().abs();
        }
        q.push(v);
        qe.push(e);
    }
    q.into_iter()
        .zip(qe)
        .map(|(v, e)| SeriesValue::new(-v, e + crate::context::ulp_of(&Float::with_val(prec, 1)), n, Method::ClosedForm).rigorous())
        .collect()
}

/// η_k from a table holding γ_0 … γ_k.
pub fn eta_from_gamma(k: u32, table: &StieltjesTable, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if table.a != 1 {
        return Err(NumError::Dependency("η needs the Stieltjes table at a = 1".into()));
    }
    let gammas = (0..=k).map(|i| table.require(i).cloned()).collect::<NumResult<Vec<_>>>()?;
    let mut etas = eta_series_from_gammas(&gammas, ctx.work());
    Ok(etas.pop().expect("k + 1 entries"))
}

/// max_k |Σ_i F_i Q_{k−i} − F′_k| for k < len, with Q = −η: the quotient
/// multiplied back against (s−1)ζ(s).
pub fn laurent_inverse_residual(etas: &[SeriesValue], gammas: &[SeriesValue], prec: u32) -> f64 {
    let (f, _) = laurent_factor(gammas, prec);
    let mut worst: f64 = 0.0;
    for k in 0..etas.len().min(gammas.len()) {
        let mut s = Float::new(prec);
        for i in 0..=k {
            s -= Float::with_val(prec, &f[i] * &etas[k - i].value);
        }
        let target = Float::with_val(prec, &f[k + 1] * (k as u32 + 1));
        worst = worst.max(Float::with_val(prec, s - target).abs().to_f64());
    }
    worst
}

#[derive(Clone, Debug)]
pub struct EtaEntry {
    pub k: u32,
    pub value: SeriesValue,
    pub route: EtaRoute,
}

#[derive(Clone, Debug)]
pub struct EtaTable {
    pub entries: Vec<EtaEntry>,
}

impl EtaTable {
    /// η_0 … η_kmax by Laurent division of a Stieltjes table.
    pub fn from_gamma(kmax: u32, table: &StieltjesTable, ctx: &PrecisionContext) -> NumResult<Self> {
        if table.a != 1 {
            return Err(NumError::Dependency("η needs the Stieltjes table at a = 1".into()));
        }
        let gammas = (0..=kmax).map(|i| table.require(i).cloned()).collect::<NumResult<Vec<_>>>()?;
        let entries = eta_series_from_gammas(&gammas, ctx.work())
            .into_iter()
            .enumerate()
            .map(|(k, value)| EtaEntry {
                k: k as u32,
                value,
                route: EtaRoute::Recurrence,
            })
            .collect();
        Ok(EtaTable { entries })
    }

    /// Builds its own Stieltjes table from the limit oracle.
    pub fn build(kmax: u32, ctx: &PrecisionContext) -> NumResult<Self> {
        let one = Float::with_val(ctx.work(), 1);
        let t = StieltjesTable::build(&one, 0..=kmax, GammaRoute::LimitOracle, ctx)?;
        EtaTable::from_gamma(kmax, &t, ctx)
    }

    /// η_0 … η_kmax from the arithmetic limit at cutoff `n`.
    pub fn from_limit(kmax: u32, n: usize, ctx: &PrecisionContext) -> NumResult<Self> {
        check_cutoff(n)?;
        let sieve = VonMangoldtTable::new(n);
        let entries = (0..=kmax)
            .map(|k| {
                Ok(EtaEntry {
                    k,
                    value: eta_limit_table(k, &sieve, ctx)?,
                    route: EtaRoute::Limit,
                })
            })
            .collect::<NumResult<Vec<_>>>()?;
        Ok(EtaTable { entries })
    }

    pub fn get(&self, k: u32) -> Option<&SeriesValue> {
        self.entries.iter().find(|e| e.k == k).map(|e| &e.value)
    }

    pub fn require(&self, k: u32) -> NumResult<&SeriesValue> {
        self.get(k).ok_or_else(|| NumError::Dependency(format!("η_{k} missing from table")))
    }

    pub fn to_json(&self, bits: u32) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "k": e.k,
                    "value": decimal(&e.value.value, bits),
                    "error": format!("{:e}", e.value.error_bound),
                    "route": e.route.as_str(),
                })
            })
            .collect();
        serde_json::json!({ "entries": entries })
    }
}

/// (ζ′/ζ)^{(j)}(s) for real s > 1, from an s-jet of ζ.
pub fn zeta_log_derivative(j: u32, s: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *s <= 1 {
        return Err(NumError::Domain("ζ′/ζ series needs s > 1".into()));
    }
    let prec = ctx.work();
    let one = Float::with_val(prec, 1);
    let sj = Jet::var(prec, &Float::with_val(prec, s), j as usize + 1);
    let (z, err) = hurwitz_zeta_jet(&sj, &one);
    let l = z.ln();
    let v = factorial_f(j + 1, prec) * &l.c[j as usize + 1];
    let scale = factorial_f(j + 1, prec).to_f64();
    Ok(SeriesValue::new(v, err * scale, 0, Method::EulerMaclaurin))
}

/// (−1)^{j+1} Σ_{k≤K} Λ(k) ln^j k / k^s over a sieve, with the tail
/// bounded by ∫_K^∞ ln^{j+1}x x^{−s} dx (heuristic outside s − 1 ≫ j/ln K).
pub fn zeta_log_derivative_dirichlet(j: u32, s: &Float, sieve: &VonMangoldtTable, prec: u32) -> SeriesValue {
    let mut sum = Float::new(prec);
    for (k, p) in sieve.prime_powers() {
        let lp = Float::with_val(prec, p).ln();
        let lk = Float::with_val(prec, k).ln();
        let kp = Float::with_val(prec, -Float::with_val(prec, &lk * s)).exp();
        sum += lp * Float::with_val(prec, (&lk).pow(j)) * kp;
    }
    let kf = sieve.len() as f64;
    let sf = s.to_f64();
    let tail = kf.ln().powi(j as i32 + 1) * kf.powf(1.0 - sf) / (sf - 1.0);
    let v = if j % 2 == 0 { -sum } else { sum };
    SeriesValue::new(v, tail, sieve.len(), Method::DirectSum)
}

/// C₁ = −(1/j!) Σ_{m≥2} (−1)^m (ζ′/ζ)^{(j)}(m)/m, accelerated by CVZ.
pub fn prop6_c1(j: u32, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    let prec = ctx.work();
    let n = cvz_terms(prec);
    let mut terms = Vec::with_capacity(n);
    let mut err = 0.0;
    for i in 0..n {
        let m = i as u32 + 2;
        let d = zeta_log_derivative(j, &Float::with_val(prec, m), ctx)?;
        err += d.error_bound / m as f64;
        terms.push(d.value / m);
    }
    let s = cvz_alternating(|i| terms[i].clone(), n, prec);
    let w = factorial_f(j, prec);
    let v = -Float::with_val(prec, &s.value / &w);
    Ok(SeriesValue::new(v, (s.error_bound + err) / w.to_f64(), n, Method::Accelerated))
}

/// C₂(N) = (−1)^j/j! [Σ_{k=2}^N Λ(k) ln^j k ln(1 + 1/k) − ln^{j+1}N/(j+1)].
pub fn prop6_c2(j: u32, sieve: &VonMangoldtTable, prec: u32) -> SeriesValue {
    let n = sieve.len();
    let mut s = Float::new(prec);
    for (k, p) in sieve.prime_powers() {
        let lp = Float::with_val(prec, p).ln();
        let lk = Float::with_val(prec, k).ln();
        let step = Float::with_val(prec, Float::with_val(prec, k).recip_ref()).ln_1p();
        s += lp * Float::with_val(prec, (&lk).pow(j)) * step;
    }
    let l = Float::with_val(prec, n).ln();
    let v = (s - Float::with_val(prec, (&l).pow(j + 1)) / (j + 1)) / factorial_f(j, prec);
    let v = if j % 2 == 0 { v } else { -v };
    SeriesValue::new(v, f64::NAN, n, Method::DirectSum)
}

/// The two contributions to η_j: the accelerated ζ′/ζ series and the
/// arithmetic bracket at cutoff N.
#[derive(Clone, Debug)]
pub struct Prop6 {
    pub j: u32,
    pub cutoff: usize,
    pub c1: SeriesValue,
    pub c2: SeriesValue,
    pub total: Float,
    pub eta_reference: SeriesValue,
}

impl Prop6 {
    /// |C₁ + C₂(N) − η_j|.
    pub fn residual(&self) -> f64 {
        Float::with_val(self.total.prec(), &self.total - &self.eta_reference.value)
            .abs()
            .to_f64()
    }
}

pub fn prop6_decomposition(j: u32, n: usize, ctx: &PrecisionContext) -> NumResult<Prop6> {
    check_cutoff(n)?;
    let prec = ctx.work();
    let c1 = prop6_c1(j, ctx)?;
    let sieve = VonMangoldtTable::new(n);
    let c2 = prop6_c2(j, &sieve, prec);
    let total = Float::with_val(prec, &c1.value + &c2.value);
    let eta_reference = EtaTable::build(j, ctx)?.require(j)?.clone();
    Ok(Prop6 {
        j,
        cutoff: n,
        c1,
        c2,
        total,
        eta_reference,
    })
}

/// S₂(n) = −Σ_{m=1}^n C(n,m) η_{m−1}, split as S_γ(n) + S_Λ(n).
#[derive(Clone, Debug)]
pub struct S2Record {
    pub n: u32,
    pub s2: SeriesValue,
    pub s_gamma: SeriesValue,
    pub s_lambda: SeriesValue,
    /// Σ (−1)^m C(n,m) |η_{m−1}|, the absolute-value form.
    pub absolute_form: Float,
    /// Whether the absolute-value form reproduces S₂(n) for this n.
    pub absolute_form_matches: bool,
}

pub fn s2_sum(n: u32, etas: &EtaTable, sgamma: &SGammaResult, ctx: &PrecisionContext) -> NumResult<S2Record> {
    if n == 0 {
        return Err(NumError::Domain("S₂(n) needs n ≥ 1".into()));
    }
    if sgamma.n != n {
        return Err(NumError::Dependency(format!("S_γ({}) given for S₂({n})", sgamma.n)));
    }
    let prec = ctx.work();
    let mut s = Float::new(prec);
    let mut abs_form = Float::new(prec);
    let mut err = 0.0;
    for m in 1..=n {
        let e = etas
            .entries
            .iter()
            .find(|e| e.k == m - 1 && e.route == EtaRoute::Recurrence)
            .map(|e| &e.value)
            .ok_or_else(|| NumError::Dependency(format!("recurrence-route η_{} missing", m - 1)))?;
        let c = binomial(n, m);
        let t = Float::with_val(prec, &e.value * &c);
        err += e.error_bound * c.to_f64();
        s -= &t;
        let a = t.abs();
        if m % 2 == 0 {
            abs_form += a;
        } else {
            abs_form -= a;
        }
    }
    let s2 = SeriesValue::new(s, err, n as usize, Method::DirectSum);
    let s_gamma = sgamma.by_definition.clone();
    let s_lambda = s2.sub(&s_gamma);
    let gap = Float::with_val(prec, &abs_form - &s2.value).abs().to_f64();
    Ok(S2Record {
        n,
        absolute_form_matches: gap <= 1e3 * s2.error_bound.max(ctx.tol()),
        absolute_form: abs_form,
        s2,
        s_gamma,
        s_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn route_names() {
        assert_eq!(serde_json::to_string(&EtaRoute::Limit).unwrap(), "\"limit-eq118\"");
        assert_eq!(EtaRoute::Recurrence.as_str(), "recurrence-from-gamma");
    }
}
