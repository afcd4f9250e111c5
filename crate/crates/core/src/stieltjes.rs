//! Stieltjes constants γ_j(a), the tail constants d_j(a) (c_j = d_j(1)) and
//! the weighted sums Σ (−1)^{j−1} j d_j / j!.

use crate::bernoulli::{binomial, factorial_f};
use crate::context::{ulp_of, Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::floor::{eval0, floor_integral_raw, p1_integral, FloorIntegrand};
use crate::jet::Jet;
use crate::quad::exp_sinh;
use crate::report::decimal;
use crate::special::gamma::{digamma_f, ln2, pi};
use crate::special::polylog::{polylog_f, polylog_neg_jet};
use crate::special::zeta::hurwitz_zeta_sderiv;
use crate::summation::{cvz_from_terms, cvz_terms, em_boundary};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// How a γ_j(a) table entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaRoute {
    #[serde(rename = "limit-oracle")]
    LimitOracle,
    /// Alternating sum of ζ^{(j)}(m) at a = 1.
    #[serde(rename = "series-eq7")]
    ZetaDerivativeSeries,
    /// Alternating sum of ∂_s^j ζ(m, a) with the polylog correction.
    #[serde(rename = "series-eq8")]
    HurwitzDerivativeSeries,
}

impl GammaRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaRoute::LimitOracle => "limit-oracle",
            GammaRoute::ZetaDerivativeSeries => "series-eq7",
            GammaRoute::HurwitzDerivativeSeries => "series-eq8",
        }
    }
}

fn check_a(a: &Float) -> NumResult<()> {
    if *a <= 0 {
        return Err(NumError::Domain("a must be positive".into()));
    }
    Ok(())
}

fn em_jet_order(prec: u32) -> usize {
    ((prec / 4) as usize).max(24)
}

/// `ln^j(x)/x` on jets.
fn log_power_over(x: &Jet, j: u32) -> Jet {
    &x.ln().powi(j as i32) * &x.recip()
}

/// γ_j(a) from the defining limit, with the sum from N on replaced by its
/// Euler-Maclaurin expansion. N doubles until two estimates agree.
pub fn gamma_limit_oracle(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    check_a(a)?;
    let prec = ctx.work() + 4 * (j + 1);
    let a = Float::with_val(prec, a);
    let order = em_jet_order(prec);
    let tol = ctx.series_tolerance;
    let mut head = Float::new(prec);
    let mut done = 0usize;
    let mut n = 32usize;
    let mut prev: Option<Float> = None;
    while n <= ctx.max_terms {
        for m in done..n {
            let x = Float::with_val(prec, &a + m as u32);
            let l = Float::with_val(prec, x.ln_ref());
            head += Float::with_val(prec, (&l).pow(j)) / &x;
        }
        done = n;
        let x = Float::with_val(prec, &a + n as u32);
        let lx = Float::with_val(prec, x.ln_ref());
        let jet = log_power_over(&Jet::var(prec, &x, order), j);
        let (bnd, bnd_err) = em_boundary(&jet);
        let reg = Float::with_val(prec, (&lx).pow(j + 1)) / (j + 1);
        let est = Float::with_val(prec, &head - &reg) + bnd;
        if let Some(p) = &prev {
            let diff = Float::with_val(prec, &est - p).abs().to_f64();
            if diff < tol / 4.0 {
                let err = diff + bnd_err + ulp_of(&est) * n as f64;
                let v = Float::with_val(ctx.work(), &est);
                return Ok(SeriesValue::new(v, err, n, Method::EulerMaclaurin));
            }
        }
        prev = Some(est);
        n *= 2;
    }
    let best = prev.unwrap_or_else(|| Float::new(prec));
    Err(NumError::accuracy("limit oracle did not stabilize within max_terms", &best, f64::NAN))
}

/// `j! (1 − 2^{−j}) ζ(j+1)`.
fn zeta_correction(j: u32, prec: u32) -> Float {
    let f = Float::with_val(prec, 1) - (Float::with_val(prec, 1) >> j);
    factorial_f(j, prec) * f * Float::with_val(prec, Float::zeta_u(j + 1))
}

/// Σ_{m≥2} (−1)^m (−1)^j ∂_s^j ζ(m, a) / m, accelerated (CVZ).
pub fn alternating_zeta_derivative_sum(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    check_a(a)?;
    let prec = ctx.work();
    let n = cvz_terms(prec + 8);
    let terms: Vec<NumResult<(Float, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let m = Float::with_val(prec, i as u32 + 2);
            let d = hurwitz_zeta_sderiv(j, &m, a, ctx)?;
            let mut v = d.value / (i as u32 + 2);
            if j % 2 == 1 {
                v = -v;
            }
            Ok((v, d.error_bound))
        })
        .collect();
    let mut vals = Vec::with_capacity(n);
    let mut err = 0.0;
    for t in terms {
        let (v, e) = t?;
        err += e;
        vals.push(v);
    }
    let mut s = cvz_from_terms(&vals, prec);
    s.error_bound += err;
    Ok(s)
}

/// γ_j from derivatives of ζ at the integers, the ζ(j+1) term and c_j.
pub fn gamma_series(j: u32, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if j == 0 {
        return Err(NumError::Domain("series route needs j ≥ 1".into()));
    }
    let prec = ctx.work();
    let one = Float::with_val(prec, 1);
    let s = alternating_zeta_derivative_sum(j, &one, ctx)?;
    let c = tail_constant(j, &one, ctx)?;
    let zc = SeriesValue::closed(zeta_correction(j, prec));
    let jc = c.value.scale(&Float::with_val(prec, j));
    Ok(s.sub(&zc).sub(&jc).with_method(Method::Combined))
}

/// `Σ_{ℓ<j} (−1)^ℓ ℓ! C(j−1, ℓ) ln^{j−ℓ−1}(y) Li_{ℓ+2}(−y)`.
fn polylog_block(j: u32, y: &Float, prec: u32) -> Float {
    let ly = Float::with_val(prec, y.ln_ref());
    let my = Float::with_val(prec, -y);
    let mut s = Float::new(prec);
    for l in 0..j {
        let c = factorial_f(l, prec) * Float::with_val(prec, &binomial(j - 1, l));
        let t = c * Float::with_val(prec, (&ly).pow(j - l - 1)) * polylog_f(l + 2, &my, prec);
        if l % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// γ_j(a) from Hurwitz-zeta s-derivatives at the integers, the polylog
/// block, d_j(a) and ln^{j+1} a. For a < 1 the k = 0 term of the
/// m-series is summed in closed form.
pub fn gamma_series_general(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if j == 0 {
        return Err(NumError::Domain("series route needs j ≥ 1".into()));
    }
    check_a(a)?;
    let prec = ctx.work();
    let a = Float::with_val(prec, a);
    let la = Float::with_val(prec, a.ln_ref());
    let s = if a < 1 {
        let a1 = Float::with_val(prec, &a + 1u32);
        let inv = Float::with_val(prec, a.recip_ref());
        let k0 = Float::with_val(prec, (&la).pow(j)) * (Float::with_val(prec, &inv) - inv.ln_1p());
        alternating_zeta_derivative_sum(j, &a1, ctx)?.add(&SeriesValue::closed(k0))
    } else {
        alternating_zeta_derivative_sum(j, &a, ctx)?
    };
    let jf = Float::with_val(prec, j);
    let pb = SeriesValue::closed(polylog_block(j, &a, prec) * &jf);
    let d = tail_constant(j, &a, ctx)?;
    let lj1 = SeriesValue::closed(Float::with_val(prec, (&la).pow(j + 1)));
    let mut r = s.sub(&pb).sub(&d.value.scale(&jf)).sub(&lj1);
    if j % 2 == 1 {
        r = r.sub(&SeriesValue::closed(zeta_correction(j, prec) * 2u32));
    }
    Ok(r.with_method(Method::Combined))
}

/// Route for the tail constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailRoute {
    /// Per-interval quadrature of the floor-log integral.
    FloorSplit,
    /// Closed-form interval integrals (logs and polylogs), summed over k.
    SummationForm,
}

/// d_j(a); c_j when a = 1.
#[derive(Clone, Debug)]
pub struct TailConstant {
    pub j: u32,
    pub a: Float,
    pub value: SeriesValue,
}

type TailKey = (u32, String, u32, u64);

fn tail_cache() -> &'static Mutex<HashMap<TailKey, SeriesValue>> {
    static C: OnceLock<Mutex<HashMap<TailKey, SeriesValue>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// d_j(a) by the floor-split quadrature (memoized per context).
pub fn tail_constant(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<TailConstant> {
    tail_constant_route(j, a, TailRoute::FloorSplit, ctx)
}

pub fn tail_constant_route(j: u32, a: &Float, route: TailRoute, ctx: &PrecisionContext) -> NumResult<TailConstant> {
    if j == 0 {
        return Err(NumError::Domain("tail constants start at j = 1".into()));
    }
    check_a(a)?;
    let prec = ctx.work();
    let a = Float::with_val(prec, a);
    let value = match route {
        TailRoute::FloorSplit => {
            let key = (j, a.to_string_radix(16, None), ctx.precision_bits, ctx.quad_tolerance.to_bits());
            if let Some(v) = tail_cache().lock().unwrap().get(&key) {
                return Ok(TailConstant { j, a, value: v.clone() });
            }
            let f = FloorIntegrand::new(move |x: &Jet| log_power_over(x, j - 1), a.clone());
            let v = floor_integral_raw(&f, 0, ctx);
            let limit = ctx.quad_tolerance.max(ctx.series_tolerance) * (1.0 + v.value.to_f64().abs());
            if v.error_bound > limit {
                return Err(NumError::accuracy("tail constant quadrature did not converge", &v.value, v.error_bound));
            }
            tail_cache().lock().unwrap().insert(key, v.clone());
            v
        }
        TailRoute::SummationForm => tail_constant_summation(j, &a, ctx)?,
    };
    Ok(TailConstant { j, a, value })
}

/// Interval integral ∫_x^{x+1} ln^{j−1}u/u · ln((x+1)/(u+1)) du in closed form:
/// `(ln^j(x+1) − ln^j x) ln(x+1)/j + P(x+1) − P(x)`, P the polylog block.
fn interval_closed(j: u32, x: &Float, prec: u32) -> Float {
    let x1 = Float::with_val(prec, x + 1u32);
    let l0 = Float::with_val(prec, x.ln_ref());
    let l1 = Float::with_val(prec, x1.ln_ref());
    let d = Float::with_val(prec, (&l1).pow(j)) - Float::with_val(prec, (&l0).pow(j));
    d * &l1 / j + polylog_block(j, &x1, prec) - polylog_block(j, x, prec)
}

fn polylog_block_jet(j: u32, y: &Jet) -> Jet {
    let p = y.prec();
    let ly = y.ln();
    let mut s = Jet::constant(p, &Float::new(p), y.order());
    for l in 0..j {
        let c = factorial_f(l, p) * Float::with_val(p, &binomial(j - 1, l));
        let t = (&ly.powi((j - l - 1) as i32) * &polylog_neg_jet(l + 2, y)).scale(&c);
        s = if l % 2 == 0 { &s + &t } else { &s - &t };
    }
    s
}

fn tail_constant_summation(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    let prec = ctx.work();
    let kk = 32u32;
    // interval pieces cancel to O(x^{-2}) of their size; carry extra bits
    let hp = prec + 24;
    let a = Float::with_val(hp, a);
    let mut head = Float::new(hp);
    for k in 0..kk {
        let x = Float::with_val(hp, &a + k);
        let x1 = Float::with_val(hp, &x + 1u32);
        let l0 = Float::with_val(hp, x.ln_ref());
        let l1 = Float::with_val(hp, x1.ln_ref());
        let d = Float::with_val(hp, (&l1).pow(j)) - Float::with_val(hp, (&l0).pow(j));
        head += d * &l1 / j;
    }
    let xk = Float::with_val(hp, &a + kk);
    head += polylog_block(j, &xk, hp) - polylog_block(j, &a, hp);

    let order = em_jet_order(prec);
    let x = Jet::var(hp, &xk, order);
    let x1 = x.add_scalar(&Float::with_val(hp, 1));
    let l0 = x.ln();
    let l1 = x1.ln();
    let t = &(&(&l1.powi(j as i32) - &l0.powi(j as i32)) * &l1).scale(&Float::with_val(hp, j).recip())
        + &(&polylog_block_jet(j, &x1) - &polylog_block_jet(j, &x));
    let (bnd, bnd_err) = em_boundary(&t);

    let g = |u: &Float| {
        let e = u.get_exp().unwrap_or(0).max(0) as u32;
        let p2 = prec + 2 * e + 24;
        Float::with_val(prec, interval_closed(j, &Float::with_val(p2, u), p2))
    };
    let tail = exp_sinh(g, &Float::with_val(prec, &xk), prec, ctx.quad_tolerance);
    let v = Float::with_val(prec, head + bnd + &tail.value);
    let err = bnd_err + tail.error_bound;
    if err > ctx.quad_tolerance.max(ctx.series_tolerance) * (1.0 + v.to_f64().abs()) {
        return Err(NumError::accuracy("summation form of the tail constant did not converge", &v, err));
    }
    Ok(SeriesValue::new(v, err, kk as usize + tail.terms_used, Method::Combined))
}

/// A table of γ_j(a).
#[derive(Clone, Debug)]
pub struct StieltjesEntry {
    pub j: u32,
    pub value: SeriesValue,
    pub route: GammaRoute,
}

#[derive(Clone, Debug)]
pub struct StieltjesTable {
    pub a: Float,
    pub entries: Vec<StieltjesEntry>,
}

impl StieltjesTable {
    /// γ_j(a) for j in `js`. Series routes are used for j ≥ 1 when asked
    /// for; j = 0 always comes from the limit.
    pub fn build(a: &Float, js: std::ops::RangeInclusive<u32>, route: GammaRoute, ctx: &PrecisionContext) -> NumResult<Self> {
        check_a(a)?;
        let js: Vec<u32> = js.collect();
        let rows: Vec<NumResult<StieltjesEntry>> = js
            .par_iter()
            .map(|&j| {
                let r = if j == 0 { GammaRoute::LimitOracle } else { route };
                let value = match r {
                    GammaRoute::LimitOracle => gamma_limit_oracle(j, a, ctx)?,
                    GammaRoute::ZetaDerivativeSeries => {
                        if *a != 1 {
                            return Err(NumError::Domain("the ζ-derivative series is for a = 1".into()));
                        }
                        gamma_series(j, ctx)?
                    }
                    GammaRoute::HurwitzDerivativeSeries => gamma_series_general(j, a, ctx)?,
                };
                Ok(StieltjesEntry { j, value, route: r })
            })
            .collect();
        let entries = rows.into_iter().collect::<NumResult<Vec<_>>>()?;
        Ok(StieltjesTable {
            a: a.clone(),
            entries,
        })
    }

    pub fn get(&self, j: u32) -> Option<&SeriesValue> {
        self.entries.iter().find(|e| e.j == j).map(|e| &e.value)
    }

    pub fn require(&self, j: u32) -> NumResult<&SeriesValue> {
        self.get(j).ok_or_else(|| NumError::Dependency(format!("γ_{j} missing from table")))
    }

    pub fn to_json(&self, bits: u32) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "j": e.j,
                    "value": decimal(&e.value.value, bits),
                    "error": format!("{:e}", e.value.error_bound),
                    "route": e.route.as_str(),
                })
            })
            .collect();
        serde_json::json!({ "a": decimal(&self.a, bits), "entries": entries })
    }
}

/// The three evaluations of Σ_j (−1)^{j−1} j c_j / j!.
#[derive(Clone, Debug)]
pub struct WeightedTailSum {
    /// Abel-summed series over computed c_j.
    pub by_tail_constants: SeriesValue,
    /// Σ ln(k+1)/(k(k+1)) − 2 ln 2.
    pub by_log_sum: SeriesValue,
    /// Closed part plus ∫_1^∞ P₁ f′.
    pub by_euler_maclaurin: SeriesValue,
    /// The ∫_1^∞ P₁(t) f′(t) dt piece on its own.
    pub p1_part: SeriesValue,
}

/// `ln(t+1)/(t(t+1))` and its derivative on jets.
pub fn log_sum_summand(t: &Jet) -> Jet {
    let t1 = t.add_scalar(&Float::with_val(t.prec(), 1));
    (&t1.ln()).div(&(t * &t1))
}

pub fn log_sum_summand_deriv(t: &Jet) -> Jet {
    let p = t.prec();
    let t1 = t.add_scalar(&Float::with_val(p, 1));
    let tt1 = t * &t1;
    // 1/(t(t+1)^2) − ln(t+1)(2t+1)/(t(t+1))^2
    let a = (&tt1 * &t1).recip();
    let two_t1 = t.scale(&Float::with_val(p, 2)).add_scalar(&Float::with_val(p, 1));
    let b = (&(&t1.ln() * &two_t1)).div(&(&tt1 * &tt1));
    &a - &b
}

/// Σ_{k≥K0} φ(k) for a smooth decaying summand: head sum to K, then the
/// integral ∫_K^∞ φ and Euler-Maclaurin boundary terms at K.
pub fn sum_with_em_tail<F>(phi: F, k0: u64, ctx: &PrecisionContext) -> SeriesValue
where
    F: Fn(&Jet) -> Jet + Sync,
{
    let prec = ctx.work();
    let kk = k0 + ((0.15 * prec as f64) as u64).max(24);
    let mut head = Float::new(prec);
    for k in k0..kk {
        head += eval0(&phi, &Float::with_val(prec, k));
    }
    let x = Float::with_val(prec, kk);
    let jet = phi(&Jet::var(prec, &x, em_jet_order(prec)));
    let (bnd, bnd_err) = em_boundary(&jet);
    // differenced summands cancel like powers of u far out; carry the bits
    let far = |u: &Float| {
        let e = u.get_exp().unwrap_or(0).max(0) as u32;
        let p2 = prec + 3 * e + 24;
        Float::with_val(prec, eval0(&phi, &Float::with_val(p2, u)))
    };
    let tail = exp_sinh(far, &x, prec, ctx.quad_tolerance);
    let v = head + bnd + &tail.value;
    SeriesValue::new(v, bnd_err + tail.error_bound, (kk - k0) as usize, Method::EulerMaclaurin)
}

/// Σ_{k≥1} ln(k+1)/(k(k+1)) by direct summation with an Euler-Maclaurin tail.
pub fn log_sum_direct(ctx: &PrecisionContext) -> SeriesValue {
    sum_with_em_tail(log_sum_summand, 1, ctx)
}

/// Σ_j (−1)^{j−1} b_j with b_j = d_j/(j−1)! → −1/2: Abel summation
/// Σ(−1)^{j−1}(b_j + 1/2) − 1/4, the convergent part by CVZ.
fn abel_weighted_sum(a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    let prec = ctx.work();
    let n = cvz_terms(prec);
    let rows: Vec<NumResult<SeriesValue>> = (1..=n as u32)
        .into_par_iter()
        .map(|j| tail_constant(j, a, ctx).map(|t| t.value))
        .collect();
    let mut terms = Vec::with_capacity(n);
    let mut err = 0.0;
    for (i, r) in rows.into_iter().enumerate() {
        let r = r?;
        let f = factorial_f(i as u32, prec);
        err += r.error_bound / f.to_f64();
        terms.push(r.value / f + 0.5f64);
    }
    let mut s = cvz_from_terms(&terms, prec);
    s.value -= 0.25f64;
    s.error_bound += err;
    Ok(s)
}

/// Σ_j (−1)^{j−1} j c_j / j! by its three routes.
pub fn weighted_tail_sum_c(ctx: &PrecisionContext) -> NumResult<WeightedTailSum> {
    let prec = ctx.work();
    let one = Float::with_val(prec, 1);
    let by_tail_constants = abel_weighted_sum(&one, ctx)?;
    let l2 = ln2(prec);
    let two_ln2 = SeriesValue::closed(Float::with_val(prec, &l2 * 2u32));
    let by_log_sum = log_sum_direct(ctx).sub(&two_ln2);
    let p1_part = p1_integral(&log_sum_summand_deriv, 1, 0, ctx);
    // π²/12 + ln²2/2 − 7 ln 2/4
    let closed = pi(prec).square() / 12u32 + Float::with_val(prec, l2.square_ref()) / 2u32
        - Float::with_val(prec, &l2 * 7u32) / 4u32;
    let by_euler_maclaurin = SeriesValue::closed(closed).add(&p1_part);
    Ok(WeightedTailSum {
        by_tail_constants,
        by_log_sum,
        by_euler_maclaurin,
        p1_part,
    })
}

/// Routes for Σ_j (−1)^{j−1} j d_j(a) / j!.
#[derive(Clone, Debug)]
pub struct WeightedTailSumD {
    /// Σ_{k≥1} g(k, a) − (1 + 1/a) ln(a+1) + ln a.
    pub by_g_sum: SeriesValue,
    /// Closed terms plus ∫_1^∞ P₁(t) g′(t, a) dt.
    pub by_euler_maclaurin: SeriesValue,
    /// ∫_0^∞ (t+a)^{−2} ln(([t]+a+1)/(t+a+1)) dt by floor-split quadrature.
    pub by_generating_integral: SeriesValue,
}

fn g_summand(a: &Float) -> impl Fn(&Jet) -> Jet + Sync + '_ {
    move |t: &Jet| {
        let p = t.prec();
        let u = t.add_scalar(&Float::with_val(p, a));
        let um1 = u.add_scalar(&Float::with_val(p, -1));
        (&u.ln()).div(&(&um1 * &u))
    }
}

fn g_summand_deriv(a: &Float) -> impl Fn(&Jet) -> Jet + Sync + '_ {
    // d/dt of ln u/((u−1)u) = [1/u − ln u (2u − 1)/((u−1)u)] / ((u−1)u)
    move |t: &Jet| {
        let p = t.prec();
        let u = t.add_scalar(&Float::with_val(p, a));
        let um1 = u.add_scalar(&Float::with_val(p, -1));
        let q = &um1 * &u;
        let two_u1 = u.scale(&Float::with_val(p, 2)).add_scalar(&Float::with_val(p, -1));
        let inner = &u.recip() - &(&u.ln() * &two_u1).div(&q);
        inner.div(&q)
    }
}

pub fn weighted_tail_sum_d(a: &Float, ctx: &PrecisionContext) -> NumResult<WeightedTailSumD> {
    check_a(a)?;
    let prec = ctx.work();
    let a = Float::with_val(prec, a);
    let a1 = Float::with_val(prec, &a + 1u32);
    let la1 = Float::with_val(prec, a1.ln_ref());
    let la = Float::with_val(prec, a.ln_ref());
    // −(1 + 1/a) ln(a+1) + ln a
    let common = Float::with_val(prec, &la1 * &a1) / &a;
    let common = SeriesValue::closed(la.clone() - common);

    let g = g_summand(&a);
    let by_g_sum = sum_with_em_tail(&g, 1, ctx).add(&common);

    let gd = g_summand_deriv(&a);
    let p1 = p1_integral(&gd, 1, 0, ctx);
    let mut closed = Float::with_val(prec, Float::zeta_u(2));
    closed += Float::with_val(prec, la1.square_ref()) / 2u32;
    closed += polylog_f(2, &Float::with_val(prec, -&a), prec);
    closed += Float::with_val(prec, &la1 / Float::with_val(prec, &a * &a1)) / 2u32;
    let by_euler_maclaurin = SeriesValue::closed(closed).add(&common).add(&p1);

    let f = FloorIntegrand::new(|x: &Jet| x.powi(-2), a.clone());
    let by_generating_integral = floor_integral_raw(&f, 0, ctx);
    let out = WeightedTailSumD {
        by_g_sum,
        by_euler_maclaurin,
        by_generating_integral,
    };
    let worst = [&out.by_g_sum, &out.by_euler_maclaurin, &out.by_generating_integral]
        .iter()
        .map(|v| v.error_bound)
        .fold(0.0, f64::max);
    if worst > 16.0 * ctx.tol().max(ctx.quad_tolerance) {
        let v = &out.by_g_sum.value;
        return Err(NumError::accuracy("weighted d-sum routes did not converge", v, worst));
    }
    Ok(out)
}

/// γ_0(a) = −ψ(a), for cross-checks of the limit oracle.
pub fn gamma0_closed(a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    check_a(a)?;
    Ok(SeriesValue::closed(-digamma_f(a, ctx.work())))
}

