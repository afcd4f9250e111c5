//! Double-exponential and Gauss-Legendre quadrature.

use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use rug::float::Constant;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const MAX_LEVEL: u32 = 11;

/// One tanh-sinh node: distance to the nearer endpoint of [-1, 1] and weight.
struct DeNode {
    delta: Float,
    w: Float,
}

type NodeCache = Mutex<HashMap<(u32, u32), Arc<Vec<DeNode>>>>;

fn ts_cache() -> &'static NodeCache {
    static C: OnceLock<NodeCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn ts_tmax(prec: u32) -> f64 {
    let u = (prec as f64 + 24.0) * std::f64::consts::LN_2 / 2.0;
    (2.0 * u / std::f64::consts::PI).asinh()
}

/// New nodes (t >= 0) contributed at `level`; level 0 holds t = 0, 1, 2, ...
fn ts_nodes(prec: u32, level: u32) -> Arc<Vec<DeNode>> {
    if let Some(v) = ts_cache().lock().unwrap().get(&(prec, level)) {
        return v.clone();
    }
    let tmax = ts_tmax(prec);
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let h = Float::with_val(prec, 1) >> level;
    let mut nodes = Vec::new();
    let mut k: u64 = if level == 0 { 0 } else { 1 };
    loop {
        let t = Float::with_val(prec, &h * k);
        if t.to_f64() > tmax {
            break;
        }
        let (sh, ch) = t.clone().sinh_cosh(Float::new(prec));
        let u = Float::with_val(prec, &half_pi * &sh);
        let e2u = Float::with_val(prec, (u.clone() * 2u32).exp_ref());
        let delta = Float::with_val(prec, 2u32 / (e2u + 1u32));
        let cu = u.cosh();
        let w = Float::with_val(prec, &half_pi * &ch) / cu.square();
        nodes.push(DeNode { delta, w });
        k += if level == 0 { 1 } else { 2 };
    }
    let v = Arc::new(nodes);
    ts_cache().lock().unwrap().insert((prec, level), v.clone());
    v
}

fn finite_or_zero(v: Float) -> Float {
    if v.is_finite() {
        v
    } else {
        Float::new(v.prec())
    }
}

fn level_error(diffs: &[f64], floor: f64) -> f64 {
    let n = diffs.len();
    let d1 = diffs[n - 1];
    if n < 2 || d1 == 0.0 {
        return d1.max(floor);
    }
    let d0 = diffs[n - 2];
    let est = if d0 > 0.0 && d1 < d0 { d1 * d1 / d0 } else { d1 };
    est.max(floor).min(d1.max(floor))
}

/// tanh-sinh rule on [a, b]; tolerates integrable endpoint singularities.
///
/// Returns the best estimate even when `tol` is not met; callers decide.
pub fn tanh_sinh<F>(f: F, a: &Float, b: &Float, prec: u32, tol: f64) -> SeriesValue
where
    F: Fn(&Float) -> Float,
{
    let c = Float::with_val(prec, a + b) / 2u32;
    let d = Float::with_val(prec, b - a) / 2u32;
    let mut sum = Float::new(prec);
    let mut abs_sum = 0.0f64;
    let mut evals = 0usize;
    let mut prev: Option<Float> = None;
    let mut diffs = Vec::new();
    let mut best = Float::new(prec);
    for level in 0..=MAX_LEVEL {
        for (i, n) in ts_nodes(prec, level).iter().enumerate() {
            let off = Float::with_val(prec, &d * &n.delta);
            if level == 0 && i == 0 {
                let v = finite_or_zero(f(&c));
                abs_sum += v.to_f64().abs() * n.w.to_f64();
                sum += v * &n.w;
                evals += 1;
                continue;
            }
            let xl = Float::with_val(prec, a + &off);
            let xr = Float::with_val(prec, b - &off);
            let vl = finite_or_zero(f(&xl));
            let vr = finite_or_zero(f(&xr));
            abs_sum += (vl.to_f64().abs() + vr.to_f64().abs()) * n.w.to_f64();
            sum += (vl + vr) * &n.w;
            evals += 2;
        }
        let h = Float::with_val(prec, 1) >> level;
        let est = Float::with_val(prec, &sum * &h) * &d;
        if let Some(p) = &prev {
            diffs.push(Float::with_val(prec, &est - p).abs().to_f64());
        }
        best = est.clone();
        prev = Some(est);
        if level >= 3 {
            let floor = abs_sum * d.to_f64().abs() * (2f64).powi(-(prec as i32)) / (1u64 << level) as f64;
            let err = level_error(&diffs, floor);
            let rel = best.to_f64().abs() * (2f64).powi(-(prec as i32) + 8);
            if err <= tol.max(rel) {
                return SeriesValue::new(best, err, evals, Method::Quadrature);
            }
        }
    }
    let err = level_error(&diffs, 0.0);
    SeriesValue::new(best, err, evals, Method::Quadrature)
}

/// exp-sinh rule on [a, ∞) for integrands decaying at least like a power.
pub fn exp_sinh<F>(f: F, a: &Float, prec: u32, tol: f64) -> SeriesValue
where
    F: Fn(&Float) -> Float,
{
    let ln2 = std::f64::consts::LN_2;
    let umax = (prec as f64 + 40.0) * ln2;
    let t_lo = (-2.0 * umax / std::f64::consts::PI).asinh();
    let t_hi = (2.0 * umax / std::f64::consts::PI).asinh();
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let tiny = (2f64).powi(-(prec as i32 + 40));

    let eval = |t: &Float| -> (Float, f64) {
        let (sh, ch) = t.clone().sinh_cosh(Float::new(prec));
        let eu = Float::with_val(prec, &half_pi * &sh).exp();
        let x = Float::with_val(prec, a + &eu);
        let w = Float::with_val(prec, &half_pi * &ch) * &eu;
        let v = finite_or_zero(f(&x)) * w;
        let m = v.to_f64().abs();
        (v, m)
    };

    let mut sum = Float::new(prec);
    let mut evals = 0usize;
    let mut prev: Option<Float> = None;
    let mut diffs = Vec::new();
    let mut best = Float::new(prec);
    let mut abs_sum = 0.0;
    for level in 0..=MAX_LEVEL {
        let h = Float::with_val(prec, 1) >> level;
        let step: i64 = if level == 0 { 1 } else { 2 };
        let start: i64 = if level == 0 { 0 } else { 1 };
        // walk right from t = 0, then left
        for dir in [1i64, -1i64] {
            let mut k = if dir == 1 { start } else { -start.max(1) };
            if dir == -1 && level == 0 {
                k = -1;
            }
            let mut quiet = 0;
            loop {
                let t = Float::with_val(prec, &h * k);
                let tf = t.to_f64();
                if tf > t_hi || tf < t_lo {
                    break;
                }
                let (v, m) = eval(&t);
                evals += 1;
                abs_sum += m;
                sum += v;
                if m < tiny * abs_sum.max(1e-300) {
                    quiet += 1;
                    if quiet >= 4 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                k += dir * step;
            }
        }
        let est = Float::with_val(prec, &sum * &h);
        if let Some(p) = &prev {
            diffs.push(Float::with_val(prec, &est - p).abs().to_f64());
        }
        best = est.clone();
        prev = Some(est);
        if level >= 3 {
            let floor = abs_sum * (2f64).powi(-(prec as i32)) / (1u64 << level) as f64;
            let err = level_error(&diffs, floor);
            let rel = best.to_f64().abs() * (2f64).powi(-(prec as i32) + 8);
            if err <= tol.max(rel) {
                return SeriesValue::new(best, err, evals, Method::Quadrature);
            }
        }
    }
    let err = level_error(&diffs, 0.0);
    SeriesValue::new(best, err, evals, Method::Quadrature)
}

type GlCache = Mutex<HashMap<(usize, u32), Arc<Vec<(Float, Float)>>>>;

fn gl_cache() -> &'static GlCache {
    static C: OnceLock<GlCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre nodes and weights on [-1, 1] (non-negative nodes only).
pub fn gl_nodes(n: usize, prec: u32) -> Arc<Vec<(Float, Float)>> {
    if let Some(v) = gl_cache().lock().unwrap().get(&(n, prec)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for i in 1..=(n + 1) / 2 {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        let mut dp = Float::new(prec);
        for it in 0..100 {
            // P_n and P_n' by three-term recurrence
            let mut p0 = Float::with_val(prec, 1);
            let mut p1 = x.clone();
            for k in 2..=n {
                let p2 = (Float::with_val(prec, &x * &p1) * (2 * k - 1) as u32 - Float::with_val(prec, &p0 * (k - 1) as u32))
                    / k as u32;
                p0 = p1;
                p1 = p2;
            }
            let x2m1 = Float::with_val(prec, x.square_ref()) - 1u32;
            dp = (Float::with_val(prec, &x * &p1) - &p0) * n as u32 / &x2m1;
            let dx = Float::with_val(prec, &p1 / &dp);
            x -= &dx;
            let small = dx.is_zero() || dx.get_exp().unwrap_or(0) < -(prec as i32) + 2;
            if small && it > 2 {
                break;
            }
        }
        let x2 = Float::with_val(prec, x.square_ref());
        let w = Float::with_val(prec, 2u32) / ((Float::with_val(prec, 1) - x2) * dp.square());
        out.push((x, w));
    }
    let v = Arc::new(out);
    gl_cache().lock().unwrap().insert((n, prec), v.clone());
    v
}

/// Fixed-order Gauss-Legendre rule on [a, b].
pub fn gauss_legendre_fixed<F>(f: &F, a: &Float, b: &Float, n: usize, prec: u32) -> Float
where
    F: Fn(&Float) -> Float,
{
    let c = Float::with_val(prec, a + b) / 2u32;
    let d = Float::with_val(prec, b - a) / 2u32;
    let mut s = Float::new(prec);
    for (x, w) in gl_nodes(n, prec).iter() {
        if x.is_zero() {
            s += f(&c) * w;
            continue;
        }
        let dx = Float::with_val(prec, &d * x);
        let v = f(&Float::with_val(prec, &c + &dx)) + f(&Float::with_val(prec, &c - &dx));
        s += v * w;
    }
    s * d
}

pub fn gl_order(prec: u32) -> usize {
    (prec as usize / 4).max(20)
}

/// Adaptive Gauss-Legendre by bisection; for integrands smooth on [a, b].
pub fn gauss_legendre<F>(f: &F, a: &Float, b: &Float, prec: u32, tol: f64) -> SeriesValue
where
    F: Fn(&Float) -> Float,
{
    let n = gl_order(prec);
    let whole = gauss_legendre_fixed(f, a, b, n, prec);
    gl_refine(f, a, b, whole, n, prec, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn gl_refine<F>(f: &F, a: &Float, b: &Float, whole: Float, n: usize, prec: u32, tol: f64, depth: u32) -> SeriesValue
where
    F: Fn(&Float) -> Float,
{
    let m = Float::with_val(prec, a + b) / 2u32;
    let left = gauss_legendre_fixed(f, a, &m, n, prec);
    let right = gauss_legendre_fixed(f, &m, b, n, prec);
    let both = Float::with_val(prec, &left + &right);
    let diff = Float::with_val(prec, &both - &whole).abs().to_f64();
    let evals = 3 * n;
    let floor = both.to_f64().abs() * (2f64).powi(-(prec as i32) + 4);
    let noise = (both.to_f64().abs() + whole.to_f64().abs()) * (2f64).powi(-(prec as i32) + 16);
    if diff <= tol.max(noise) || depth >= 24 {
        // the halves are far more accurate than the difference suggests once
        // the rule is resolving the integrand
        let err = if diff < 1e-6 { (diff * diff.sqrt()).max(floor) } else { diff };
        return SeriesValue::new(both, err, evals, Method::Quadrature);
    }
    let l = gl_refine(f, a, &m, left, n, prec, tol / 2.0, depth + 1);
    let r = gl_refine(f, &m, b, right, n, prec, tol / 2.0, depth + 1);
    let mut s = l.add(&r);
    s.method = Method::Quadrature;
    s
}

/// Upper limit: a finite point or +∞.
#[derive(Clone, Debug)]
pub enum Upper {
    At(Float),
    Infinity,
}

/// ∫_a^b f, choosing tanh-sinh for finite and exp-sinh for infinite ranges.
///
/// Fails with an accuracy error (carrying the best estimate) when the
/// estimated error exceeds `ctx.quad_tolerance`.
pub fn integrate_adaptive<F>(f: F, a: &Float, b: &Upper, ctx: &PrecisionContext) -> NumResult<SeriesValue>
where
    F: Fn(&Float) -> Float,
{
    let prec = ctx.work();
    let a = Float::with_val(prec, a);
    let tol = ctx.quad_tolerance;
    let r = match b {
        Upper::At(b) => {
            let b = Float::with_val(prec, b);
            if b < a {
                let mut r = tanh_sinh(&f, &b, &a, prec, tol);
                r.value = -r.value;
                r
            } else if b == a {
                SeriesValue::exact(Float::new(prec))
            } else {
                tanh_sinh(&f, &a, &b, prec, tol)
            }
        }
        Upper::Infinity => exp_sinh(&f, &a, prec, tol),
    };
    if !r.value.is_finite() {
        return Err(NumError::Domain("integrand produced a non-finite value".into()));
    }
    if r.error_bound > tol {
        return Err(NumError::accuracy("quadrature did not converge", &r.value, r.error_bound));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_weights_sum_to_two() {
        let v = gl_nodes(21, 192);
        let mut s = Float::new(192);
        for (x, w) in v.iter() {
            s += if x.is_zero() { w.clone() } else { Float::with_val(192, w * 2u32) };
        }
        assert!((s - 2u32).abs().to_f64() < 1e-50);
    }

    #[test]
    fn tanh_sinh_handles_log_endpoint() {
        // ∫_0^1 ln x dx = -1
        let r = tanh_sinh(|x: &Float| Float::with_val(160, x.ln_ref()), &Float::new(160), &Float::with_val(160, 1), 160, 1e-40);
        assert!((r.value + 1u32).abs().to_f64() < 1e-40);
    }

    #[test]
    fn exp_sinh_gamma_integral() {
        // ∫_0^∞ t^3 e^{-t} dt = 6
        let r = exp_sinh(
            |t: &Float| Float::with_val(160, t.clone().square() * t) * Float::with_val(160, (-t.clone()).exp_ref()),
            &Float::new(160),
            160,
            1e-40,
        );
        assert!((r.value - 6u32).abs().to_f64() < 1e-38);
    }
}
