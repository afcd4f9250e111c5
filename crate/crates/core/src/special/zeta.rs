//! Hurwitz zeta function and its s-derivatives for real s > −1.

use crate::bernoulli::{bernoulli_f, factorial_f};
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::floor::p1_integral;
use crate::jet::Jet;
use crate::quad::exp_sinh;
use crate::special::gamma::pi;
use rug::ops::Pow;
use rug::Float;

/// Evaluation route for ζ(s, a).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaRoute {
    /// Direct sum with Euler-Maclaurin tail.
    EulerMaclaurin,
    /// `a^{−s}/2 + a^{1−s}/(s−1) − s ∫_0^∞ P₁(x)(x+a)^{−s−1} dx`.
    P1Integral,
    /// Hermite's integral over `1/(e^{2πy} − 1)`.
    Hermite,
}

fn check_args(s: &Float, a: &Float) -> NumResult<()> {
    if *a <= 0 {
        return Err(NumError::Domain("Hurwitz zeta needs a > 0".into()));
    }
    if *s == 1 {
        return Err(NumError::Pole("ζ(s, a) has a pole at s = 1".into()));
    }
    if *s <= -1 {
        return Err(NumError::Domain("Hurwitz zeta is provided for s > −1 only".into()));
    }
    Ok(())
}

/// ζ(s, a) as a jet in s (coefficient i is ∂_s^i ζ / i!), by Euler-Maclaurin.
///
/// Returns the jet and an estimate of the truncation error of its value.
pub fn hurwitz_zeta_jet(s: &Jet, a: &Float) -> (Jet, f64) {
    let prec = s.prec();
    let ord = s.order();
    let s0 = s.value().to_f64();
    let target = 0.12 * prec as f64 + s0.abs() + 2.0 * ord as f64 + 8.0;
    let af = a.to_f64();
    let n = if af >= target { 0 } else { (target - af).ceil() as u32 };
    let zero = Jet::constant(prec, &Float::new(prec), ord);
    let mut acc = zero.clone();
    for k in 0..n {
        let l = Float::with_val(prec, a + k).ln();
        acc = &acc + &s.scale(&(-l)).exp();
    }
    let x = Float::with_val(prec, a + n);
    let lx = Float::with_val(prec, x.ln_ref());
    let xs = s.scale(&Float::with_val(prec, -&lx)).exp(); // x^{-s}
    let one = Float::with_val(prec, 1);
    // x^{1-s}/(s-1)
    let sm1 = s - &one;
    let integral = (&xs.scale(&x)).div(&sm1);
    acc = &acc + &integral;
    acc = &acc + &xs.scale(&Float::with_val(prec, 0.5));
    // Σ B_{2r}/(2r)! (s)_{2r-1} x^{-s-2r+1}
    let mut poch = s.clone();
    let xinv = Float::with_val(prec, x.recip_ref());
    let xinv2 = Float::with_val(prec, xinv.square_ref());
    let mut xp = xinv.clone();
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    let eps = (2f64).powi(-(prec as i32) - 8);
    for r in 1..200usize {
        if r > 1 {
            let f1 = s.add_scalar(&Float::with_val(prec, 2 * r - 3));
            let f2 = s.add_scalar(&Float::with_val(prec, 2 * r - 2));
            poch = &(&poch * &f1) * &f2;
        }
        let c = bernoulli_f(2 * r, prec) / factorial_f(2 * r as u32, prec) * &xp;
        let t = (&poch * &xs).scale(&c);
        let m = t.c.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        if m > last {
            break;
        }
        acc = &acc + &t;
        last = m;
        err = m;
        if m < eps * acc.c[0].to_f64().abs().max(1e-300) {
            break;
        }
        xp *= &xinv2;
    }
    (acc, err)
}

/// ζ(s, a) by the default (Euler-Maclaurin) route.
pub fn hurwitz_zeta(s: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    hurwitz_zeta_route(s, a, ZetaRoute::EulerMaclaurin, ctx)
}

pub fn hurwitz_zeta_f(s: &Float, a: &Float, prec: u32) -> Float {
    let (j, _) = hurwitz_zeta_jet(&Jet::constant(prec, s, 0), a);
    j.c[0].clone()
}

pub fn hurwitz_zeta_route(s: &Float, a: &Float, route: ZetaRoute, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    check_args(s, a)?;
    let prec = ctx.work();
    let s = Float::with_val(prec, s);
    let a = Float::with_val(prec, a);
    match route {
        ZetaRoute::EulerMaclaurin => {
            let (j, err) = hurwitz_zeta_jet(&Jet::constant(prec, &s, 0), &a);
            let v = j.c[0].clone();
            let e = err + crate::context::ulp_of(&v) * 8.0;
            Ok(SeriesValue::new(v, e, 0, Method::EulerMaclaurin))
        }
        ZetaRoute::P1Integral => {
            let (lead, _) = zeta_leading_terms(&s, &a);
            let sp1 = Float::with_val(prec, &s + 1u32);
            let a2 = a.clone();
            let f = move |x: &Jet| x.add_scalar(&a2).ln().scale(&Float::with_val(x.prec(), -&sp1)).exp();
            let r = p1_integral(&f, 0, 0, ctx);
            let v = lead - Float::with_val(prec, &r.value * &s);
            Ok(SeriesValue::new(v, r.error_bound * s.to_f64().abs(), r.terms_used, Method::Quadrature))
        }
        ZetaRoute::Hermite => {
            let (lead, _) = zeta_leading_terms(&s, &a);
            let two_pi = pi(prec) * 2u32;
            let a2 = a.clone();
            let s2 = s.clone();
            let g = move |y: &Float| {
                let th = Float::with_val(prec, y / &a2).atan();
                let num = Float::with_val(prec, &s2 * &th).sin();
                let r2 = Float::with_val(prec, y.square_ref()) + Float::with_val(prec, a2.square_ref());
                let den = Float::with_val(prec, r2.ln() * &s2 / 2u32).exp();
                let e = Float::with_val(prec, y * &two_pi).exp_m1();
                num / den / e
            };
            let r = exp_sinh(g, &Float::new(prec), prec, ctx.quad_tolerance);
            let v = lead + Float::with_val(prec, &r.value * 2u32);
            Ok(SeriesValue::new(v, 2.0 * r.error_bound, r.terms_used, Method::Quadrature))
        }
    }
}

/// `a^{−s}/2 + a^{1−s}/(s−1)`.
fn zeta_leading_terms(s: &Float, a: &Float) -> (Float, Float) {
    let prec = s.prec();
    let la = Float::with_val(prec, a.ln_ref());
    let as_ = Float::with_val(prec, -Float::with_val(prec, &la * s)).exp();
    let half = Float::with_val(prec, &as_ / 2u32);
    let t2 = Float::with_val(prec, &as_ * a) / Float::with_val(prec, s - 1u32);
    (half + t2, as_)
}

/// ∂^j/∂s^j ζ(s, a) for s > 1.
pub fn hurwitz_zeta_sderiv(j: u32, s: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *s <= 1 {
        return Err(NumError::Domain("s-derivative route needs s > 1".into()));
    }
    if *a <= 0 {
        return Err(NumError::Domain("Hurwitz zeta needs a > 0".into()));
    }
    let prec = ctx.work() + 2 * j;
    let sj = Jet::var(prec, &Float::with_val(prec, s), j as usize);
    let (z, err) = hurwitz_zeta_jet(&sj, &Float::with_val(prec, a));
    let v = Float::with_val(ctx.work(), z.derivative(j as usize));
    let e = err * factorial_f(j, 53).to_f64() + crate::context::ulp_of(&v) * 8.0;
    Ok(SeriesValue::new(v, e, 0, Method::EulerMaclaurin))
}

/// ζ^{(n)}(s) at a = 1 from P₁ integrals over [1, ∞) and the pole term.
pub fn zeta_sderiv_p1(n: u32, s: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *s <= 1 {
        return Err(NumError::Domain("s-derivative route needs s > 1".into()));
    }
    let prec = ctx.work();
    let s = Float::with_val(prec, s);
    let sp1 = Float::with_val(prec, &s + 1u32);
    let kernel = |pow: u32| {
        let sp1 = sp1.clone();
        move |x: &Jet| {
            let l = x.ln();
            let base = l.scale(&Float::with_val(x.prec(), -&sp1)).exp();
            if pow == 0 {
                base
            } else {
                &base * &l.powi(pow as i32)
            }
        }
    };
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let i_hi = p1_integral(&kernel(n), 1, 0, ctx);
    let mut v = -Float::with_val(prec, &i_hi.value * &s);
    let mut err = i_hi.error_bound * s.to_f64().abs();
    if n >= 1 {
        let i_lo = p1_integral(&kernel(n - 1), 1, 0, ctx);
        v += Float::with_val(prec, &i_lo.value * n);
        err += i_lo.error_bound * n as f64;
    }
    let sm1 = Float::with_val(prec, &s - 1u32);
    let pole = factorial_f(n, prec) / Float::with_val(prec, (&sm1).pow(n + 1));
    v += pole;
    if sign < 0 {
        v = -v;
    }
    Ok(SeriesValue::new(v, err, 0, Method::Quadrature))
}
