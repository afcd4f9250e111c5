//! Integrals with floor-function factors and P₁-weighted integrals.
//!
//! Both are split at the integer breakpoints: a head of per-interval
//! Gauss-Legendre integrals, then an Euler-Maclaurin tail built from jets
//! of the interval integral.

use crate::bernoulli::bernoulli_f;
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::jet::Jet;
use crate::quad::{exp_sinh, gauss_legendre, gl_nodes, gl_order, tanh_sinh};
use crate::summation::em_boundary;
use rug::Float;

/// Smooth function that can be evaluated on jets.
pub type SmoothFn<'a> = dyn Fn(&Jet) -> Jet + Sync + 'a;

/// `P₁(t) = t − ⌊t⌋ − 1/2`.
pub fn periodized_bernoulli(t: &Float) -> Float {
    let p = t.prec();
    let fl = Float::with_val(p, t.floor_ref());
    Float::with_val(p, t - &fl) - 0.5f64
}

/// Evaluate a jet function at a plain point.
pub fn eval0(f: &SmoothFn<'_>, x: &Float) -> Float {
    f(&Jet::constant(x.prec(), x, 0)).c[0].clone()
}

/// An integrand `h(u) · ln((x_k + 1)/(u + 1))` on `[x_k, x_k + 1)`,
/// `x_k = domain_start + k`; without the floor factor it is just `h(u)`.
pub struct FloorIntegrand<'a> {
    pub smooth_part: Box<SmoothFn<'a>>,
    pub has_floor: bool,
    pub domain_start: Float,
}

impl<'a> FloorIntegrand<'a> {
    pub fn new<F>(h: F, domain_start: Float) -> Self
    where
        F: Fn(&Jet) -> Jet + Sync + 'a,
    {
        FloorIntegrand {
            smooth_part: Box::new(h),
            has_floor: true,
            domain_start,
        }
    }
}

/// Number of head intervals before switching to the asymptotic tail.
pub fn tail_start(prec: u32, extra: usize) -> usize {
    ((0.3 * prec as f64) as usize).max(32) + extra
}

fn em_order(prec: u32) -> usize {
    ((prec as usize) / 4).max(24)
}

/// `u ln(1 + 1/u) − 1`, accurate for large u.
fn unit_log_defect(u: &Float) -> Float {
    let p = u.prec();
    if u.to_f64() > 256.0 {
        let inv = Float::with_val(p, u.recip_ref());
        let mut s = Float::new(p);
        let mut pw = inv.clone();
        let eps = Float::with_val(p, 1) >> p;
        for m in 1..4 * p {
            let t = Float::with_val(p, &pw / (m + 1));
            if m % 2 == 1 {
                s -= &t;
            } else {
                s += &t;
            }
            if t < eps {
                break;
            }
            pw *= &inv;
        }
        s
    } else {
        let inv = Float::with_val(p, u.recip_ref());
        Float::with_val(p, inv.ln_1p_ref()) * u - 1u32
    }
}

/// ∫ of a floor integrand from `domain_start` to ∞.
pub fn integrate_floor_split(f: &FloorIntegrand<'_>, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    let r = floor_integral_raw(f, 0, ctx);
    if r.error_bound > ctx.quad_tolerance.max(ctx.series_tolerance) {
        return Err(NumError::accuracy("floor integral tail did not converge", &r.value, r.error_bound));
    }
    Ok(r)
}

/// As [`integrate_floor_split`] but never fails; `extra` adds head intervals.
pub fn floor_integral_raw(f: &FloorIntegrand<'_>, extra: usize, ctx: &PrecisionContext) -> SeriesValue {
    let prec = ctx.work();
    let tol = ctx.quad_tolerance;
    let h = &f.smooth_part;
    let start = Float::with_val(prec, &f.domain_start);
    if !f.has_floor {
        let g = |u: &Float| eval0(h.as_ref(), u);
        return exp_sinh(g, &start, prec, tol);
    }
    let kmax = tail_start(prec, extra);
    let mut head = Float::new(prec);
    let mut err = 0.0;
    let mut evals = 0;
    for k in 0..kmax {
        let xk = Float::with_val(prec, &start + k as u32);
        let xk1 = Float::with_val(prec, &xk + 1u32);
        let lx = Float::with_val(prec, xk1.ln_ref());
        let g = |u: &Float| {
            let u1 = Float::with_val(prec, u + 1u32);
            eval0(h.as_ref(), u) * (Float::with_val(prec, &lx - u1.ln()))
        };
        let r = gauss_legendre(&g, &xk, &xk1, prec, tol / (4 * kmax) as f64);
        head += &r.value;
        err += r.error_bound;
        evals += r.terms_used;
    }
    let xk = Float::with_val(prec, &start + kmax as u32);
    let order = em_order(prec);

    // jet in x of I(x) = ∫_0^1 h(x+s)[ln(x+1) − ln(x+s+1)] ds
    let n = gl_order(prec);
    let nodes = gl_nodes(n, prec);
    let x = Jet::var(prec, &xk, order);
    let lnx1 = x.add_scalar(&Float::with_val(prec, 1)).ln();
    let mut ij = Jet::constant(prec, &Float::new(prec), order);
    let half = Float::with_val(prec, 0.5);
    let mut add_node = |s: &Float, w: &Float| {
        let u = x.add_scalar(s);
        let lu1 = u.add_scalar(&Float::with_val(prec, 1)).ln();
        let v = &h(&u) * &(&lnx1 - &lu1);
        ij = &ij + &v.scale(w);
    };
    for (t, w) in nodes.iter() {
        let wh = Float::with_val(prec, w / 2u32);
        let s1 = Float::with_val(prec, &half + Float::with_val(prec, t / 2u32));
        add_node(&s1, &wh);
        if !t.is_zero() {
            let s2 = Float::with_val(prec, &half - Float::with_val(prec, t / 2u32));
            add_node(&s2, &wh);
        }
    }
    let (bnd, bnd_err) = em_boundary(&ij);

    // ∫_{x_K}^∞ I = ∫_{x_K}^{x_K+1} h W + ∫_{x_K+1}^∞ h (u ln(1+1/u) − 1)
    let xk1 = Float::with_val(prec, &xk + 1u32);
    let lxk1 = Float::with_val(prec, xk1.ln_ref());
    let wfun = |u: &Float| {
        let u1 = Float::with_val(prec, u + 1u32);
        let wv = (Float::with_val(prec, u1.ln_ref()) - &lxk1) * &xk1 - Float::with_val(prec, u - &xk);
        eval0(h.as_ref(), u) * wv
    };
    let near = gauss_legendre(&wfun, &xk, &xk1, prec, tol / 4.0);
    // in ln u, so integrands with mass far out (powers of ln u) stay resolved
    let far_fn = |v: &Float| {
        let u = Float::with_val(prec, v.exp_ref());
        eval0(h.as_ref(), &u) * unit_log_defect(&u) * &u
    };
    let far = exp_sinh(far_fn, &lxk1, prec, tol / 4.0);

    let value = head + bnd + &near.value + &far.value;
    let total_err = err + bnd_err + near.error_bound + far.error_bound;
    SeriesValue::new(value, total_err, evals + near.terms_used + far.terms_used, Method::Combined)
}

/// ∫_{start}^∞ P₁(x) F(x) dx for integer `start` and F smooth and decaying.
pub fn p1_integral(f: &SmoothFn<'_>, start: i64, extra: usize, ctx: &PrecisionContext) -> SeriesValue {
    p1_integral_range(f, start, None, extra, ctx)
}

/// ∫ P₁ F over [start, end) (or [start, ∞) when `end` is `None`).
pub fn p1_integral_range(
    f: &SmoothFn<'_>,
    start: i64,
    end: Option<i64>,
    extra: usize,
    ctx: &PrecisionContext,
) -> SeriesValue {
    let prec = ctx.work();
    let tol = ctx.quad_tolerance;
    let kmax = match end {
        Some(e) => (e - start).max(0) as usize,
        None => tail_start(prec, extra),
    };
    let mut head = Float::new(prec);
    let mut err = 0.0;
    let mut evals = 0;
    for k in 0..kmax {
        let a = Float::with_val(prec, start + k as i64);
        let b = Float::with_val(prec, &a + 1u32);
        let mid = Float::with_val(prec, &a + 0.5f64);
        let g = |x: &Float| eval0(f, x) * Float::with_val(prec, x - &mid);
        let r = gauss_legendre(&g, &a, &b, prec, tol / (4 * kmax.max(1)) as f64);
        head += &r.value;
        err += r.error_bound;
        evals += r.terms_used;
    }
    if end.is_some() {
        return SeriesValue::new(head, err, evals, Method::Quadrature);
    }
    // ∫_K^∞ P₁ F = −Σ_r B_{2r}/((2r)(2r−1)) c_{2r−2}
    let k = Float::with_val(prec, start + kmax as i64);
    let order = em_order(prec);
    let jet = f(&Jet::var(prec, &k, order));
    let mut tail = Float::new(prec);
    let mut last = f64::INFINITY;
    let mut terr = 0.0;
    let mut r = 1;
    while 2 * r - 2 <= jet.order() {
        let t = bernoulli_f(2 * r, prec) * &jet.c[2 * r - 2] / ((2 * r) * (2 * r - 1)) as u32;
        let m = t.to_f64().abs();
        if m > last && r > 2 {
            terr = last;
            break;
        }
        tail -= &t;
        last = m;
        terr = m;
        r += 1;
    }
    SeriesValue::new(head + tail, err + terr, evals, Method::Combined)
}

/// Components of Σ_{k≥start} f(k) = ∫ f + f(start)/2 + ∫ P₁ f′.
#[derive(Clone, Debug)]
pub struct EmSum {
    pub total: SeriesValue,
    pub integral: SeriesValue,
    pub half_term: Float,
    pub p1_part: SeriesValue,
}

/// Euler-Maclaurin with the remainder integral kept exact (quadrature).
///
/// `f` must decay fast enough for ∫_start^∞ f to converge.
pub fn euler_maclaurin_sum(
    f: &SmoothFn<'_>,
    f_deriv: &SmoothFn<'_>,
    start: i64,
    ctx: &PrecisionContext,
) -> NumResult<EmSum> {
    let prec = ctx.work();
    let a = Float::with_val(prec, start);
    let g = |x: &Float| eval0(f, x);
    let integral = exp_sinh(g, &a, prec, ctx.quad_tolerance);
    let half_term = eval0(f, &a) / 2u32;
    let p1_part = p1_integral(f_deriv, start, 0, ctx);
    let total = integral
        .add(&p1_part)
        .add(&SeriesValue::exact(half_term.clone()))
        .with_method(Method::EulerMaclaurin);
    if total.error_bound > ctx.quad_tolerance * 16.0 {
        return Err(NumError::accuracy("Euler-Maclaurin pieces did not converge", &total.value, total.error_bound));
    }
    Ok(EmSum {
        total,
        integral,
        half_term,
        p1_part,
    })
}

/// Plain ∫_a^b of a jet function by tanh-sinh.
pub fn integrate_jetfn(f: &SmoothFn<'_>, a: &Float, b: &Float, ctx: &PrecisionContext) -> SeriesValue {
    let prec = ctx.work();
    tanh_sinh(|x: &Float| eval0(f, x), a, b, prec, ctx.quad_tolerance)
}
