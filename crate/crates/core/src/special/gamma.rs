//! Digamma, polygamma and friends by upward recurrence plus the Stirling-type
//! asymptotic series.

use crate::bernoulli::{bernoulli_f, factorial_f};
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::cx::Cx;
use crate::jet::Jet;
use rug::ops::Pow;
use rug::float::Constant;
use rug::Float;

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

/// Shift point beyond which the asymptotic series reaches `prec` bits.
fn shift_point(prec: u32, extra: u32) -> f64 {
    0.12 * prec as f64 + 10.0 + extra as f64
}

fn shift_count(x: f64, target: f64) -> u32 {
    if x >= target {
        0
    } else {
        (target - x).ceil() as u32
    }
}

pub fn digamma_f(x: &Float, prec: u32) -> Float {
    let n = shift_count(x.to_f64(), shift_point(prec, 0));
    let p = prec + 10 + (32 - n.leading_zeros());
    let x = Float::with_val(p, x);
    let mut head = Float::new(p);
    for i in 0..n {
        head += Float::with_val(p, 1) / Float::with_val(p, &x + i);
    }
    let y = Float::with_val(p, &x + n);
    let mut s = Float::with_val(p, y.ln_ref()) - Float::with_val(p, 1) / (Float::with_val(p, &y * 2u32));
    let y2 = Float::with_val(p, y.square_ref());
    let mut ypow = y2.clone();
    let eps = Float::with_val(p, 1) >> p;
    for k in 1..400usize {
        let t = bernoulli_f(2 * k, p) / (Float::with_val(p, &ypow * (2 * k) as u32));
        s -= &t;
        if t.abs() < eps {
            break;
        }
        ypow *= &y2;
    }
    Float::with_val(prec, s - head)
}

pub fn digamma(x: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *x <= 0 {
        return Err(NumError::Domain("digamma needs x > 0".into()));
    }
    let v = digamma_f(x, ctx.work());
    Ok(SeriesValue::closed(v).with_method(Method::EulerMaclaurin))
}

pub fn polygamma_f(n: u32, x: &Float, prec: u32) -> Float {
    if n == 0 {
        return digamma_f(x, prec);
    }
    let shift = shift_count(x.to_f64(), shift_point(prec, n));
    let p = prec + 10 + (32 - shift.leading_zeros()) + n;
    let x = Float::with_val(p, x);
    let nf = factorial_f(n, p);
    let mut head = Float::new(p);
    for i in 0..shift {
        let xi = Float::with_val(p, &x + i);
        head += Float::with_val(p, (&xi).pow(n + 1)).recip();
    }
    head *= &nf;
    let y = Float::with_val(p, &x + shift);
    let yn = Float::with_val(p, (&y).pow(n));
    // (n-1)!/y^n + n!/(2 y^{n+1}) + Σ B_2k (2k+n-1)!/((2k)! y^{2k+n})
    let mut s = factorial_f(n - 1, p) / &yn + Float::with_val(p, &nf / (Float::with_val(p, &yn * &y) * 2u32));
    let y2 = Float::with_val(p, y.square_ref());
    let mut ypow = Float::with_val(p, &yn * &y2);
    let eps = Float::with_val(p, 1) >> p;
    // ratio (2k+n-1)!/(2k)! updated incrementally
    let mut ratio = factorial_f(n + 1, p) / 2u32;
    for k in 1..400u32 {
        if k > 1 {
            let a = 2 * k + n - 2;
            ratio = ratio * (a * (a + 1)) / ((2 * k - 1) * 2 * k);
        }
        let t = bernoulli_f(2 * k as usize, p) * &ratio / &ypow;
        s += &t;
        if t.abs() < eps {
            break;
        }
        ypow *= &y2;
    }
    let sign_odd = n % 2 == 1;
    let asym = if sign_odd { s } else { -s };
    // ψ^(n)(x) = ψ^(n)(x+N) − (−1)^n n! Σ (x+i)^{−n−1}
    let v = if n % 2 == 0 { asym - head } else { asym + head };
    Float::with_val(prec, v)
}

pub fn polygamma(n: u32, x: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *x <= 0 {
        return Err(NumError::Domain("polygamma needs x > 0".into()));
    }
    if n == 0 {
        return digamma(x, ctx);
    }
    let v = polygamma_f(n, x, ctx.work());
    Ok(SeriesValue::closed(v).with_method(Method::EulerMaclaurin))
}

/// ψ applied to a jet (derivatives in the argument).
pub fn digamma_jet(x: &Jet) -> Jet {
    let prec = x.prec();
    let ord = x.order() as u32;
    let n = shift_count(x.value().to_f64(), shift_point(prec, 2 * ord));
    let mut head = Jet::constant(prec, &Float::new(prec), x.order());
    for i in 0..n {
        head = &head + &x.add_scalar(&Float::with_val(prec, i)).recip();
    }
    let y = x.add_scalar(&Float::with_val(prec, n));
    let yinv = y.recip();
    let y2inv = &yinv * &yinv;
    let mut s = &y.ln() - &yinv.scale(&Float::with_val(prec, 0.5));
    let mut pw = y2inv.clone();
    let eps = Float::with_val(prec, 1) >> prec;
    for k in 1..400usize {
        let c = bernoulli_f(2 * k, prec) / (2 * k) as u32;
        let t = pw.scale(&c);
        s = &s - &t;
        if Float::with_val(prec, t.c[0].abs_ref()) < eps {
            break;
        }
        pw = &pw * &y2inv;
    }
    &s - &head
}

/// ψ at a complex point with positive real part.
pub fn digamma_cx(z: &Cx, prec: u32) -> Cx {
    let target = shift_point(prec, 0);
    let r = z.abs().to_f64();
    let n = if r >= target { 0 } else { (target - z.re.to_f64()).max(0.0).ceil() as u32 };
    let p = prec + 10;
    let mut head = Cx::from_f64(p, 0.0, 0.0);
    for i in 0..n {
        let zi = Cx::new(Float::with_val(p, &z.re + i), Float::with_val(p, &z.im));
        head = head.add(&zi.recip());
    }
    let y = Cx::new(Float::with_val(p, &z.re + n), Float::with_val(p, &z.im));
    let yi = y.recip();
    let y2i = yi.mul(&yi);
    let mut s = y.ln().sub(&yi.scale(&Float::with_val(p, 0.5)));
    let mut pw = y2i.clone();
    let eps = Float::with_val(p, 1) >> p;
    for k in 1..400usize {
        let c = bernoulli_f(2 * k, p) / (2 * k) as u32;
        let t = pw.scale(&c);
        s = s.sub(&t);
        if t.abs() < eps {
            break;
        }
        pw = pw.mul(&y2i);
    }
    s.sub(&head)
}

pub fn ln_gamma_f(x: &Float, prec: u32) -> Float {
    Float::with_val(prec, x.ln_gamma_ref())
}

pub fn ln_gamma(x: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *x <= 0 {
        return Err(NumError::Domain("ln_gamma needs x > 0".into()));
    }
    Ok(SeriesValue::closed(ln_gamma_f(x, ctx.work())))
}
