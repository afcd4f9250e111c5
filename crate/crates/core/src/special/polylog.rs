//! Polylogarithms Li_n(x) for integer n ≥ 1 and real x ≤ 1.

use crate::bernoulli::{bernoulli, factorial_f};
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::jet::Jet;
use crate::quad::tanh_sinh;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Riemann ζ at an integer argument, including ζ(0) = −1/2 and ζ(−m).
fn zeta_int(k: i64, prec: u32) -> Float {
    if k >= 2 {
        Float::with_val(prec, Float::zeta_u(k as u32))
    } else if k == 0 {
        Float::with_val(prec, -0.5)
    } else {
        // ζ(−m) = (−1)^m B_{m+1}/(m+1)
        let m = (-k) as usize;
        let mut b = bernoulli(m + 1) / Rational::from(m as u32 + 1);
        if m % 2 == 1 {
            b = -b;
        }
        Float::with_val(prec, &b)
    }
}

fn series_small(n: u32, x: &Float, prec: u32) -> Float {
    let mut s = Float::new(prec);
    let mut pw = Float::with_val(prec, x);
    let eps = Float::with_val(prec, 1) >> (prec + 4);
    for k in 1u32..100_000 {
        let kn = Float::with_val(prec, Float::u_pow_u(k, n));
        let t = Float::with_val(prec, &pw / &kn);
        s += &t;
        if t.abs() < eps {
            break;
        }
        pw *= x;
    }
    s
}

/// Expansion in μ = ln x, valid for 0 < x < 1 with |μ| < 2π.
fn series_log(n: u32, x: &Float, prec: u32) -> Float {
    let mu = Float::with_val(prec, x.ln_ref());
    let mut s = Float::new(prec);
    let mut pw = Float::with_val(prec, 1); // μ^k / k!
    let eps = Float::with_val(prec, 1) >> (prec + 4);
    let mut h = Float::new(prec);
    for i in 1..n {
        h += Float::with_val(prec, 1) / i;
    }
    for k in 0..2000u32 {
        if k > 0 {
            pw = pw * &mu / k;
        }
        let t = if k + 1 == n {
            let lm = Float::with_val(prec, -&mu).ln();
            Float::with_val(prec, &pw * Float::with_val(prec, &h - lm))
        } else {
            Float::with_val(prec, &pw * zeta_int(n as i64 - k as i64, prec))
        };
        s += &t;
        if k > n + 2 && !t.is_zero() && t.abs() < eps {
            break;
        }
    }
    s
}

/// Li_n(−1) = −(1 − 2^{1−n}) ζ(n); n ≥ 2, and Li_1(−1) = −ln 2.
pub fn polylog_minus_one(n: u32, prec: u32) -> Float {
    if n == 1 {
        return -Float::with_val(prec, rug::float::Constant::Log2);
    }
    let z = Float::with_val(prec, Float::zeta_u(n));
    let f = Float::with_val(prec, 1) - (Float::with_val(prec, 1) >> (n - 1));
    -(z * f)
}

/// Li_n(x) at working precision `prec`.
pub fn polylog_f(n: u32, x: &Float, prec: u32) -> Float {
    let p = prec + 16;
    let x = Float::with_val(p, x);
    let r = if x.is_zero() {
        Float::new(p)
    } else if n == 1 {
        -Float::with_val(p, (-x.clone()).ln_1p_ref())
    } else if x == 1 {
        Float::with_val(p, Float::zeta_u(n))
    } else if x == -1 {
        polylog_minus_one(n, p)
    } else if x.to_f64().abs() <= 0.5 {
        series_small(n, &x, p)
    } else if x > 0 {
        series_log(n, &x, p)
    } else if x > -1 {
        // Li_n(x) = 2^{1−n} Li_n(x²) − Li_n(−x)
        let x2 = Float::with_val(p, x.square_ref());
        let a = series_log(n, &x2, p) >> (n - 1);
        let b = polylog_f(n, &Float::with_val(p, -&x), p);
        a - b
    } else {
        inversion(n, &Float::with_val(p, -&x), p)
    };
    Float::with_val(prec, r)
}

/// Li_n(−y) for y > 1 via the inversion relation.
fn inversion(n: u32, y: &Float, p: u32) -> Float {
    let ly = Float::with_val(p, y.ln_ref());
    let inv = Float::with_val(p, -Float::with_val(p, y.recip_ref()));
    let mut r = -Float::with_val(p, (&ly).pow(n)) / factorial_f(n, p);
    for k in 1..=n / 2 {
        let e = n - 2 * k;
        let t = Float::with_val(p, (&ly).pow(e)) / factorial_f(e, p) * polylog_minus_one(2 * k, p);
        r += t * 2u32;
    }
    let other = polylog_f(n, &inv, p);
    if n % 2 == 0 {
        r - other
    } else {
        r + other
    }
}

pub fn polylog(n: u32, x: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if n == 0 {
        return Err(NumError::Domain("polylog order must be ≥ 1".into()));
    }
    if *x > 1 || (n == 1 && *x == 1) {
        return Err(NumError::Domain("polylog is provided for x ≤ 1 (x < 1 when n = 1)".into()));
    }
    let v = polylog_f(n, x, ctx.work());
    Ok(SeriesValue::closed(v).with_method(Method::ClosedForm))
}

/// Li_n(b) from ∫_0^1 ln^r w ln(1 − b w) dw / w with r = n − 2.
pub fn polylog_integral(n: u32, b: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if n < 2 {
        return Err(NumError::Domain("integral route needs n ≥ 2".into()));
    }
    if *b > 1 {
        return Err(NumError::Domain("integral route needs b ≤ 1".into()));
    }
    let prec = ctx.work();
    let r = n - 2;
    let b2 = Float::with_val(prec, b);
    let g = |w: &Float| {
        let lw = Float::with_val(prec, w.ln_ref());
        let bw = Float::with_val(prec, -Float::with_val(prec, &b2 * w));
        let l1 = bw.ln_1p();
        Float::with_val(prec, (&lw).pow(r)) * l1 / w
    };
    let q = tanh_sinh(g, &Float::new(prec), &Float::with_val(prec, 1), prec, ctx.quad_tolerance);
    let rf = factorial_f(r, prec);
    let mut v = q.value / rf;
    // ∫ = (−1)^{r−1} r! Li_{r+2}(b)
    if r % 2 == 0 {
        v = -v;
    }
    let e = q.error_bound;
    if e > ctx.quad_tolerance {
        return Err(NumError::accuracy("polylog integral did not converge", &v, e));
    }
    Ok(SeriesValue::new(v, e, q.terms_used, Method::Quadrature))
}

/// Li_n(−y) as a jet in y, for y ≥ 2.
pub fn polylog_neg_jet(n: u32, y: &Jet) -> Jet {
    let p = y.prec();
    let ly = y.ln();
    let w = y.recip().scale(&Float::with_val(p, -1));
    // Li_n(w) by Horner, |w| ≤ 1/2
    let w0 = w.value().to_f64().abs();
    let terms = ((p as f64 + 8.0) / (-w0.log2())).ceil() as u32 + 2;
    let coef = |k: u32| Float::with_val(p, Float::u_pow_u(k, n)).recip();
    let mut acc = Jet::constant(p, &coef(terms), y.order());
    for k in (1..terms).rev() {
        acc = &acc * &w;
        acc = acc.add_scalar(&coef(k));
    }
    let li_w = &acc * &w;
    let mut r = ly.powi(n as i32).scale(&(-factorial_f(n, p).recip()));
    for k in 1..=n / 2 {
        let e = n - 2 * k;
        let c = polylog_minus_one(2 * k, p) * 2u32 / factorial_f(e, p);
        r = &r + &ly.powi(e as i32).scale(&c);
    }
    if n % 2 == 0 {
        &r - &li_w
    } else {
        &r + &li_w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::pi;

    fn f(x: f64) -> Float {
        Float::with_val(160, x)
    }

    #[test]
    fn dilog_matches_mpfr_on_moderate_range() {
        for x in [-0.9, -0.6, -0.3, 0.2, 0.55, 0.8, 0.99] {
            let ours = polylog_f(2, &f(x), 160);
            let mpfr = Float::with_val(160, f(x).li2_ref());
            let d = (ours - mpfr).abs().to_f64();
            assert!(d < 1e-44, "x = {x} diff {d}");
        }
    }

    #[test]
    fn dilog_at_minus_one() {
        let v = polylog_f(2, &f(-1.0), 160);
        let want = -pi(160).square() / 12u32;
        assert!((v - want).abs().to_f64() < 1e-44);
    }

    #[test]
    fn dilog_large_negative_matches_mpfr() {
        for x in [-3.0, -10.0, -1234.5] {
            let ours = polylog_f(2, &f(x), 160);
            let mpfr = Float::with_val(160, f(x).li2_ref());
            assert!((ours - mpfr).abs().to_f64() < 1e-40, "x = {x}");
        }
    }

    #[test]
    fn neg_jet_value_matches_scalar() {
        for n in 2..6 {
            let j = polylog_neg_jet(n, &Jet::var(160, &f(40.0), 4));
            let v = polylog_f(n, &f(-40.0), 160);
            assert!((j.c[0].clone() - v).abs().to_f64() < 1e-40);
            // d/dy Li_n(−y) = Li_{n−1}(−y)/y
            let d = polylog_f(n - 1, &f(-40.0), 160) / 40u32;
            assert!((j.c[1].clone() - d).abs().to_f64() < 1e-40);
        }
    }
}
