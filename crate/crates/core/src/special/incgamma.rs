//! Upper incomplete gamma function at order zero, Γ(0, x) = E₁(x).

use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::special::gamma::euler_gamma;
use rug::Float;

pub fn gamma0_f(x: &Float, prec: u32) -> Float {
    if x.to_f64() < 4.0 {
        // −γ − ln x − Σ_{k≥1} (−x)^k/(k·k!)
        let p = prec + 16;
        let x = Float::with_val(p, x);
        let mut s = Float::new(p);
        let mut t = Float::with_val(p, 1);
        let eps = Float::with_val(p, 1) >> (p + 2);
        for k in 1u32..10_000 {
            t = -t * &x / k;
            let term = Float::with_val(p, &t / k);
            s += &term;
            if term.abs() < eps {
                break;
            }
        }
        let v = -euler_gamma(p) - Float::with_val(p, x.ln_ref()) - s;
        Float::with_val(prec, v)
    } else {
        // e^{−x} / (x + 1 − 1/(x + 3 − 4/(x + 5 − ...))) by modified Lentz
        let p = prec + 8;
        let x = Float::with_val(p, x);
        let tiny = Float::with_val(p, 1) >> (2 * p);
        let eps = Float::with_val(p, 1) >> p;
        let mut b = Float::with_val(p, &x + 1u32);
        let mut c = Float::with_val(p, 1) / &tiny;
        let mut d = Float::with_val(p, 1) / &b;
        let mut h = d.clone();
        for i in 1u32..100_000 {
            let an = -Float::with_val(p, i) * i;
            b += 2u32;
            d = Float::with_val(p, &an * &d) + &b;
            if d.clone().abs() < tiny {
                d = tiny.clone();
            }
            c = Float::with_val(p, &an / &c) + &b;
            if c.clone().abs() < tiny {
                c = tiny.clone();
            }
            d = d.recip();
            let del = Float::with_val(p, &c * &d);
            h *= &del;
            if (del - 1u32).abs() < eps {
                break;
            }
        }
        let v = h * Float::with_val(p, (-x).exp_ref());
        Float::with_val(prec, v)
    }
}

pub fn upper_incomplete_gamma0(x: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *x <= 0 {
        return Err(NumError::Domain("Γ(0, x) needs x > 0".into()));
    }
    let v = gamma0_f(x, ctx.work());
    Ok(SeriesValue::closed(v).with_method(Method::ClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_mpfr_eint() {
        // E₁(x) = −Ei(−x)
        for x in [0.01, 0.5, 1.0, 3.9, 4.1, 10.0, 50.0] {
            let v = gamma0_f(&Float::with_val(160, x), 160);
            let ei = Float::with_val(160, Float::with_val(160, -x).eint_ref());
            assert!(((v + ei) / Float::with_val(160, x).exp().recip()).abs().to_f64() < 1e-40, "x = {x}");
        }
    }
}
