//! The ₂F₁(1, j+2; j+3; z) family, in closed form.

use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use rug::Float;

/// Σ_m (j+2)/(m+j+2) z^m, summed directly.
pub fn gauss_2f1_series(j: u32, z: &Float, prec: u32) -> Float {
    let mut s = Float::new(prec);
    let mut pw = Float::with_val(prec, 1);
    let eps = Float::with_val(prec, 1) >> (prec + 4);
    for m in 0u32..1_000_000 {
        let t = Float::with_val(prec, &pw * (j + 2)) / (m + j + 2);
        s += &t;
        if t.abs() < eps {
            break;
        }
        pw *= z;
    }
    s
}

/// `(j+2) z^{−(j+2)} [−ln(1−z) − Σ_{i=1}^{j+1} z^i/i]`, with the series near 0.
pub fn gauss_2f1_family_f(j: u32, z: &Float, prec: u32) -> Float {
    if z.is_zero() {
        return Float::with_val(prec, 1);
    }
    if z.to_f64().abs() < 0.25 {
        return gauss_2f1_series(j, z, prec);
    }
    let guard = 2 * (j + 2) + 16;
    let p = prec + guard;
    let z = Float::with_val(p, z);
    let mut s = -Float::with_val(p, (-z.clone()).ln_1p_ref());
    let mut pw = Float::with_val(p, 1);
    for i in 1..=j + 1 {
        pw *= &z;
        s -= Float::with_val(p, &pw / i);
    }
    pw *= &z;
    Float::with_val(prec, s / pw * (j + 2))
}

pub fn gauss_2f1_family(j: u32, z: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if z.to_f64().abs() >= 1.0 {
        return Err(NumError::Domain("₂F₁ family needs |z| < 1".into()));
    }
    let v = gauss_2f1_family_f(j, z, ctx.work());
    Ok(SeriesValue::closed(v).with_method(Method::ClosedForm))
}
