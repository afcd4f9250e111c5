//! Tail formulas and accelerators for slowly convergent sums.

use crate::bernoulli::bernoulli_f;
use crate::context::{Method, SeriesValue};
use crate::jet::Jet;
use rug::ops::Pow;
use rug::Float;

/// Euler-Maclaurin boundary terms at `K` for Σ_{k≥K} φ(k):
/// `φ(K)/2 − Σ_r B_{2r}/(2r) · c_{2r−1}` with `c` the jet of φ at K.
///
/// Terms are added while they decrease; the first omitted term is the
/// error estimate.
pub fn em_boundary(jet: &Jet) -> (Float, f64) {
    let p = jet.prec();
    let mut s = Float::with_val(p, &jet.c[0] / 2u32);
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    let mut r = 1;
    while 2 * r - 1 <= jet.order() {
        let b = bernoulli_f(2 * r, p);
        let t = Float::with_val(p, &b * &jet.c[2 * r - 1]) / (2 * r) as u32;
        let m = t.to_f64().abs();
        if m > last && r > 2 {
            err = last;
            break;
        }
        s -= &t;
        last = m;
        err = m;
        r += 1;
    }
    (s, err)
}

/// Boole (alternating Euler-Maclaurin) value of Σ_{k≥0} (−1)^k φ(M+k),
/// given the jet of φ at M.
pub fn boole_tail(jet: &Jet) -> (Float, f64) {
    let p = jet.prec();
    let mut s = Float::with_val(p, &jet.c[0] / 2u32);
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    let mut n = 1usize;
    while 2 * n - 1 <= jet.order() {
        let b = bernoulli_f(2 * n, p);
        let pw = Float::with_val(p, Float::with_val(p, 1) << (2 * n as u32)) - 1u32;
        let t = Float::with_val(p, &b * &jet.c[2 * n - 1]) * pw / (2 * n) as u32;
        let m = t.to_f64().abs();
        if m > last && n > 2 {
            err = last;
            break;
        }
        s -= &t;
        last = m;
        err = m;
        n += 1;
    }
    (s, err)
}

/// Number of Cohen-Villegas-Zagier terms for roughly `bits` of accuracy.
pub fn cvz_terms(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 2
}

/// Σ_{k≥0} (−1)^k a(k) by the Cohen-Villegas-Zagier weights, for `a`
/// totally monotone or close to it.
pub fn cvz_alternating<F>(a: F, n: usize, prec: u32) -> SeriesValue
where
    F: Fn(usize) -> Float,
{
    let terms: Vec<Float> = (0..n).map(&a).collect();
    cvz_from_terms(&terms, prec)
}

/// As [`cvz_alternating`] with the terms already evaluated.
pub fn cvz_from_terms(terms: &[Float], prec: u32) -> SeriesValue {
    let n = terms.len();
    let root = Float::with_val(prec, 8u32).sqrt() + 3u32;
    let mut d = Float::with_val(prec, (&root).pow(n as u32));
    d = (Float::with_val(prec, &d + Float::with_val(prec, 1u32 / &d))) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut s = Float::new(prec);
    let nn = n as i64;
    for (k, ak) in terms.iter().enumerate() {
        let ki = k as i64;
        c = Float::with_val(prec, &b - &c);
        s += Float::with_val(prec, &c * ak);
        b = b * ((ki + nn) * (ki - nn)) / Float::with_val(prec, (2 * ki + 1) * (ki + 1)) * 2u32;
    }
    let value = s / &d;
    let amax = terms.iter().map(|t| t.to_f64().abs()).fold(0.0, f64::max);
    let err = 2.0 * amax / d.to_f64();
    SeriesValue::new(value, err, n, Method::Accelerated)
}

/// Neville extrapolation to h → 0 of values at `h_i`, assuming an
/// expansion in integer powers of h.
pub fn richardson(hs: &[Float], vals: &[Float]) -> SeriesValue {
    let n = vals.len();
    let p = vals[0].prec();
    let mut t: Vec<Float> = vals.to_vec();
    let mut prev_best = t[n - 1].clone();
    let mut best = t[n - 1].clone();
    for m in 1..n {
        for i in (m..n).rev() {
            // polynomial through (h_{i-m}..h_i) evaluated at 0
            let num = Float::with_val(p, &hs[i - m] * &t[i]) - Float::with_val(p, &hs[i] * &t[i - 1]);
            let den = Float::with_val(p, &hs[i - m] - &hs[i]);
            t[i] = num / den;
        }
        prev_best = best;
        best = t[n - 1].clone();
    }
    let err = Float::with_val(p, &best - &prev_best).abs().to_f64();
    SeriesValue::new(best, err, n, Method::Extrapolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn cvz_alternating_harmonic() {
        let prec = 160;
        let r = cvz_alternating(|k| Float::with_val(prec, 1) / (k as u32 + 1), cvz_terms(150), prec);
        let ln2 = Float::with_val(prec, Constant::Log2);
        assert!((r.value - ln2).abs().to_f64() < 1e-40);
    }

    #[test]
    fn em_boundary_zeta_two() {
        // Σ_{k≥1} 1/k^2 = Σ_{k<20} + ∫_20^∞ + boundary
        let prec = 160;
        let mut s = Float::new(prec);
        for k in 1..20u32 {
            s += Float::with_val(prec, 1) / (k * k);
        }
        let x = Jet::var(prec, &Float::with_val(prec, 20), 30);
        let (b, _) = em_boundary(&x.powi(-2));
        s += b + Float::with_val(prec, 1) / 20u32;
        let z2 = Float::with_val(prec, Constant::Pi).square() / 6u32;
        assert!((s - z2).abs().to_f64() < 1e-25);
    }

    #[test]
    fn boole_tail_alternating_inverse_squares() {
        // Σ_{k≥1} (−1)^{k−1}/k^2 = π²/12
        let prec = 160;
        let mut s = Float::new(prec);
        for k in 1..24u32 {
            let t = Float::with_val(prec, 1) / (k * k);
            if k % 2 == 1 {
                s += t
            } else {
                s -= t
            }
        }
        // remaining terms start at k=24 with sign −
        let x = Jet::var(prec, &Float::with_val(prec, 24), 30);
        let (b, _) = boole_tail(&x.powi(-2));
        s -= b;
        let want = Float::with_val(prec, Constant::Pi).square() / 12u32;
        assert!((s - want).abs().to_f64() < 1e-20);
    }

    #[test]
    fn richardson_removes_power_terms() {
        let prec = 128;
        let hs: Vec<Float> = (0..5).map(|i| Float::with_val(prec, 1.0 / (1u32 << i) as f64)).collect();
        let vals: Vec<Float> = hs
            .iter()
            .map(|h| Float::with_val(prec, 2) + Float::with_val(prec, h * 3u32) + Float::with_val(prec, h.square_ref()))
            .collect();
        let r = richardson(&hs, &vals);
        assert!((r.value - 2u32).abs().to_f64() < 1e-30);
    }
}
