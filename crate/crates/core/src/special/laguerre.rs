//! Generalized Laguerre polynomials with exact rational coefficients.

use crate::bernoulli::{binomial, factorial};
use crate::jet::Jet;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Coefficients of `L_n^α(x)` in increasing powers: `(−1)^i C(n+α, n−i) / i!`.
pub fn laguerre_coeffs(n: u32, alpha: u32) -> Vec<Rational> {
    (0..=n)
        .map(|i| {
            let c = Rational::from(binomial(n + alpha, n - i)) / Rational::from(factorial(i));
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

pub fn laguerre(n: u32, alpha: u32, x: &Float) -> Float {
    let p = x.prec();
    let c = laguerre_coeffs(n, alpha);
    let mut acc = Float::with_val(p, &c[n as usize]);
    for k in (0..n as usize).rev() {
        acc *= x;
        acc += Float::with_val(p, &c[k]);
    }
    acc
}

pub fn laguerre_jet(n: u32, alpha: u32, x: &Jet) -> Jet {
    let p = x.prec();
    let c = laguerre_coeffs(n, alpha);
    let mut acc = Jet::constant(p, &Float::with_val(p, &c[n as usize]), x.order());
    for k in (0..n as usize).rev() {
        acc = &acc * x;
        acc = acc.add_scalar(&Float::with_val(p, &c[k]));
    }
    acc
}

/// Σ_{j=ν}^{n} (−1)^{j−1} C(n, j) w^{j−ν} / (j−ν)! summed exactly term by term.
pub fn alternating_binomial_sum(n: u32, nu: u32, w: &Float) -> Float {
    let p = w.prec();
    let mut s = Float::new(p);
    for j in nu..=n {
        let c = Rational::from(binomial(n, j)) / Rational::from(factorial(j - nu));
        let t = Float::with_val(p, &c) * Float::with_val(p, (&w).pow(j - nu));
        if j % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        let x = Float::with_val(128, 0.3);
        assert_eq!(laguerre(0, 1, &x), 1);
        assert!((laguerre(1, 1, &x) - (Float::with_val(128, 2) - &x)).abs().to_f64() < 1e-35);
        // L_2^2(x) = x²/2 − 4x + 6
        let want = 0.045 - 1.2 + 6.0;
        assert!((laguerre(2, 2, &x).to_f64() - want).abs() < 1e-15);
    }

    #[test]
    fn three_term_recurrence() {
        // (k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}
        let x = Float::with_val(128, 1.7);
        for alpha in 0..3u32 {
            for k in 1..10u32 {
                let lhs = laguerre(k + 1, alpha, &x) * (k + 1);
                let a = Float::with_val(128, 2 * k + 1 + alpha) - &x;
                let rhs = a * laguerre(k, alpha, &x) - laguerre(k - 1, alpha, &x) * (k + alpha);
                assert!((lhs - rhs).abs().to_f64() < 1e-28);
            }
        }
    }
}
