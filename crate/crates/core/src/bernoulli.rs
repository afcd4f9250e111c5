//! Exact Bernoulli numbers and polynomials, plus a few exact combinatorial helpers.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static C: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    if n == 1 {
        return Rational::from((-1, 2));
    }
    if n > 1 && n % 2 == 1 {
        return Rational::new();
    }
    let mut c = cache().lock().unwrap();
    while c.len() <= n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let m = c.len();
        let mut s = Rational::new();
        for (k, bk) in c.iter().enumerate() {
            let bk = if k == 1 { Rational::from((-1, 2)) } else { bk.clone() };
            if bk == 0 {
                continue;
            }
            s += Rational::from(binomial(m as u32 + 1, k as u32)) * bk;
        }
        let next = -s / Rational::from(m as u32 + 1);
        c.push(if m > 1 && m % 2 == 1 { Rational::new() } else { next });
    }
    c[n].clone()
}

/// `B_{2r}` as a float.
pub fn bernoulli_f(n: usize, prec: u32) -> Float {
    Float::with_val(prec, &bernoulli(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn factorial_f(n: u32, prec: u32) -> Float {
    Float::with_val(prec, &factorial(n))
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: &Float) -> Float {
    let p = x.prec();
    let mut acc = Float::new(p);
    for k in 0..=n {
        let bk = bernoulli(k);
        if bk == 0 {
            continue;
        }
        let coef = Rational::from(binomial(n as u32, k as u32)) * bk;
        let xp = Float::with_val(p, (&x).pow((n - k) as u32));
        acc += xp * Float::with_val(p, &coef);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_even_numbers() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(7), 0);
    }

    #[test]
    fn polynomial_difference_is_power() {
        // B_n(x+1) - B_n(x) = n x^{n-1}
        let x = Float::with_val(128, 2.75);
        let x1 = Float::with_val(128, 3.75);
        for n in 1..8usize {
            let d = bernoulli_poly(n, &x1) - bernoulli_poly(n, &x);
            let want = Float::with_val(128, (&x).pow((n - 1) as u32)) * n as u32;
            assert!((d - want).abs().to_f64() < 1e-28);
        }
    }
}
