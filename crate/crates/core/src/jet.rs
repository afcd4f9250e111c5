//! Truncated Taylor series ("jets") with `c[i] = f^(i)(x0) / i!`.
//!
//! Used to differentiate smooth summands for Euler-Maclaurin tails and to
//! take s-derivatives of Dirichlet-type series.

use rug::{Assign, Float};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub c: Vec<Float>,
}

impl Jet {
    pub fn constant(prec: u32, x: &Float, order: usize) -> Jet {
        let mut c = vec![Float::new(prec); order + 1];
        c[0].assign(x);
        Jet { c }
    }

    pub fn from_f64(prec: u32, x: f64, order: usize) -> Jet {
        Jet::constant(prec, &Float::with_val(prec, x), order)
    }

    /// The identity function expanded at `x`.
    pub fn var(prec: u32, x: &Float, order: usize) -> Jet {
        let mut j = Jet::constant(prec, x, order);
        if order >= 1 {
            j.c[1] = Float::with_val(prec, 1);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.c[0].prec()
    }

    pub fn value(&self) -> &Float {
        &self.c[0]
    }

    /// `f^(n)(x0)`.
    pub fn derivative(&self, n: usize) -> Float {
        let mut f = Float::with_val(self.prec(), 1);
        for i in 2..=n {
            f *= i as u32;
        }
        f * &self.c[n]
    }

    fn zeros(&self) -> Jet {
        Jet {
            c: vec![Float::new(self.prec()); self.c.len()],
        }
    }

    pub fn scale(&self, k: &Float) -> Jet {
        Jet {
            c: self.c.iter().map(|v| Float::with_val(v.prec(), v * k)).collect(),
        }
    }

    pub fn add_scalar(&self, k: &Float) -> Jet {
        let mut r = self.clone();
        r.c[0] += k;
        r
    }

    pub fn recip(&self) -> Jet {
        let one = Jet::constant(self.prec(), &Float::with_val(self.prec(), 1), self.order());
        one.div(self)
    }

    pub fn div(&self, h: &Jet) -> Jet {
        let n = self.c.len();
        let p = self.prec();
        let mut q = self.zeros();
        for i in 0..n {
            let mut acc = self.c[i].clone();
            for k in 1..=i {
                acc -= Float::with_val(p, &h.c[k] * &q.c[i - k]);
            }
            q.c[i] = acc / &h.c[0];
        }
        q
    }

    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let p = self.prec();
        let mut g = self.zeros();
        g.c[0] = Float::with_val(p, self.c[0].ln_ref());
        for i in 1..n {
            let mut acc = self.c[i].clone();
            for k in 1..i {
                let t = Float::with_val(p, &g.c[k] * &self.c[i - k]) * k as u32 / i as u32;
                acc -= t;
            }
            g.c[i] = acc / &self.c[0];
        }
        g
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let p = self.prec();
        let mut g = self.zeros();
        g.c[0] = Float::with_val(p, self.c[0].exp_ref());
        for i in 1..n {
            let mut acc = Float::new(p);
            for k in 1..=i {
                acc += Float::with_val(p, &self.c[k] * &g.c[i - k]) * k as u32;
            }
            g.c[i] = acc / i as u32;
        }
        g
    }

    /// `f^e` for real `e`, requires `f(x0) > 0`.
    pub fn powf(&self, e: &Float) -> Jet {
        self.ln().scale(e).exp()
    }

    pub fn powi(&self, e: i32) -> Jet {
        if e == 0 {
            return Jet::constant(self.prec(), &Float::with_val(self.prec(), 1), self.order());
        }
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut base = self.clone();
        let mut acc: Option<Jet> = None;
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }

    pub fn sqrt(&self) -> Jet {
        let half = Float::with_val(self.prec(), 0.5);
        self.powf(&half)
    }

    /// `ln(1 + f)` without cancellation when `f(x0)` is small.
    pub fn ln_1p(&self) -> Jet {
        let p = self.prec();
        let onep = self.add_scalar(&Float::with_val(p, 1));
        let mut g = onep.ln();
        g.c[0] = Float::with_val(p, self.c[0].ln_1p_ref());
        g
    }

    /// Composition `F(f)` given the Taylor coefficients of `F` at `f(x0)`.
    pub fn compose(&self, outer: &[Float]) -> Jet {
        let p = self.prec();
        let mut d = self.clone();
        d.c[0] = Float::new(p);
        let mut acc = Jet::constant(p, &outer[outer.len() - 1], self.order());
        for k in (0..outer.len() - 1).rev() {
            acc = &acc * &d;
            acc.c[0] += &outer[k];
        }
        acc
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| Float::with_val(a.prec(), a + b))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| Float::with_val(a.prec(), a - b))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let p = self.prec();
        let mut r = Jet {
            c: vec![Float::new(p); n],
        };
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for k in 0..n - i {
                r.c[i + k] += Float::with_val(p, &self.c[i] * &o.c[k]);
            }
        }
        r
    }
}

impl<'a> Mul<&'a Float> for &'a Jet {
    type Output = Jet;
    fn mul(self, k: &Float) -> Jet {
        self.scale(k)
    }
}

impl<'a> Add<&'a Float> for &'a Jet {
    type Output = Jet;
    fn add(self, k: &Float) -> Jet {
        self.add_scalar(k)
    }
}

impl<'a> Sub<&'a Float> for &'a Jet {
    type Output = Jet;
    fn sub(self, k: &Float) -> Jet {
        let mut r = self.clone();
        r.c[0] -= k;
        r
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            c: self.c.iter().map(|v| Float::with_val(v.prec(), -v)).collect(),
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        &self + &o
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        &self - &o
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: f64) -> Float {
        Float::with_val(128, x)
    }

    #[test]
    fn exp_of_var_has_factorial_coefficients() {
        let e = Jet::var(128, &f(0.0), 6).exp();
        let mut fact = 1.0;
        for i in 0..=6 {
            if i > 0 {
                fact *= i as f64;
            }
            assert!((e.c[i].to_f64() - 1.0 / fact).abs() < 1e-30);
        }
    }

    #[test]
    fn ln_then_exp_is_identity() {
        let x = Jet::var(128, &f(2.5), 8);
        let y = x.ln().exp();
        for i in 0..=8 {
            assert!((Float::with_val(128, &y.c[i] - &x.c[i])).abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn derivatives_of_reciprocal() {
        // d^n/dx^n 1/x = (-1)^n n! / x^{n+1}
        let r = Jet::var(128, &f(2.0), 5).recip();
        for n in 0..=5 {
            let mut fact = 1.0;
            for i in 2..=n {
                fact *= i as f64;
            }
            let want = (-1f64).powi(n as i32) * fact / 2f64.powi(n as i32 + 1);
            assert!((r.derivative(n).to_f64() - want).abs() < 1e-25);
        }
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Jet::var(128, &f(1.3), 4).ln_1p();
        let a = x.powi(3);
        let b = &(&x * &x) * &x;
        for i in 0..=4 {
            assert!((Float::with_val(128, &a.c[i] - &b.c[i])).abs().to_f64() < 1e-30);
        }
    }
}
