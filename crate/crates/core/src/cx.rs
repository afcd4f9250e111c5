//! Minimal complex arithmetic over MPFR floats.

use rug::Float;

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Cx {
        Cx { re, im }
    }

    pub fn real(x: &Float) -> Cx {
        Cx {
            re: x.clone(),
            im: Float::new(x.prec()),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Cx {
        Cx {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cx { re, im }
    }

    pub fn scale(&self, k: &Float) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Cx {
        let d = self.norm_sqr();
        Cx {
            re: Float::with_val(self.prec(), &self.re / &d),
            im: Float::with_val(self.prec(), -Float::with_val(self.prec(), &self.im / &d)),
        }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        self.mul(&o.recip())
    }

    pub fn ln(&self) -> Cx {
        Cx {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// `ln(1 + self)` accurate when `self` is small.
    pub fn ln_1p(&self) -> Cx {
        let p = self.prec();
        // |1+z|^2 - 1 = 2 re + |z|^2
        let r2m1 = Float::with_val(p, &self.re * 2u32) + self.norm_sqr();
        let re = r2m1.ln_1p() / 2u32;
        let one_re = Float::with_val(p, &self.re + 1u32);
        let im = Float::with_val(p, self.im.atan2_ref(&one_re));
        Cx { re, im }
    }

    pub fn exp(&self) -> Cx {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cx {
            re: Float::with_val(p, &m * &c),
            im: m * s,
        }
    }

    pub fn powi(&self, n: i32) -> Cx {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let p = self.prec();
        let mut acc = Cx::from_f64(p, 1.0, 0.0);
        let mut base = self.clone();
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}
