//! Alternating sums Σ_m (−1)^m ζ(m, a)·w(m) with rational weights, their
//! closed forms and integral representations.

use crate::bernoulli::{bernoulli_f, bernoulli_poly, factorial_f};
use crate::context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
use crate::cx::Cx;
use crate::floor::p1_integral;
use crate::jet::Jet;
use crate::quad::{exp_sinh, tanh_sinh};
use crate::special::gamma::{digamma_f, ln_gamma_f, pi, polygamma_f};
use crate::special::hyp::gauss_2f1_family_f;
use crate::special::zeta::hurwitz_zeta_f;
use crate::stieltjes::sum_with_em_tail;
use crate::summation::{cvz_alternating, cvz_terms, richardson};
use rug::ops::Pow;
use rug::Float;

/// Two evaluations of the same quantity.
#[derive(Clone, Debug)]
pub struct IdentityPair {
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
}

impl IdentityPair {
    pub fn gap(&self) -> f64 {
        Float::with_val(self.lhs.value.prec(), &self.lhs.value - &self.rhs.value)
            .abs()
            .to_f64()
    }

    pub fn budget(&self) -> f64 {
        self.lhs.error_bound + self.rhs.error_bound
    }
}

fn positive(a: &Float, what: &str) -> NumResult<()> {
    if a.is_finite() && *a > 0 {
        Ok(())
    } else {
        Err(NumError::Domain(format!("{what} needs a > 0")))
    }
}

/// Σ_{m≥2} (−1)^m ζ(m, a+1) w(m) by CVZ; `w` positive and decreasing.
fn alternating_shifted_zeta<W>(a: &Float, w: W, prec: u32) -> SeriesValue
where
    W: Fn(u32) -> Float,
{
    let a1 = Float::with_val(prec, a + 1u32);
    let n = cvz_terms(prec);
    cvz_alternating(
        |i| {
            let m = i as u32 + 2;
            hurwitz_zeta_f(&Float::with_val(prec, m), &a1, prec) * w(m)
        },
        n,
        prec,
    )
}

/// Σ_{m≥2} (−1)^m [ζ(m,a) − a^{−m}]/m against ln(1+a) − ψ(a) − 1/a.
pub fn prop2a(a: &Float, ctx: &PrecisionContext) -> NumResult<IdentityPair> {
    positive(a, "prop2a")?;
    let p = ctx.work();
    let lhs = alternating_shifted_zeta(a, |m| Float::with_val(p, m).recip(), p);
    let a = Float::with_val(p, a);
    let rhs = Float::with_val(p, (&a).ln_1p_ref()) - digamma_f(&a, p) - Float::with_val(p, a.recip_ref());
    Ok(IdentityPair {
        lhs,
        rhs: SeriesValue::closed(rhs),
    })
}

/// The same sum as [`prop2a`] by −1/a + ln(1 + 1/a) + ∫_0^∞ e^{−(a−1)t}(e^{−t} + t − 1)/(t(e^t − 1)) dt.
pub fn prop2a_integral(a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    positive(a, "prop2a")?;
    let p = ctx.work();
    let a = Float::with_val(p, a);
    let am1 = Float::with_val(p, &a - 1u32);
    let f = |t: &Float| {
        let q = t.prec();
        if t.is_zero() {
            return Float::new(q);
        }
        // e^{−t} + t − 1 cancels to t²/2 near 0
        let num = if t.to_f64() < 0.5 {
            let mut s = Float::new(q);
            let mut term = Float::with_val(q, t.square_ref()) / 2u32;
            let mut k = 2u32;
            let eps = Float::with_val(q, t.square_ref()) >> (q + 8);
            while term.clone().abs() > eps {
                s += &term;
                k += 1;
                term = -term * t / k;
            }
            s
        } else {
            Float::with_val(q, (-t.clone()).exp()) + t - 1u32
        };
        let den = Float::with_val(q, t * Float::with_val(q, t.exp_m1_ref()));
        Float::with_val(q, (-Float::with_val(q, &am1 * t)).exp()) * num / den
    };
    // finite at 0, so the near piece goes to tanh-sinh
    let zero = Float::new(p);
    let one = Float::with_val(p, 1);
    let q = tanh_sinh(&f, &zero, &one, p, ctx.quad_tolerance / 2.0).add(&exp_sinh(&f, &one, p, ctx.quad_tolerance / 2.0));
    let ia = Float::with_val(p, a.recip_ref());
    let head = Float::with_val(p, (&ia).ln_1p_ref()) - ia;
    Ok(q.add(&SeriesValue::closed(head)).with_method(Method::Combined))
}

/// Σ_{m≥2} (−x)^m/(m+1) = (ln(1+x) − x + x²/2)/x, for x > −1.
fn peeled_head(x: &Float) -> Float {
    let p = x.prec();
    if x.to_f64().abs() < 0.25 {
        let mut s = Float::new(p);
        let mut pw = Float::with_val(p, x.square_ref());
        let eps = Float::with_val(p, x.square_ref()) >> (p + 8);
        for m in 2u32.. {
            let t = Float::with_val(p, &pw / (m + 1));
            if t.clone().abs() < eps {
                break;
            }
            if m % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            pw *= x;
        }
        return s;
    }
    let q = p + 32;
    let xq = Float::with_val(q, x);
    let v = Float::with_val(q, xq.ln_1p_ref()) - &xq + Float::with_val(q, xq.square_ref()) / 2u32;
    Float::with_val(p, v / xq)
}

/// Σ_{m≥2} (−1)^m ζ(m,a)/(m+1) against −a ln a + ln Γ(a+1) − ψ(a)/2 − ln(2π)/2 + a.
///
/// The k = 0 Hurwitz term is summed in closed form, which continues the
/// left side to a ≤ 1.
pub fn prop2b(a: &Float, ctx: &PrecisionContext) -> NumResult<IdentityPair> {
    positive(a, "prop2b")?;
    let p = ctx.work();
    let a = Float::with_val(p, a);
    let tail = alternating_shifted_zeta(&a, |m| Float::with_val(p, m + 1).recip(), p);
    let head = peeled_head(&Float::with_val(p, a.recip_ref()));
    let lhs = tail.add(&SeriesValue::closed(head));
    let two_pi = pi(p) * 2u32;
    let a1 = Float::with_val(p, &a + 1u32);
    let rhs = -Float::with_val(p, &a * Float::with_val(p, a.ln_ref())) + ln_gamma_f(&a1, p)
        - digamma_f(&a, p) / 2u32
        - Float::with_val(p, two_pi.ln_ref()) / 2u32
        + &a;
    Ok(IdentityPair {
        lhs,
        rhs: SeriesValue::closed(rhs),
    })
}

/// Σ_{m≥2} z^m [ζ(m,a) − a^{−m}]/m against z/a + ln(1 − z/a) + ln Γ(a−z) − ln Γ(a) + zψ(a).
///
/// The left side converges for |z| < a + 1; the right side needs z < a.
pub fn prop2c(a: &Float, z: &Float, ctx: &PrecisionContext) -> NumResult<IdentityPair> {
    positive(a, "prop2c")?;
    if *z >= *a || Float::with_val(53, z.abs_ref()) >= Float::with_val(53, a + 1u32) {
        return Err(NumError::Domain("prop2c needs z < a and |z| < a + 1".into()));
    }
    let p = ctx.work();
    let a = Float::with_val(p, a);
    let z = Float::with_val(p, z);
    let ratio = z.to_f64().abs() / (a.to_f64() + 1.0);
    let lhs = if z.is_zero() {
        SeriesValue::exact(Float::new(p))
    } else if z < 0 {
        let az = Float::with_val(p, z.abs_ref());
        alternating_shifted_zeta(&a, |m| Float::with_val(p, (&az).pow(m)) / m, p)
    } else if ratio < 0.75 {
        let a1 = Float::with_val(p, &a + 1u32);
        let mut s = Float::new(p);
        let mut pw = Float::with_val(p, z.square_ref());
        let eps = Float::with_val(p, 1) >> (p + 4);
        let mut m = 2u32;
        loop {
            let t = hurwitz_zeta_f(&Float::with_val(p, m), &a1, p) * &pw / m;
            s += &t;
            if t.abs() < eps {
                break;
            }
            pw *= &z;
            m += 1;
        }
        SeriesValue::new(s, ctx.tol() / 16.0, m as usize, Method::DirectSum)
    } else {
        // Σ_{k≥1} [−ln(1 − z/(k+a)) − z/(k+a)]
        let zc = z.clone();
        let ac = a.clone();
        let phi = move |x: &Jet| {
            let q = x.prec();
            let u = (x + &Float::with_val(q, &ac)).recip().scale(&Float::with_val(q, &zc));
            let l = u.scale(&Float::with_val(q, -1)).ln_1p();
            let s = &l + &u;
            s.scale(&Float::with_val(q, -1))
        };
        sum_with_em_tail(phi, 1, ctx)
    };
    let az = Float::with_val(p, &a - &z);
    let za = Float::with_val(p, &z / &a);
    let rhs = Float::with_val(p, &za) + Float::with_val(p, (-za).ln_1p_ref()) + ln_gamma_f(&az, p) - ln_gamma_f(&a, p)
        + Float::with_val(p, &z * digamma_f(&a, p));
    Ok(IdentityPair {
        lhs,
        rhs: SeriesValue::closed(rhs),
    })
}

/// `M_j` of Lemma 4: Σ_{m≥2} (−1)^m t^m / ((m+j)(k+a)^m).
#[derive(Clone, Debug)]
pub struct MjValue {
    pub j: u32,
    pub k: u64,
    pub a: f64,
    pub t: Option<f64>,
    pub value: Float,
}

/// Σ_{m≥2} (−z)^m/(m+j), by the series for |z| < 1/2 and otherwise by
/// (−1)^j z^{−j}[z − ln(1+z) − Σ_{m=2}^{j+1} (−1)^m z^m/m].
pub fn mj_of(j: u32, z: &Float, prec: u32) -> Float {
    if z.is_zero() {
        return Float::new(prec);
    }
    if z.to_f64().abs() < 0.5 {
        let mut s = Float::new(prec);
        let mut pw = Float::with_val(prec, z.square_ref());
        let eps = Float::with_val(prec, z.square_ref()) >> (prec + 8);
        for m in 2u32.. {
            let t = Float::with_val(prec, &pw / (m + j));
            if t.clone().abs() < eps {
                break;
            }
            if m % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            pw *= z;
        }
        return s;
    }
    let q = prec + 2 * j + 24;
    let z = Float::with_val(q, z);
    let mut s = Float::with_val(q, &z) - Float::with_val(q, z.ln_1p_ref());
    let mut pw = Float::with_val(q, &z);
    for m in 2..=j + 1 {
        pw *= &z;
        let t = Float::with_val(q, &pw / m);
        if m % 2 == 0 {
            s -= t;
        } else {
            s += t;
        }
    }
    let v = s / Float::with_val(q, (&z).pow(j));
    Float::with_val(prec, if j % 2 == 0 { v } else { -v })
}

/// [`mj_of`] on a jet argument.
pub fn mj_jet(j: u32, z: &Jet) -> Jet {
    let prec = z.prec();
    if z.value().to_f64().abs() < 0.5 {
        let mut s = Jet::constant(prec, &Float::new(prec), z.order());
        let mut pw = z * z;
        let eps = Float::with_val(prec, z.value().square_ref()) >> (prec + 8);
        for m in 2u32.. {
            let t = pw.scale(&Float::with_val(prec, m + j).recip());
            if t.value().clone().abs() < eps && m > 4 {
                break;
            }
            s = if m % 2 == 0 { &s + &t } else { &s - &t };
            pw = &pw * z;
        }
        return s;
    }
    let mut s = z - &z.ln_1p();
    let mut pw = z.clone();
    for m in 2..=j + 1 {
        pw = &pw * z;
        let t = pw.scale(&Float::with_val(prec, m).recip());
        s = if m % 2 == 0 { &s - &t } else { &s + &t };
    }
    let v = s.div(&z.powi(j as i32));
    if j % 2 == 0 {
        v
    } else {
        -&v
    }
}

/// [`mj_of`] at a complex argument.
pub fn mj_cx(j: u32, z: &Cx, prec: u32) -> Cx {
    let mut s = Cx::real(&Float::new(prec));
    if z.abs().to_f64() < 0.5 {
        let mut pw = z.mul(z);
        let eps = z.norm_sqr() >> (prec + 8);
        for m in 2u32.. {
            let t = pw.scale(&Float::with_val(prec, m + j).recip());
            if t.abs() < eps {
                break;
            }
            s = if m % 2 == 0 { s.add(&t) } else { s.sub(&t) };
            pw = pw.mul(z);
        }
        return s;
    }
    s = z.sub(&z.ln_1p());
    let mut pw = z.clone();
    for m in 2..=j + 1 {
        pw = pw.mul(z);
        let t = pw.scale(&Float::with_val(prec, m).recip());
        s = if m % 2 == 0 { s.sub(&t) } else { s.add(&t) };
    }
    let v = s.div(&z.powi(j as i32));
    if j % 2 == 0 {
        v
    } else {
        v.scale(&Float::with_val(prec, -1))
    }
}

fn mj_argument(k: u64, a: &Float, t: Option<&Float>, prec: u32) -> NumResult<Float> {
    positive(a, "M_j")?;
    let ka = Float::with_val(prec, a + k);
    match t {
        Some(t) => {
            if Float::with_val(53, t.abs_ref()) >= 1 {
                return Err(NumError::Domain("M_j needs |t| < 1".into()));
            }
            Ok(Float::with_val(prec, t / ka))
        }
        None => Ok(ka.recip()),
    }
}

/// `M_j(k, t, a)` by the closed form; with `t` absent this is the t = 1
/// function, continued analytically to any k + a > 0.
pub fn m_j(j: u32, k: u64, a: &Float, t: Option<&Float>, ctx: &PrecisionContext) -> NumResult<MjValue> {
    let p = ctx.work();
    let z = mj_argument(k, a, t, p)?;
    Ok(MjValue {
        j,
        k,
        a: a.to_f64(),
        t: t.map(|v| v.to_f64()),
        value: mj_of(j, &z, p),
    })
}

/// `M_j` through z²/(j+2) · ₂F₁(1, j+2; j+3; −z), z = t/(k+a).
pub fn m_j_hypergeometric(j: u32, k: u64, a: &Float, t: Option<&Float>, ctx: &PrecisionContext) -> NumResult<Float> {
    let p = ctx.work();
    let z = mj_argument(k, a, t, p)?;
    if z.to_f64().abs() >= 1.0 {
        return Err(NumError::Domain("hypergeometric form needs |t/(k+a)| < 1".into()));
    }
    let f = gauss_2f1_family_f(j, &Float::with_val(p, -&z), p);
    Ok(Float::with_val(p, z.square_ref()) * f / (j + 2))
}

/// `M_j` by summing its defining series term by term.
pub fn m_j_series(j: u32, k: u64, a: &Float, t: Option<&Float>, terms: u32, prec: u32) -> NumResult<Float> {
    let z = mj_argument(k, a, t, prec)?;
    let mut s = Float::new(prec);
    let mut pw = Float::with_val(prec, z.square_ref());
    for m in 2..terms + 2 {
        let v = Float::with_val(prec, &pw / (m + j));
        if m % 2 == 0 {
            s += v;
        } else {
            s -= v;
        }
        pw *= &z;
    }
    Ok(s)
}

/// `M_{j+1}` from `M_j`: −M_j/z + z/(j+2) with z = t/(k+a).
pub fn m_j_step(mj: &Float, j: u32, z: &Float) -> Float {
    let p = mj.prec();
    -Float::with_val(p, mj / z) + Float::with_val(p, z / (j + 2))
}

/// Σ_{k=0}^{x} (k+a)^e for integer e ≥ −1 by Bernoulli polynomials or ψ.
pub fn power_sum(e: i32, a: &Float, x: u64, prec: u32) -> Float {
    let hi = Float::with_val(prec, a + (x + 1));
    if e == -1 {
        return digamma_f(&hi, prec) - digamma_f(&Float::with_val(prec, a), prec);
    }
    if e < -1 {
        // (−1)^{n+1}/n! [ψ^{(n)}(a) − ψ^{(n)}(x+a+1)], n = −e − 1
        let n = (-e - 1) as u32;
        let d = polygamma_f(n, &Float::with_val(prec, a), prec) - polygamma_f(n, &hi, prec);
        let v = d / factorial_f(n, prec);
        return if n % 2 == 1 { v } else { -v };
    }
    let n = e as usize + 1;
    (bernoulli_poly(n, &hi) - bernoulli_poly(n, &Float::with_val(prec, a))) / n as u32
}

/// G with G′(u) = u^j ln(1 + 1/u).
fn log_part_antiderivative(j: u32, u: &Float) -> Float {
    let p = u.prec();
    let j1 = j + 1;
    let uj1 = Float::with_val(p, u.pow(j1));
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let lnu1 = Float::with_val(p, u.ln_1p_ref());
    let lnu = Float::with_val(p, u.ln_ref());
    let mut g = (Float::with_val(p, &uj1 + sign) * lnu1 - Float::with_val(p, &uj1 * lnu)) / j1;
    let mut poly = Float::new(p);
    let mut pw = Float::with_val(p, 1);
    for i in 0..=j {
        pw *= u;
        let t = Float::with_val(p, &pw / (i + 1));
        if (j - i) % 2 == 0 {
            poly += t;
        } else {
            poly -= t;
        }
    }
    g -= poly / j1;
    g + uj1 / (j1 * j1)
}

/// Σ_{k=0}^{x} (k+a)^j ln(1 + 1/(k+a)): head sum, then Euler-Maclaurin
/// on [K, x] with the closed antiderivative.
fn log_part_sum(j: u32, a: &Float, x: u64, prec: u32) -> Float {
    let k0 = 32u64.min(x);
    let mut s = Float::new(prec);
    let g = |k: &Float| {
        let u = Float::with_val(prec, a + k);
        let l = Float::with_val(prec, u.recip_ref()).ln_1p();
        Float::with_val(prec, (&u).pow(j)) * l
    };
    for k in 0..k0 {
        s += g(&Float::with_val(prec, k));
    }
    if k0 == x {
        return s + g(&Float::with_val(prec, x));
    }
    let order = ((prec / 4) as usize).max(24);
    let jet_at = |k: u64| {
        let v = Jet::var(prec, &Float::with_val(prec, a + k), order);
        let l = v.recip().ln_1p();
        &v.powi(j as i32) * &l
    };
    let lo = jet_at(k0);
    let hi = jet_at(x);
    let ua = Float::with_val(prec, a + k0);
    let ub = Float::with_val(prec, a + x);
    s += log_part_antiderivative(j, &ub) - log_part_antiderivative(j, &ua);
    s += Float::with_val(prec, &lo.c[0] + &hi.c[0]) / 2u32;
    // Σ B_{2r}/(2r)! [f^{(2r−1)}(x) − f^{(2r−1)}(K)], with c_i = f^{(i)}/i!
    let mut last = f64::INFINITY;
    for r in 1..order / 2 {
        let i = 2 * r - 1;
        let d = Float::with_val(prec, &hi.c[i] - &lo.c[i]);
        let t = bernoulli_f(2 * r, prec) * d / (2 * r) as u32;
        let m = t.to_f64().abs();
        if m > last && r > 3 {
            break;
        }
        s += t;
        last = m;
        if m == 0.0 {
            break;
        }
    }
    s
}

/// (−1)^j Σ_{k=0}^{x} of the Prop. 3 summand, split into power sums and
/// the logarithmic part.
pub fn prop3_partial(j: u32, a: &Float, x: u64, prec: u32) -> Float {
    let lx = 64 - x.leading_zeros();
    let q = prec + (j + 2) * lx + 32;
    let a = Float::with_val(q, a);
    let mut r = power_sum(j as i32 - 1, &a, x, q);
    for m in 2..=j + 1 {
        let t = power_sum(j as i32 - m as i32, &a, x, q) / m;
        if m % 2 == 0 {
            r -= t;
        } else {
            r += t;
        }
    }
    let v = r - log_part_sum(j, &a, x, q);
    let v = if j % 2 == 0 { v } else { -v };
    Float::with_val(prec, v)
}

/// Σ_{m≥2} (−1)^m ζ(m,a)/(m+j), j ∈ {1, 2, 3}: Σ_k M_j(k) against the
/// extrapolated limit of the split partial sums.
pub fn prop3_sum(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<IdentityPair> {
    if !(1..=3).contains(&j) {
        return Err(NumError::Unsupported("prop3_sum is provided for j = 1, 2, 3".into()));
    }
    positive(a, "prop3_sum")?;
    let p = ctx.work();
    let ac = Float::with_val(p, a);
    let phi = move |x: &Jet| {
        let q = x.prec();
        let z = (x + &Float::with_val(q, &ac)).recip();
        mj_jet(j, &z)
    };
    let lhs = sum_with_em_tail(phi, 0, ctx);
    let levels: Vec<u32> = (12..=34).collect();
    let mut hs = Vec::new();
    let mut vals = Vec::new();
    for &i in &levels {
        let x = 1u64 << i;
        hs.push(Float::with_val(p, x + 1).recip());
        vals.push(prop3_partial(j, a, x, p));
    }
    let rhs = richardson(&hs, &vals);
    Ok(IdentityPair { lhs, rhs })
}

/// Direct m-series Σ_{m≥2} (−1)^m ζ(m,a)/(m+j) by CVZ, for a > 1.
pub fn prop3_series(j: u32, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    if *a <= 1 {
        return Err(NumError::Domain("the m-series needs a > 1".into()));
    }
    let p = ctx.work();
    let am1 = Float::with_val(p, a - 1u32);
    Ok(alternating_shifted_zeta(&am1, |m| Float::with_val(p, m + j).recip(), p))
}

fn real_power(x: &Float, j: &Float) -> Float {
    let p = x.prec();
    if x.is_zero() {
        return Float::new(p);
    }
    Float::with_val(p, x.pow(j))
}

/// Σ_{k≥2} (−1)^k (k)_m ζ(k+m, a) t^{k+j}/(k+j) against
/// (−1)^m ∫_0^t x^j [ψ^{(m)}(x+a) − ψ^{(m)}(a)] dx.
pub fn prop4(j: &Float, m: u32, t: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<IdentityPair> {
    positive(a, "prop4")?;
    if *j <= -1 {
        return Err(NumError::Domain("prop4 needs j > −1".into()));
    }
    let at = Float::with_val(53, t.abs_ref());
    if at >= 1 {
        return Err(NumError::Domain("prop4 needs |t| < 1".into()));
    }
    if at >= *a {
        return Err(NumError::Domain("the k-series needs |t| < a".into()));
    }
    if *t < 0 && !j.is_integer() {
        return Err(NumError::Domain("negative t needs integer j".into()));
    }
    let p = ctx.work();
    if t.is_zero() {
        let z = SeriesValue::exact(Float::new(p));
        return Ok(IdentityPair { lhs: z.clone(), rhs: z });
    }
    let lhs = prop4_series(j, m, t, a, p);
    let rhs = prop4_integral(j, t, ctx, |x| {
        let q = x.prec();
        let xa = Float::with_val(q, x + a);
        let d = if m == 0 {
            digamma_f(&xa, q) - digamma_f(&Float::with_val(q, a), q)
        } else {
            polygamma_f(m, &xa, q) - polygamma_f(m, &Float::with_val(q, a), q)
        };
        if m % 2 == 0 {
            d
        } else {
            -d
        }
    });
    Ok(IdentityPair { lhs, rhs })
}

/// The Hurwitz-zeta form of the [`prop4`] right side:
/// −m! ∫_0^t x^j [ζ(m+1, x+a) − ζ(m+1, a)] dx, m ≥ 1.
pub fn prop4_zeta_route(j: &Float, m: u32, t: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    positive(a, "prop4")?;
    if m == 0 {
        return Err(NumError::Domain("the ζ form needs m ≥ 1".into()));
    }
    if Float::with_val(53, t.abs_ref()) >= 1 || *j <= -1 {
        return Err(NumError::Domain("prop4 needs |t| < 1 and j > −1".into()));
    }
    if *t < 0 && !j.is_integer() {
        return Err(NumError::Domain("negative t needs integer j".into()));
    }
    let p = ctx.work();
    let mf = factorial_f(m, p);
    let s = Float::with_val(p, m + 1);
    let v = prop4_integral(j, t, ctx, |x| {
        let q = x.prec();
        let xa = Float::with_val(q, x + a);
        let d = hurwitz_zeta_f(&s, &xa, q) - hurwitz_zeta_f(&s, &Float::with_val(q, a), q);
        -d * &mf
    });
    Ok(v)
}

fn prop4_series(j: &Float, m: u32, t: &Float, a: &Float, p: u32) -> SeriesValue {
    let eps = Float::with_val(p, 1) >> (p + 4);
    let tj = real_power(&Float::with_val(p, t.abs_ref()), j);
    let tj = if *t < 0 && j.is_integer() && (j.to_f64() as i64) % 2 != 0 { -tj } else { tj };
    let mut s = Float::new(p);
    let mut tk = Float::with_val(p, t.square_ref());
    let mut k = 2u32;
    loop {
        let mut poch = Float::with_val(p, 1);
        for i in 0..m {
            poch *= k + i;
        }
        let z = hurwitz_zeta_f(&Float::with_val(p, k + m), a, p);
        let term = poch * z * &tk * &tj / Float::with_val(p, j + k);
        let small = Float::with_val(53, term.abs_ref()) < eps;
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
        if small && k > 4 {
            break;
        }
        tk *= t;
        k += 1;
    }
    SeriesValue::new(s, 0.0, k as usize, Method::DirectSum)
}

fn prop4_integral<F>(j: &Float, t: &Float, ctx: &PrecisionContext, kernel: F) -> SeriesValue
where
    F: Fn(&Float) -> Float,
{
    let p = ctx.work();
    let zero = Float::new(p);
    let at = Float::with_val(p, t.abs_ref());
    let neg = *t < 0;
    let odd = j.is_integer() && (j.to_f64() as i64) % 2 != 0;
    let f = |y: &Float| {
        let q = y.prec();
        let x = if neg { Float::with_val(q, -y) } else { y.clone() };
        let w = real_power(y, j);
        let w = if neg && odd { -w } else { w };
        w * kernel(&x)
    };
    let v = tanh_sinh(f, &zero, &at, p, ctx.quad_tolerance);
    if neg {
        v.scale(&Float::with_val(p, -1))
    } else {
        v
    }
}

/// The three integral representations of Σ_{k≥2} (−1)^k ζ(k,a) t^k/(k+j).
#[derive(Clone, Debug)]
pub struct Prop5 {
    pub by_p1_integral: SeriesValue,
    pub by_hermite: SeriesValue,
    pub by_binet: SeriesValue,
}

impl Prop5 {
    pub fn spread(&self) -> f64 {
        let v = [&self.by_p1_integral, &self.by_hermite, &self.by_binet];
        let mut d: f64 = 0.0;
        for x in v {
            for y in v {
                d = d.max(Float::with_val(x.value.prec(), &x.value - &y.value).abs().to_f64());
            }
        }
        d
    }

    pub fn budget(&self) -> f64 {
        self.by_p1_integral.error_bound + self.by_hermite.error_bound + self.by_binet.error_bound
    }
}

fn prop5_base(j: u32, t: &Float, a: &Float, p: u32) -> Float {
    let z = Float::with_val(p, t / a);
    let c = Float::with_val(p, 0.5f64) - Float::with_val(p, a / (j + 1));
    let l = Float::with_val(p, z.ln_1p_ref());
    c * mj_of(j, &z, p) + Float::with_val(p, t / (j + 1)) * l
}

/// B(w) = 1/(1 − e^{−w}) − 1/w − 1/2.
fn binet_weight(w: &Float) -> Float {
    let p = w.prec();
    if w.to_f64() < 0.25 {
        // Σ_{i≥1} B_{2i} w^{2i−1}/(2i)!
        let mut s = Float::new(p);
        let w2 = Float::with_val(p, w.square_ref());
        let mut pw = w.clone();
        let mut fact = Float::with_val(p, 2);
        let eps = Float::with_val(p, w) >> (p + 8);
        for i in 1usize.. {
            let t = bernoulli_f(2 * i, p) * &pw / &fact;
            let small = Float::with_val(53, t.abs_ref()) < eps;
            s += t;
            if small {
                break;
            }
            pw *= &w2;
            fact *= ((2 * i + 1) * (2 * i + 2)) as u32;
        }
        return s;
    }
    let em = Float::with_val(p, (-w.clone()).exp_m1_ref());
    -em.recip() - Float::with_val(p, w.recip_ref()) - 0.5f64
}

/// E_j(x) = Σ_{k≥2} (−x)^k/((k−1)!(k+j)).
fn binet_kernel(j: u32, x: &Float) -> Float {
    let p = x.prec();
    if x.to_f64().abs() < 2.0 + j as f64 {
        let mut s = Float::new(p);
        let mut pw = Float::with_val(p, x.square_ref());
        let mut fact = Float::with_val(p, 1);
        let eps = Float::with_val(p, x.square_ref()) >> (p + 8);
        for k in 2u32.. {
            let t = Float::with_val(p, &pw / &fact) / (k + j);
            let small = Float::with_val(53, t.abs_ref()) < eps && k > 4;
            if k % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            if small {
                break;
            }
            pw *= x;
            fact *= k;
        }
        return s;
    }
    // x[1/(j+1) − j! x^{−j−1}(1 − e^{−x} Σ_{i≤j} x^i/i!)]
    let mut partial = Float::new(p);
    let mut term = Float::with_val(p, 1);
    for i in 0..=j {
        partial += &term;
        term = term * x / (i + 1);
    }
    let em = Float::with_val(p, (-x.clone()).exp());
    let inner = Float::with_val(p, 1) - em * partial;
    let xj = Float::with_val(p, x.pow(j + 1));
    let v = Float::with_val(p, j + 1).recip() - factorial_f(j, p) * inner / xj;
    v * x
}

/// Σ_{k≥2} (−1)^k ζ(k,a) t^k/(k+j) by the P₁, Hermite and Binet-type
/// integral representations.
pub fn prop5(j: u32, t: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<Prop5> {
    positive(a, "prop5")?;
    if Float::with_val(53, t.abs_ref()) >= 1 {
        return Err(NumError::Domain("prop5 needs |t| < 1".into()));
    }
    if Float::with_val(53, t + a) <= 0 {
        return Err(NumError::Domain("prop5 needs t + a > 0".into()));
    }
    let p = ctx.work();
    if t.is_zero() {
        let z = SeriesValue::exact(Float::new(p));
        return Ok(Prop5 {
            by_p1_integral: z.clone(),
            by_hermite: z.clone(),
            by_binet: z,
        });
    }
    let base = SeriesValue::closed(prop5_base(j, t, a, p));

    // −∫_0^∞ P₁(x)[t²/((x+a)²(x+t+a)) − j M_j(t/(x+a))/(x+a)] dx
    let tc = Float::with_val(p, t);
    let ac = Float::with_val(p, a);
    let g = move |x: &Jet| {
        let q = x.prec();
        let xa = x + &Float::with_val(q, &ac);
        let xta = &xa + &Float::with_val(q, &tc);
        let t2 = Float::with_val(q, tc.square_ref());
        let first = (&(&xa * &xa) * &xta).recip().scale(&t2);
        let inv = xa.recip();
        let z = inv.scale(&Float::with_val(q, &tc));
        let second = (&mj_jet(j, &z) * &inv).scale(&Float::with_val(q, j));
        &first - &second
    };
    let pr = p1_integral(&g, 0, 0, ctx);
    let by_p1_integral = base.sub(&pr).with_method(Method::Combined);

    // 2∫_0^∞ Im M_j(t/(a − iy)) dy/(e^{2πy} − 1)
    let h = |y: &Float| {
        let q = y.prec();
        if y.is_zero() {
            return Float::new(q);
        }
        let den = Cx::new(Float::with_val(q, a), Float::with_val(q, -y));
        let z = Cx::real(&Float::with_val(q, t)).div(&den);
        let im = mj_cx(j, &z, q).im;
        let e = Float::with_val(q, Float::with_val(q, y * pi(q) * 2u32).exp_m1_ref());
        im * 2u32 / e
    };
    let zero = Float::new(p);
    let hr = exp_sinh(h, &zero, p, ctx.quad_tolerance);
    let by_hermite = base.add(&hr).with_method(Method::Combined);

    // ∫_0^∞ B(w) e^{−aw} E_j(tw)/w dw
    let b = |w: &Float| {
        let q = w.prec();
        if w.is_zero() {
            return Float::new(q);
        }
        let tw = Float::with_val(q, t * w);
        let decay = Float::with_val(q, -Float::with_val(q, a * w)).exp();
        binet_weight(w) * decay * binet_kernel(j, &tw) / w
    };
    let br = exp_sinh(b, &zero, p, ctx.quad_tolerance);
    let by_binet = base.add(&br).with_method(Method::Combined);
    Ok(Prop5 {
        by_p1_integral,
        by_hermite,
        by_binet,
    })
}

/// Σ_{k≥2} (−1)^k ζ(k,a) t^k/(k+j) summed directly, for |t| < a.
pub fn prop5_series(j: u32, t: &Float, a: &Float, ctx: &PrecisionContext) -> NumResult<SeriesValue> {
    positive(a, "prop5")?;
    if Float::with_val(53, t.abs_ref()) >= *a {
        return Err(NumError::Domain("the k-series needs |t| < a".into()));
    }
    Ok(prop5_series_raw(j, t, a, ctx.work()))
}

fn prop5_series_raw(j: u32, t: &Float, a: &Float, p: u32) -> SeriesValue {
    let eps = Float::with_val(p, 1) >> (p + 4);
    let mut s = Float::new(p);
    let mut tk = Float::with_val(p, t.square_ref());
    let mut k = 2u32;
    loop {
        let term = hurwitz_zeta_f(&Float::with_val(p, k), a, p) * &tk / (k + j);
        let small = Float::with_val(53, term.abs_ref()) < eps;
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
        if small {
            break;
        }
        tk *= t;
        k += 1;
    }
    SeriesValue::new(s, 0.0, k as usize, Method::DirectSum)
}
