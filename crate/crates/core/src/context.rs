//! Working precision, computed values and the error type shared by every module.

use rug::Float;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Working precision, truncation limits and tolerances for one evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub precision_bits: u32,
    pub max_terms: usize,
    pub quad_tolerance: f64,
    pub series_tolerance: f64,
}

impl PrecisionContext {
    /// Context with tolerances a few bits above the unit roundoff of `bits`.
    pub fn new(bits: u32) -> Self {
        let bits = bits.max(64);
        let tol = (2.0f64).powi(-(bits as i32 - 8));
        PrecisionContext {
            precision_bits: bits,
            max_terms: 1 << 20,
            quad_tolerance: tol,
            series_tolerance: tol,
        }
    }

    pub fn validate(&self) -> Result<(), NumError> {
        if self.precision_bits < 64 {
            return Err(NumError::Domain("precision_bits must be at least 64".into()));
        }
        if self.max_terms < 16 {
            return Err(NumError::Domain("max_terms must be at least 16".into()));
        }
        if !(self.quad_tolerance > 0.0 && self.series_tolerance > 0.0) {
            return Err(NumError::Domain("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// Internal working precision.
    pub fn work(&self) -> u32 {
        self.precision_bits + GUARD_BITS
    }

    /// Same tolerances, more bits.
    pub fn with_extra_bits(&self, extra: u32) -> Self {
        PrecisionContext {
            precision_bits: self.precision_bits + extra,
            ..self.clone()
        }
    }

    /// Tightest tolerance worth asking of a sub-computation.
    pub fn tol(&self) -> f64 {
        self.series_tolerance.min(self.quad_tolerance)
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.work(), x)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(128)
    }
}

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSum,
    EulerMaclaurin,
    Quadrature,
    ClosedForm,
    Accelerated,
    Extrapolated,
    Combined,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::DirectSum => "direct-sum",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed-form",
            Method::Accelerated => "accelerated",
            Method::Extrapolated => "extrapolated",
            Method::Combined => "combined",
        };
        f.write_str(s)
    }
}

/// A computed value with an absolute error estimate.
///
/// `heuristic` is set when the estimate comes from term comparison or level
/// differences rather than from a proven remainder bound.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: Float,
    pub error_bound: f64,
    pub heuristic: bool,
    pub terms_used: usize,
    pub method: Method,
}

impl SeriesValue {
    pub fn new(value: Float, error_bound: f64, terms_used: usize, method: Method) -> Self {
        SeriesValue {
            value,
            error_bound: error_bound.abs(),
            heuristic: true,
            terms_used,
            method,
        }
    }

    pub fn exact(value: Float) -> Self {
        SeriesValue {
            value,
            error_bound: 0.0,
            heuristic: false,
            terms_used: 0,
            method: Method::ClosedForm,
        }
    }

    /// Closed-form value whose only error is rounding at its own precision.
    pub fn closed(value: Float) -> Self {
        let err = ulp_of(&value);
        SeriesValue {
            value,
            error_bound: err,
            heuristic: false,
            terms_used: 0,
            method: Method::ClosedForm,
        }
    }

    pub fn rigorous(mut self) -> Self {
        self.heuristic = false;
        self
    }

    pub fn with_method(mut self, m: Method) -> Self {
        self.method = m;
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Sum of values; errors add, heuristic if either is.
    pub fn add(&self, other: &SeriesValue) -> SeriesValue {
        SeriesValue {
            value: Float::with_val(self.value.prec().max(other.value.prec()), &self.value + &other.value),
            error_bound: self.error_bound + other.error_bound,
            heuristic: self.heuristic || other.heuristic,
            terms_used: self.terms_used + other.terms_used,
            method: Method::Combined,
        }
    }

    pub fn sub(&self, other: &SeriesValue) -> SeriesValue {
        SeriesValue {
            value: Float::with_val(self.value.prec().max(other.value.prec()), &self.value - &other.value),
            error_bound: self.error_bound + other.error_bound,
            heuristic: self.heuristic || other.heuristic,
            terms_used: self.terms_used + other.terms_used,
            method: Method::Combined,
        }
    }

    pub fn scale(&self, c: &Float) -> SeriesValue {
        SeriesValue {
            value: Float::with_val(self.value.prec(), &self.value * c),
            error_bound: self.error_bound * c.to_f64().abs(),
            heuristic: self.heuristic,
            terms_used: self.terms_used,
            method: self.method,
        }
    }

    /// Value rounded to `bits`, as used at serialization boundaries.
    pub fn rounded(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.value)
    }
}

/// Combine a list of pieces by addition.
pub fn sum_values<'a, I: IntoIterator<Item = &'a SeriesValue>>(prec: u32, parts: I) -> SeriesValue {
    let mut acc = SeriesValue {
        value: Float::with_val(prec, 0),
        error_bound: 0.0,
        heuristic: false,
        terms_used: 0,
        method: Method::Combined,
    };
    for p in parts {
        acc = acc.add(p);
    }
    acc
}

/// One unit in the last place of `x` at its own precision, as f64.
pub fn ulp_of(x: &Float) -> f64 {
    if x.is_zero() || !x.is_finite() {
        return 0.0;
    }
    let e = x.get_exp().unwrap_or(0);
    (2.0f64).powi(e - x.prec() as i32)
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("accuracy not reached: {msg} (best estimate {best}, error {error:e})")]
    Accuracy { msg: String, best: String, error: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing dependency: {0}")]
    Dependency(String),
}

impl NumError {
    pub fn accuracy(msg: impl Into<String>, best: &Float, error: f64) -> Self {
        NumError::Accuracy {
            msg: msg.into(),
            best: best.to_string_radix(10, Some(20)),
            error,
        }
    }
}

pub type NumResult<T> = Result<T, NumError>;
