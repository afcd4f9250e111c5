//! Shared fixtures for the criterion benches in `benches/`.

use rug::Float;
use stieltjes_core::PrecisionContext;

/// Precisions the benches sweep.
pub const BITS: [u32; 3] = [64, 128, 256];

pub fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits)
}

/// `x` at the working precision of `ctx`.
pub fn arg(ctx: &PrecisionContext, x: f64) -> Float {
    Float::with_val(ctx.work(), x)
}
