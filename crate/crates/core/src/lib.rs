//! High-precision Stieltjes constants, Hurwitz zeta sums and the η
//! coefficients of −ζ′/ζ, each computed by more than one route.

pub mod bernoulli;
pub mod binomial;
pub mod context;
pub mod cx;
pub mod eta;
pub mod floor;
pub mod harness;
pub mod hurwitz_sums;
pub mod jet;
pub mod quad;
pub mod report;
pub mod sieve;
pub mod special;
pub mod stieltjes;
pub mod summation;

pub use context::{Method, NumError, NumResult, PrecisionContext, SeriesValue};
pub use floor::{euler_maclaurin_sum, integrate_floor_split, periodized_bernoulli, FloorIntegrand};
pub use jet::Jet;
pub use quad::{integrate_adaptive, Upper};
pub use sieve::{von_mangoldt_table, VonMangoldtTable};
pub use special::*;
