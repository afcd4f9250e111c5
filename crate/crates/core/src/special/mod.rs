pub mod gamma;
pub mod hyp;
pub mod incgamma;
pub mod laguerre;
pub mod polylog;
pub mod zeta;

pub use gamma::{digamma, euler_gamma, ln_gamma, polygamma};
pub use hyp::gauss_2f1_family;
pub use incgamma::upper_incomplete_gamma0;
pub use laguerre::laguerre;
pub use polylog::polylog;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_route, hurwitz_zeta_sderiv, ZetaRoute};
