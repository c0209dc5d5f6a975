//! Self-contained special functions and quadrature used by the rest of
//! the crate: the complementary error function family, log-gamma, the
//! regularized incomplete gamma, modified Bessel functions of real order,
//! Gauss-Laguerre rule construction and a general adaptive integrator.
//!
//! Everything here is plain f64 with documented accuracy; the high-precision
//! reference implementations these are tested against live in the test
//! suite, not in the library.

mod bessel;
mod erf;
mod gamma;
pub mod integrate;
mod laguerre;

pub use bessel::{bessel_i, bessel_i_scaled};
pub(crate) use bessel::{bessel_i_ratio_ln, ln_bessel_i};
pub use erf::{erf, erfc, erfcx, inv_erfc};
pub use gamma::{ln_gamma, reg_lower_gamma};
pub use laguerre::{gauss_laguerre, QuadratureRule, MAX_ORDER};
