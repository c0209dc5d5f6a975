//! Analytic and simulated detection performance of an energy detector
//! operating over composite fading channels.
//!
//! The library models the received SNR with two composite families,
//! alpha-kappa-mu/Gamma and alpha-eta-mu/Gamma (small-scale fading with a
//! gamma-distributed shadow power), replaces either exact density by a
//! finite mixture of gamma densities fitted through Gauss-Laguerre nodes,
//! and evaluates the average detection probability of a Gaussian-statistic
//! energy detector over that mixture. Two independent analytic routes
//! (term-wise quadrature and a repeated-derivative closed form) plus a
//! Monte Carlo path cross-check each other.
//!
//! Modules:
//! * [`specfun`] - self-contained special functions and quadrature rules
//! * [`mixture_gamma`] - the mixture-of-gammas SNR density type
//! * [`fading`] - composite channel parameters, exact densities, MG fitting
//! * [`detector`] - false-alarm/detection probabilities and their averages
//! * [`montecarlo`] - channel samplers and empirical detection estimates
//! * [`cli`] - config-driven experiment sweeps behind the `mgsense` binary
//!
//! With the default `parallel` feature, sweep grids, fidelity scans and
//! sampling batches run on rayon; disabling the feature selects sequential
//! fallbacks with identical outputs.

pub mod cli;
pub mod detector;
mod error;
pub mod fading;
pub mod mixture_gamma;
pub mod montecarlo;
mod par;
pub mod specfun;

pub use error::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
