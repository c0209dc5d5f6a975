//! Energy-detection performance: single operating points and averages
//! over a fading SNR distribution.
//!
//! [`DetectorConfig`] fixes the operating point and answers the
//! fixed-SNR questions (false alarm, threshold selection, instantaneous
//! detection). The `pd_avg_*` family averages the low-SNR detection
//! probability over a [`crate::mixture_gamma::MixtureGamma`] SNR law, by
//! closed form or by quadrature; [`p_md`] is the complementary
//! missed-detection probability.

mod average;
mod erfcx_deriv;
mod model;

pub use average::{
    closed_form_applicable, p_md, pd_avg, pd_avg_closed_form, pd_avg_quadrature, Method,
    ResolvedMethod, MAX_CLOSED_FORM_SHAPE,
};
pub use model::{threshold_for_pf, DetectorConfig, DetectorConstants, SignalModel};
