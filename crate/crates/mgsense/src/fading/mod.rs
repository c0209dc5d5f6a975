//! Composite fading channels: nonlinear small-scale fading (kappa-mu or
//! eta-mu families with an alpha power exponent) whose mean is itself
//! gamma-shadowed.
//!
//! Three views of the same channel live here: the exact SNR density
//! obtained by numerical integration over the shadowing ([`exact_pdf_akm`],
//! [`exact_pdf_aem`]), a finite mixture-gamma stand-in fitted by
//! Gauss-Laguerre quadrature ([`mg_from_akm`], [`mg_from_aem`]), and the
//! total variation distance between the two ([`total_variation`]), which is
//! how fit quality is judged everywhere in this crate.

mod fit;
mod metrics;
mod params;
mod pdf;

pub use fit::{mg_from_aem, mg_from_akm, DEFAULT_TERMS};
pub use metrics::{total_variation, total_variation_sequential, tv_grid, TV_GRID_POINTS};
pub use params::{
    db_to_linear, AlphaEtaMuShadowParams, AlphaKappaMuShadowParams, ChannelParams, EtaFormat,
};
pub use pdf::{exact_pdf_aem, exact_pdf_akm};

use crate::mixture_gamma::MixtureGamma;
use crate::Result;

impl ChannelParams {
    /// Fits the mixture-gamma stand-in for this channel.
    pub fn fit_mixture(&self, terms: usize) -> Result<MixtureGamma> {
        match self {
            ChannelParams::Akm(p) => mg_from_akm(p, terms),
            ChannelParams::Aem(p) => mg_from_aem(p, terms),
        }
    }

    /// Exact SNR density of this channel at `gamma` > 0.
    pub fn exact_pdf(&self, gamma: f64) -> Result<f64> {
        match self {
            ChannelParams::Akm(p) => exact_pdf_akm(p, gamma),
            ChannelParams::Aem(p) => exact_pdf_aem(p, gamma),
        }
    }
}
