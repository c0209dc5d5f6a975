//! Exact composite SNR densities, evaluated by integrating the
//! small-scale density against the gamma shadowing law.
//!
//! All conditional densities are assembled in log space. The Bessel factor
//! enters through ln(I_v(z)/z^v), which is finite at z = 0 and even in z,
//! so the negative-H half of format II needs no special casing.

use super::params::{AlphaEtaMuShadowParams, AlphaKappaMuShadowParams};
use crate::specfun::integrate::adaptive_seeded;
use crate::specfun::{bessel_i_ratio_ln, ln_gamma};
use crate::{Error, Result};
use std::cell::RefCell;

/// ln of the unit-mean kappa-mu power density at w > 0.
pub(crate) fn ln_w_pdf_km(kappa: f64, mu: f64, w: f64) -> Result<f64> {
    let z = 2.0 * mu * (kappa * (1.0 + kappa) * w).sqrt();
    let ratio = bessel_i_ratio_ln(mu - 1.0, z)?;
    Ok(mu.ln()
        + (mu - 1.0) * (2.0 * mu).ln()
        + mu * (1.0 + kappa).ln()
        - kappa * mu
        + (mu - 1.0) * w.ln()
        - mu * (1.0 + kappa) * w
        + ratio)
}

/// ln of the unit-mean eta-mu power density at w > 0, in terms of the
/// format-independent constants h and H.
pub(crate) fn ln_w_pdf_em(h: f64, big_h: f64, mu: f64, w: f64) -> Result<f64> {
    let z = 2.0 * mu * big_h.abs() * w;
    let ratio = bessel_i_ratio_ln(mu - 0.5, z)?;
    Ok(std::f64::consts::LN_2
        + 0.5 * std::f64::consts::PI.ln()
        + (mu + 0.5) * mu.ln()
        + (mu - 0.5) * (2.0 * mu).ln()
        + mu * h.ln()
        - ln_gamma(mu)?
        + (2.0 * mu - 1.0) * w.ln()
        - 2.0 * mu * h * w
        + ratio)
}

/// Shared shadowing integral. `ln_w_pdf` is the log small-scale power
/// density; `w_kill` bounds the w beyond which it is numerically zero.
fn composite_pdf<F>(
    alpha: f64,
    k_shadow: f64,
    omega: f64,
    w_kill: f64,
    ln_w_pdf: F,
    gamma: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain(
            "composite pdf",
            format!("gamma = {gamma} must be positive and finite"),
        ));
    }
    let ln_gamma_k = ln_gamma(k_shadow)?;
    let half_alpha = 0.5 * alpha;
    let ln_g = gamma.ln();

    // Below y_lo the small-scale factor has decayed past e^{-2000}; above
    // y_hi the shadowing density has. Outside the window the integrand is
    // zero to machine precision.
    let y_lo = gamma * w_kill.powf(-2.0 / alpha);
    let y_hi = omega * (800.0 + 30.0 * k_shadow);
    if y_lo >= y_hi {
        return Ok(0.0);
    }

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |v: f64| -> f64 {
        // y = e^v; w = (gamma / y)^(alpha/2), with the dv Jacobian folded in.
        let w = (half_alpha * (ln_g - v)).exp();
        let lw = match ln_w_pdf(w) {
            Ok(l) => l,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        let ln_val = lw + half_alpha.ln() + (half_alpha - 1.0) * ln_g - half_alpha * v
            + (k_shadow - 1.0) * v
            - v.exp() / omega
            - ln_gamma_k
            - k_shadow * omega.ln()
            + v;
        ln_val.exp()
    };

    let (v_lo, v_hi) = (y_lo.ln(), y_hi.ln());
    let n_seed = 48;
    let step = (v_hi - v_lo) / (n_seed - 1) as f64;
    let seeds: Vec<f64> = (0..n_seed).map(|i| v_lo + step * i as f64).collect();
    let est = adaptive_seeded(&integrand, &seeds, 1e-8, 1e-16)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est.value)
}

/// Exact SNR density of alpha-kappa-mu fading under gamma shadowing.
pub fn exact_pdf_akm(p: &AlphaKappaMuShadowParams, gamma: f64) -> Result<f64> {
    let (kappa, mu) = (p.kappa, p.mu);
    // Net exponent of the w-density is -mu(1+kappa)w + O(sqrt(w)).
    let w_kill = 2000.0 / (mu * (1.0 + kappa));
    composite_pdf(
        p.alpha,
        p.k_shadow,
        p.omega,
        w_kill,
        |w| ln_w_pdf_km(kappa, mu, w),
        gamma,
    )
}

/// Exact SNR density of alpha-eta-mu fading under gamma shadowing.
pub fn exact_pdf_aem(p: &AlphaEtaMuShadowParams, gamma: f64) -> Result<f64> {
    let (h, big_h, mu) = (p.h(), p.big_h(), p.mu);
    // Net exponent is -2 mu (h - |H|) w, and h - |H| >= 1/2.
    let w_kill = 2000.0 / (2.0 * mu * (h - big_h.abs()));
    composite_pdf(
        p.alpha,
        p.k_shadow,
        p.omega,
        w_kill,
        |w| ln_w_pdf_em(h, big_h, mu, w),
        gamma,
    )
}
