//! Mixture-gamma approximation of the composite SNR densities.
//!
//! Substituting the small-scale power integral into Gauss-Laguerre form
//! turns the shadowing mixture into a finite sum of gamma kernels: node
//! x_i contributes a term with shape equal to the shadowing shape and rate
//! proportional to x_i^(-2/alpha). Raw node weights are assembled in log
//! space and the mixture is normalized to unit mass at the end, which also
//! cancels every gamma-independent prefactor of the density.

use super::params::{AlphaEtaMuShadowParams, AlphaKappaMuShadowParams};
use crate::mixture_gamma::{MgTerm, MixtureGamma};
use crate::specfun::{bessel_i_ratio_ln, gauss_laguerre, ln_gamma};
use crate::{Error, Result};

/// Default number of mixture terms used by the command-line tools.
pub const DEFAULT_TERMS: usize = 20;

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// Shared node loop. `ln_scale_c` is the log of the substitution constant
/// (mu(1+kappa) or 2 mu h), `x_exponent` the power of the node carried by
/// the raw weight, and `ln_bessel_ratio` the log Bessel ratio at a node.
fn build_mixture<F>(
    op: &'static str,
    terms: usize,
    k_shadow: f64,
    omega: f64,
    alpha: f64,
    ln_scale_c: f64,
    x_exponent: f64,
    ln_bessel_ratio: F,
) -> Result<MixtureGamma>
where
    F: Fn(f64) -> Result<f64>,
{
    let rule = gauss_laguerre(terms)?;
    let ln_gamma_k = ln_gamma(k_shadow)?;
    let two_over_alpha = 2.0 / alpha;

    let mut ln_theta = Vec::with_capacity(terms);
    let mut ln_rate = Vec::with_capacity(terms);
    for i in 0..terms {
        let x = rule.nodes[i];
        let lt = rule.ln_weights[i] + x_exponent * x.ln() + ln_bessel_ratio(x)?;
        if lt.is_nan() || lt == f64::INFINITY {
            return Err(Error::Fit {
                node: i,
                msg: format!("{op}: raw weight is {lt} at node x = {x}"),
            });
        }
        ln_theta.push(lt);
        ln_rate.push(two_over_alpha * (ln_scale_c - x.ln()) - omega.ln());
    }

    let ln_mass: Vec<f64> = (0..terms)
        .map(|i| ln_theta[i] + ln_gamma_k - k_shadow * ln_rate[i])
        .collect();
    let total = log_sum_exp(&ln_mass);
    if total == f64::NEG_INFINITY || !total.is_finite() {
        return Err(Error::Fit { node: 0, msg: format!("{op}: mixture mass degenerate") });
    }

    let mut out = Vec::with_capacity(terms);
    for i in 0..terms {
        let rate = ln_rate[i].exp();
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::Fit {
                node: i,
                msg: format!("{op}: rate {rate} out of range"),
            });
        }
        if i > 0 && rate >= ln_rate[i - 1].exp() {
            return Err(Error::Fit {
                node: i,
                msg: format!("{op}: rates not strictly decreasing"),
            });
        }
        out.push(MgTerm { weight: (ln_theta[i] - total).exp(), shape: k_shadow, rate });
    }
    MixtureGamma::new(out)
}

/// Fits a `terms`-component gamma mixture to the alpha-kappa-mu composite
/// density. The mixture has unit mass by construction.
pub fn mg_from_akm(p: &AlphaKappaMuShadowParams, terms: usize) -> Result<MixtureGamma> {
    let c = p.mu * (1.0 + p.kappa);
    let x_exponent = (p.mu - 1.0) - 2.0 * p.k_shadow / p.alpha;
    let (kappa, mu) = (p.kappa, p.mu);
    build_mixture(
        "mg_from_akm",
        terms,
        p.k_shadow,
        p.omega,
        p.alpha,
        c.ln(),
        x_exponent,
        |x| bessel_i_ratio_ln(mu - 1.0, 2.0 * (kappa * mu * x).sqrt()),
    )
}

/// Fits a `terms`-component gamma mixture to the alpha-eta-mu composite
/// density. The mixture has unit mass by construction.
pub fn mg_from_aem(p: &AlphaEtaMuShadowParams, terms: usize) -> Result<MixtureGamma> {
    let (h, big_h, mu) = (p.h(), p.big_h(), p.mu);
    let c = 2.0 * mu * h;
    let x_exponent = (2.0 * mu - 1.0) - 2.0 * p.k_shadow / p.alpha;
    let ratio_scale = big_h.abs() / h;
    build_mixture(
        "mg_from_aem",
        terms,
        p.k_shadow,
        p.omega,
        p.alpha,
        c.ln(),
        x_exponent,
        |x| bessel_i_ratio_ln(mu - 0.5, ratio_scale * x),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::params::EtaFormat;
    use crate::fading::pdf::{exact_pdf_aem, exact_pdf_akm};

    fn akm(alpha: f64, kappa: f64, mu: f64) -> AlphaKappaMuShadowParams {
        AlphaKappaMuShadowParams::new(alpha, kappa, mu, 4.0, 10f64.powf(-0.5)).unwrap()
    }

    fn aem(alpha: f64, eta: f64, mu: f64) -> AlphaEtaMuShadowParams {
        AlphaEtaMuShadowParams::new(alpha, eta, EtaFormat::FormatI, mu, 4.0, 10f64.powf(-0.5))
            .unwrap()
    }

    #[test]
    fn unit_mass_by_construction() {
        for &(a, ka, mu) in &[(1.0, 0.5, 1.0), (2.0, 1.0, 2.0), (3.0, 5.0, 1.0), (2.5, 2.0, 0.5)] {
            let mg = mg_from_akm(&akm(a, ka, mu), 20).unwrap();
            assert!((mg.total_mass() - 1.0).abs() < 1e-13, "akm ({a},{ka},{mu})");
        }
        for &(a, eta, mu) in &[(1.0, 0.25, 0.5), (2.0, 0.5, 1.0), (3.0, 0.9, 2.0)] {
            let mg = mg_from_aem(&aem(a, eta, mu), 20).unwrap();
            assert!((mg.total_mass() - 1.0).abs() < 1e-13, "aem ({a},{eta},{mu})");
        }
    }

    #[test]
    fn term_structure() {
        let p = akm(2.0, 1.0, 1.5);
        let mg = mg_from_akm(&p, 20).unwrap();
        assert_eq!(mg.term_count(), 20);
        let mut prev_rate = f64::INFINITY;
        for t in mg.terms() {
            assert_eq!(t.shape, p.k_shadow);
            assert!(t.weight >= 0.0 && t.weight.is_finite());
            assert!(t.rate < prev_rate);
            prev_rate = t.rate;
        }
    }

    #[test]
    fn fitted_pdf_tracks_exact_akm() {
        let p = akm(2.0, 1.0, 1.0);
        let mg = mg_from_akm(&p, 25).unwrap();
        let scale = p.k_shadow * p.omega;
        for &g in &[0.1 * scale, 0.5 * scale, scale, 2.0 * scale] {
            let exact = exact_pdf_akm(&p, g).unwrap();
            let fit = mg.pdf(g).unwrap();
            assert!(
                (fit - exact).abs() <= 5e-3 * exact,
                "gamma = {g}: fit {fit}, exact {exact}"
            );
        }
    }

    #[test]
    fn fitted_pdf_tracks_exact_aem() {
        let p = aem(2.0, 0.5, 1.0);
        let mg = mg_from_aem(&p, 25).unwrap();
        let scale = p.k_shadow * p.omega;
        for &g in &[0.1 * scale, 0.5 * scale, scale, 2.0 * scale] {
            let exact = exact_pdf_aem(&p, g).unwrap();
            let fit = mg.pdf(g).unwrap();
            assert!(
                (fit - exact).abs() <= 5e-3 * exact,
                "gamma = {g}: fit {fit}, exact {exact}"
            );
        }
    }

    #[test]
    fn mean_matches_composite_mean_at_alpha_two() {
        // At alpha = 2 the SNR is shadow times unit-mean power, so the
        // composite mean is exactly k * omega.
        let p = akm(2.0, 2.0, 1.5);
        let mg = mg_from_akm(&p, 30).unwrap();
        let want = p.k_shadow * p.omega;
        assert!((mg.moment(1) - want).abs() < 1e-5 * want, "{}", mg.moment(1));

        let q = aem(2.0, 0.4, 1.0);
        let mg = mg_from_aem(&q, 30).unwrap();
        assert!((mg.moment(1) - want).abs() < 1e-5 * want, "{}", mg.moment(1));
    }

    #[test]
    fn single_term_fit_works() {
        let mg = mg_from_akm(&akm(2.0, 1.0, 1.0), 1).unwrap();
        assert_eq!(mg.term_count(), 1);
        assert!((mg.total_mass() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn term_count_limits_come_from_quadrature() {
        assert!(mg_from_akm(&akm(2.0, 1.0, 1.0), 0).is_err());
        assert!(mg_from_akm(&akm(2.0, 1.0, 1.0), 201).is_err());
    }

    #[test]
    fn deterministic() {
        let a = mg_from_akm(&akm(2.0, 1.0, 1.0), 20).unwrap();
        let b = mg_from_akm(&akm(2.0, 1.0, 1.0), 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn boundary_mu_half_is_accepted() {
        let mg = mg_from_akm(&akm(2.0, 1.0, 0.5), 20).unwrap();
        assert!((mg.total_mass() - 1.0).abs() < 1e-13);
    }
}
