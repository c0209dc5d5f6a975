//! A finite mixture of gamma densities over SNR,
//! f(g) = sum_v w_v g^{b_v - 1} e^{-z_v g}.
//!
//! Terms are stored raw (weight, shape, rate); nothing forces the mixture
//! to integrate to one, and [`MixtureGamma::total_mass`] reports what it
//! actually integrates to. The fitting routines in [`crate::fading`]
//! normalize their output so mass is 1 up to rounding.

use crate::specfun::{ln_gamma, reg_lower_gamma};
use crate::{Error, Result};
use serde::Serialize;

/// One mixture component: weight * g^{shape-1} * e^{-rate * g}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgTerm {
    pub weight: f64,
    pub shape: f64,
    pub rate: f64,
}

/// Mixture of gamma terms over nonnegative SNR.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureGamma {
    terms: Vec<MgTerm>,
}

impl MixtureGamma {
    /// Validates and wraps a term list: at least one term, finite
    /// nonnegative weights with at least one strictly positive, shapes and
    /// rates strictly positive. A negative weight is always a construction
    /// bug upstream and is rejected loudly; an exact zero is tolerated
    /// because far-tail fitted weights can underflow f64.
    pub fn new(terms: Vec<MgTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("MixtureGamma::new", "empty term list".to_string()));
        }
        let mut any_positive = false;
        for (i, t) in terms.iter().enumerate() {
            if !t.weight.is_finite() || t.weight < 0.0 {
                return Err(Error::domain(
                    "MixtureGamma::new",
                    format!("term {i} weight {} is negative or non-finite", t.weight),
                ));
            }
            if !(t.shape > 0.0) || !t.shape.is_finite() {
                return Err(Error::domain(
                    "MixtureGamma::new",
                    format!("term {i} shape {} must be positive", t.shape),
                ));
            }
            if !(t.rate > 0.0) || !t.rate.is_finite() {
                return Err(Error::domain(
                    "MixtureGamma::new",
                    format!("term {i} rate {} must be positive", t.rate),
                ));
            }
            any_positive |= t.weight > 0.0;
        }
        if !any_positive {
            return Err(Error::domain("MixtureGamma::new", "all weights are zero".to_string()));
        }
        Ok(MixtureGamma { terms })
    }

    pub fn terms(&self) -> &[MgTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Density value at `gamma`.
    ///
    /// Errors for negative arguments, and at exactly zero when a term with
    /// shape below one makes the density divergent there.
    pub fn pdf(&self, gamma: f64) -> Result<f64> {
        if !(gamma >= 0.0) {
            return Err(Error::domain("mg_pdf", format!("gamma = {gamma} negative")));
        }
        if gamma == 0.0 {
            let mut v = 0.0;
            for t in &self.terms {
                if t.shape < 1.0 {
                    return Err(Error::domain(
                        "mg_pdf",
                        format!("density diverges at 0 for shape {}", t.shape),
                    ));
                }
                if t.shape == 1.0 {
                    v += t.weight;
                }
            }
            return Ok(v);
        }
        Ok(self.pdf_unchecked(gamma))
    }

    /// Density at a strictly positive argument, no domain checks.
    pub(crate) fn pdf_unchecked(&self, gamma: f64) -> f64 {
        let ln_g = gamma.ln();
        self.terms
            .iter()
            .map(|t| t.weight * ((t.shape - 1.0) * ln_g - t.rate * gamma).exp())
            .sum()
    }

    /// Integral of the mixture over [0, inf):
    /// sum_v w_v Gamma(b_v) z_v^{-b_v}.
    pub fn total_mass(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let lg = ln_gamma(t.shape).expect("shape > 0 by construction");
                t.weight * (lg - t.shape * t.rate.ln()).exp()
            })
            .sum()
    }

    /// n-th raw moment of the (possibly unnormalized) mixture:
    /// sum_v w_v Gamma(b_v + n) z_v^{-(b_v + n)}. Order 0 is the mass.
    pub fn moment(&self, n: u32) -> f64 {
        let nf = n as f64;
        self.terms
            .iter()
            .map(|t| {
                let lg = ln_gamma(t.shape + nf).expect("shape + n > 0");
                t.weight * (lg - (t.shape + nf) * t.rate.ln()).exp()
            })
            .sum()
    }

    /// Cumulative distribution at `gamma`, through the regularized lower
    /// incomplete gamma of each term. Approaches `total_mass` from below.
    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        if !(gamma >= 0.0) {
            return Err(Error::domain("mg_cdf", format!("gamma = {gamma} negative")));
        }
        let mut acc = 0.0;
        for t in &self.terms {
            let lg = ln_gamma(t.shape).expect("shape > 0 by construction");
            let mass = t.weight * (lg - t.shape * t.rate.ln()).exp();
            acc += mass * reg_lower_gamma(t.shape, t.rate * gamma)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(weight: f64, shape: f64, rate: f64) -> MixtureGamma {
        MixtureGamma::new(vec![MgTerm { weight, shape, rate }]).unwrap()
    }

    #[test]
    fn pdf_of_exponential_like_term_at_zero() {
        let mg = single(2.0, 1.0, 2.0);
        assert_eq!(mg.pdf(0.0).unwrap(), 2.0);
    }

    #[test]
    fn pdf_matches_gamma_density() {
        // Normalized Gamma(shape 4, rate 1): weight = 1/Gamma(4) = 1/6.
        let mg = single(1.0 / 6.0, 4.0, 1.0);
        let want = 27.0 * (-3.0_f64).exp() / 6.0;
        assert!((mg.pdf(3.0).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn pdf_domain_rules_at_zero() {
        assert!(single(1.0, 0.5, 1.0).pdf(0.0).is_err());
        assert!(single(1.0, 1.0, 1.0).pdf(-1e-9).is_err());
        // Shapes above one contribute nothing at the origin.
        let mg = MixtureGamma::new(vec![
            MgTerm { weight: 3.0, shape: 1.0, rate: 1.0 },
            MgTerm { weight: 5.0, shape: 2.0, rate: 1.0 },
        ])
        .unwrap();
        assert_eq!(mg.pdf(0.0).unwrap(), 3.0);
    }

    #[test]
    fn construction_rejects_bad_terms() {
        assert!(MixtureGamma::new(vec![]).is_err());
        assert!(MixtureGamma::new(vec![MgTerm { weight: -1.0, shape: 1.0, rate: 1.0 }]).is_err());
        assert!(MixtureGamma::new(vec![MgTerm { weight: 1.0, shape: 0.0, rate: 1.0 }]).is_err());
        assert!(MixtureGamma::new(vec![MgTerm { weight: 1.0, shape: 1.0, rate: -2.0 }]).is_err());
        assert!(MixtureGamma::new(vec![MgTerm { weight: 0.0, shape: 1.0, rate: 1.0 }]).is_err());
    }

    #[test]
    fn total_mass_closed_forms() {
        assert!((single(1.0, 1.0, 1.0).total_mass() - 1.0).abs() < 1e-15);
        // 2 * Gamma(3) * 0.5^{-3} = 2 * 2 * 8 = 32.
        assert!((single(2.0, 3.0, 0.5).total_mass() - 32.0).abs() < 1e-13 * 32.0);
    }

    #[test]
    fn moments() {
        let mg = single(16.0 / 6.0, 4.0, 2.0); // normalized Gamma(4, rate 2)
        assert!((mg.moment(0) - mg.total_mass()).abs() < 1e-15);
        assert!((mg.moment(0) - 1.0).abs() < 1e-14);
        assert!((mg.moment(1) - 2.0).abs() < 1e-13);
        assert!((mg.moment(2) - 5.0).abs() < 1e-13); // E[g^2] = b(b+1)/z^2
    }

    #[test]
    fn cdf_anchors() {
        let mg = single(1.0, 1.0, 1.0);
        assert_eq!(mg.cdf(0.0).unwrap(), 0.0);
        assert!((mg.cdf(std::f64::consts::LN_2).unwrap() - 0.5).abs() < 1e-14);
        assert!((mg.cdf(500.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(mg.cdf(-0.5).is_err());
    }

    #[test]
    fn cdf_derivative_recovers_pdf() {
        let mg = MixtureGamma::new(vec![
            MgTerm { weight: 0.4, shape: 2.0, rate: 1.5 },
            MgTerm { weight: 1.1, shape: 5.0, rate: 3.0 },
        ])
        .unwrap();
        let mut g = 0.11;
        while g < 6.0 {
            let h = 1e-5;
            let fd = (mg.cdf(g + h).unwrap() - mg.cdf(g - h).unwrap()) / (2.0 * h);
            let pdf = mg.pdf(g).unwrap();
            assert!(
                (fd - pdf).abs() <= 1e-6 * pdf.max(1e-3),
                "cdf' vs pdf at {g}: {fd} vs {pdf}"
            );
            g += 0.31;
        }
    }

    #[test]
    fn cdf_is_monotone() {
        let mg = single(16.0 / 6.0, 4.0, 2.0);
        let mut prev = -1.0;
        let mut g = 0.0;
        while g < 10.0 {
            let c = mg.cdf(g).unwrap();
            assert!(c >= prev);
            prev = c;
            g += 0.17;
        }
    }
}
