//! Energy detector under the Gaussian approximation.
//!
//! The statistic is the summed energy of `n_samples` complex samples with
//! noise power `noise_power` per sample. Under noise only it is treated as
//! N(N s, N s^2) with s the noise power; with a signal at SNR gamma the
//! mean grows to N s (1 + gamma) and the variance to N s^2 (1 + zeta),
//! where zeta depends on the signal model. Detection compares against a
//! fixed threshold.

use crate::specfun::{erfc, inv_erfc};
use crate::{Error, Result};

/// Distribution of the transmitted signal, which sets how the statistic's
/// variance inflates with SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalModel {
    /// Circularly symmetric complex Gaussian signaling.
    Cscg,
    /// Constant-envelope (PSK-like) signaling.
    Psk,
}

impl SignalModel {
    /// The variance inflation zeta(gamma): statistic variance under signal
    /// is N s^2 (1 + zeta).
    pub fn excess_variance(&self, gamma: f64) -> f64 {
        match self {
            SignalModel::Cscg => 2.0 * gamma + gamma * gamma,
            SignalModel::Psk => 2.0 * gamma,
        }
    }
}

/// Detector operating point: sample count, noise power, threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    n_samples: u64,
    noise_power: f64,
    threshold: f64,
}

/// The two constants through which the operating point enters every
/// detection-probability formula: the instantaneous low-SNR detection
/// probability is 1 - erfc(c1 * gamma + c2) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConstants {
    pub c1: f64,
    pub c2: f64,
}

/// Threshold achieving a target false-alarm probability.
pub fn threshold_for_pf(n_samples: u64, noise_power: f64, target_pf: f64) -> Result<f64> {
    check_common(n_samples, noise_power)?;
    if !(target_pf > 0.0 && target_pf < 1.0) {
        return Err(Error::domain(
            "threshold_for_pf",
            format!("target_pf = {target_pf} must lie strictly inside (0, 1)"),
        ));
    }
    let en = n_samples as f64;
    Ok(en * noise_power + (2.0 * en).sqrt() * noise_power * inv_erfc(2.0 * target_pf)?)
}

fn check_common(n_samples: u64, noise_power: f64) -> Result<()> {
    if n_samples == 0 {
        return Err(Error::domain("detector config", "n_samples must be at least 1".to_string()));
    }
    if !(noise_power > 0.0) || !noise_power.is_finite() {
        return Err(Error::domain(
            "detector config",
            format!("noise_power = {noise_power} must be positive and finite"),
        ));
    }
    Ok(())
}

impl DetectorConfig {
    pub fn with_threshold(n_samples: u64, noise_power: f64, threshold: f64) -> Result<Self> {
        check_common(n_samples, noise_power)?;
        if !(threshold > 0.0) || !threshold.is_finite() {
            return Err(Error::domain(
                "detector config",
                format!("threshold = {threshold} must be positive and finite"),
            ));
        }
        Ok(DetectorConfig { n_samples, noise_power, threshold })
    }

    pub fn with_target_pf(n_samples: u64, noise_power: f64, target_pf: f64) -> Result<Self> {
        let threshold = threshold_for_pf(n_samples, noise_power, target_pf)?;
        DetectorConfig::with_threshold(n_samples, noise_power, threshold)
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// False-alarm probability of the operating point.
    pub fn pf(&self) -> f64 {
        let en = self.n_samples as f64;
        let arg =
            (self.threshold - en * self.noise_power) / ((2.0 * en).sqrt() * self.noise_power);
        0.5 * erfc(arg)
    }

    pub fn constants(&self) -> DetectorConstants {
        let en = self.n_samples as f64;
        DetectorConstants {
            c1: (en / 2.0).sqrt(),
            c2: (en * self.noise_power - self.threshold)
                / ((2.0 * en).sqrt() * self.noise_power),
        }
    }

    /// Detection probability at a fixed SNR.
    ///
    /// With `low_snr` the signal's contribution to the statistic's variance
    /// is dropped, which is the regime every averaged formula in
    /// [`crate::detector`] lives in. At gamma = 0 both branches reproduce
    /// [`DetectorConfig::pf`] bit for bit.
    pub fn pd_instant(&self, gamma: f64, model: SignalModel, low_snr: bool) -> Result<f64> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::domain(
                "pd_instant",
                format!("gamma = {gamma} must be nonnegative and finite"),
            ));
        }
        let en = self.n_samples as f64;
        let numer = self.threshold - en * self.noise_power * (1.0 + gamma);
        let denom = (2.0 * en).sqrt() * self.noise_power;
        let arg = if low_snr {
            numer / denom
        } else {
            numer / (denom * (1.0 + model.excess_variance(gamma)).sqrt())
        };
        Ok(0.5 * erfc(arg))
    }
}
