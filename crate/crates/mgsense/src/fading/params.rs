//! Parameter sets for the two composite fading families, plus the JSON
//! shape used by configuration files.
//!
//! Mean channel gain can be given either in dB (`omega_db`) or directly
//! (`omega_linear`); exactly one must be present. Internally everything is
//! linear.

use crate::{Error, Result};
use serde::Deserialize;

/// Converts a dB quantity to linear scale, 10^(db/10).
pub fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// Which parameterization of the eta-mu family is in use.
///
/// Format I takes eta > 0 as the ratio of in-phase to quadrature power;
/// eta and 1/eta describe the same channel. Format II takes |eta| < 1 as
/// the correlation between the components; eta and -eta describe the same
/// channel, and eta = 0 coincides with Format I at eta = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum EtaFormat {
    #[serde(rename = "I")]
    FormatI,
    #[serde(rename = "II")]
    FormatII,
}

/// Alpha-kappa-mu small-scale fading under gamma shadowing.
///
/// `alpha` is the nonlinearity exponent, `kappa` the dominant-to-scattered
/// power ratio, `mu` the number of multipath clusters (not necessarily an
/// integer), `k_shadow` the shadowing shape, and `omega` the shadowing
/// scale in linear units, so the mean shadow power is `k_shadow * omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaKappaMuShadowParams {
    pub alpha: f64,
    pub kappa: f64,
    pub mu: f64,
    pub k_shadow: f64,
    pub omega: f64,
}

/// Alpha-eta-mu small-scale fading under gamma shadowing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaEtaMuShadowParams {
    pub alpha: f64,
    pub eta: f64,
    pub format: EtaFormat,
    pub mu: f64,
    pub k_shadow: f64,
    pub omega: f64,
}

fn require_positive(op: &'static str, name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(op, format!("{name} = {v} must be positive and finite")));
    }
    Ok(())
}

impl AlphaKappaMuShadowParams {
    pub fn new(alpha: f64, kappa: f64, mu: f64, k_shadow: f64, omega: f64) -> Result<Self> {
        const OP: &str = "alpha-kappa-mu params";
        require_positive(OP, "alpha", alpha)?;
        require_positive(OP, "kappa", kappa)?;
        require_positive(OP, "mu", mu)?;
        require_positive(OP, "k_shadow", k_shadow)?;
        require_positive(OP, "omega", omega)?;
        if mu < 0.5 {
            return Err(Error::domain(
                OP,
                format!("mu = {mu} below 0.5; Bessel order mu - 1 is supported down to -0.5 only"),
            ));
        }
        Ok(AlphaKappaMuShadowParams { alpha, kappa, mu, k_shadow, omega })
    }
}

impl AlphaEtaMuShadowParams {
    pub fn new(
        alpha: f64,
        eta: f64,
        format: EtaFormat,
        mu: f64,
        k_shadow: f64,
        omega: f64,
    ) -> Result<Self> {
        const OP: &str = "alpha-eta-mu params";
        require_positive(OP, "alpha", alpha)?;
        require_positive(OP, "mu", mu)?;
        require_positive(OP, "k_shadow", k_shadow)?;
        require_positive(OP, "omega", omega)?;
        match format {
            EtaFormat::FormatI => {
                if !(eta > 0.0) || !eta.is_finite() {
                    return Err(Error::domain(
                        OP,
                        format!("format I requires eta > 0, got {eta}"),
                    ));
                }
            }
            EtaFormat::FormatII => {
                if !(eta > -1.0 && eta < 1.0) {
                    return Err(Error::domain(
                        OP,
                        format!("format II requires |eta| < 1, got {eta}"),
                    ));
                }
            }
        }
        Ok(AlphaEtaMuShadowParams { alpha, eta, format, mu, k_shadow, omega })
    }

    /// The h parameter of the eta-mu density; h >= 1 in both formats.
    pub fn h(&self) -> f64 {
        match self.format {
            EtaFormat::FormatI => (1.0 + self.eta).powi(2) / (4.0 * self.eta),
            EtaFormat::FormatII => 1.0 / (1.0 - self.eta * self.eta),
        }
    }

    /// The H parameter; |H| < h, and h^2 - H^2 = h in both formats.
    pub fn big_h(&self) -> f64 {
        match self.format {
            EtaFormat::FormatI => (1.0 - self.eta * self.eta) / (4.0 * self.eta),
            EtaFormat::FormatII => self.eta / (1.0 - self.eta * self.eta),
        }
    }
}

/// A fading channel of either family. Deserializes from a single-key map,
/// `{"akm": {...}}` or `{"aem": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelParams {
    Akm(AlphaKappaMuShadowParams),
    Aem(AlphaEtaMuShadowParams),
}

impl ChannelParams {
    pub fn omega(&self) -> f64 {
        match self {
            ChannelParams::Akm(p) => p.omega,
            ChannelParams::Aem(p) => p.omega,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAkm {
    alpha: f64,
    kappa: f64,
    mu: f64,
    k: f64,
    omega_db: Option<f64>,
    omega_linear: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAem {
    alpha: f64,
    eta: f64,
    format: EtaFormat,
    mu: f64,
    k: f64,
    omega_db: Option<f64>,
    omega_linear: Option<f64>,
}

fn resolve_omega(db: Option<f64>, linear: Option<f64>) -> Result<f64> {
    match (db, linear) {
        (Some(d), None) => Ok(db_to_linear(d)),
        (None, Some(l)) => Ok(l),
        (None, None) => Err(Error::Config(
            "channel needs one of omega_db or omega_linear".to_string(),
        )),
        (Some(_), Some(_)) => Err(Error::Config(
            "channel has both omega_db and omega_linear; give exactly one".to_string(),
        )),
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawChannel {
    Akm(RawAkm),
    Aem(RawAem),
}

impl<'de> Deserialize<'de> for ChannelParams {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawChannel::deserialize(deserializer)?;
        let built = match raw {
            RawChannel::Akm(r) => {
                let omega = resolve_omega(r.omega_db, r.omega_linear);
                omega.and_then(|o| {
                    AlphaKappaMuShadowParams::new(r.alpha, r.kappa, r.mu, r.k, o)
                        .map(ChannelParams::Akm)
                })
            }
            RawChannel::Aem(r) => {
                let omega = resolve_omega(r.omega_db, r.omega_linear);
                omega.and_then(|o| {
                    AlphaEtaMuShadowParams::new(r.alpha, r.eta, r.format, r.mu, r.k, o)
                        .map(ChannelParams::Aem)
                })
            }
        };
        built.map_err(serde::de::Error::custom)
    }
}
