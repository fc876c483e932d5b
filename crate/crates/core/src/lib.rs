//! Entanglement harvesting between two Unruh-DeWitt detectors coupled to a
//! massless scalar field, for pointlike, Gaussian-smeared and coherently
//! delocalized detectors, in vacuum or in a medium with slower wave speed.
//!
//! Units: the switching timescale, the vacuum light speed and hbar are all
//! set to one. Every probability and entangling term is reported per unit
//! squared coupling.

pub mod classical;
pub mod delocalized;
pub mod divided;
pub mod entanglement;
pub mod kernel;
pub mod limits;
pub mod quadrature;
pub mod scenario;
pub mod special;

mod radial;

use num_complex::Complex64;
use thiserror::Error;

use quadrature::{IntegralValue, QuadError, QuadratureSpec};
use scenario::{ConfigError, HarvestResult, ModelVariant, ScenarioConfig};

/// A computed value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub err: f64,
}

impl<T> From<IntegralValue<T>> for Estimate<T> {
    fn from(v: IntegralValue<T>) -> Self {
        Estimate { value: v.value, err: v.err_estimate }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HarvestError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("regime rejected: {0}")]
    RegimeRejected(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Excitation probability, entangling term and negativity for a scenario.
/// Delocalized models use the path stored in the config.
pub fn evaluate(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<HarvestResult, HarvestError> {
    cfg.validate()?;
    let (p, m) = match cfg.model {
        ModelVariant::Pointlike | ModelVariant::Smeared { .. } => {
            (classical::excitation_classical(cfg, spec)?, classical::entangling_classical(cfg, spec)?)
        }
        ModelVariant::Delocalized { path, .. } => {
            (delocalized::excitation_delocalized(cfg, path, spec)?, delocalized::entangling_delocalized(cfg, path, spec)?)
        }
    };
    Ok(HarvestResult::symmetric(p.value, m.value, p.err, m.err))
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<HarvestResult>();
    check::<ScenarioConfig>();
    check::<Complex64>();
}
