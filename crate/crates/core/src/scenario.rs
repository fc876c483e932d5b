//! Dimensionless scenario description, the config file format, physical
//! regime checks and the result record.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::entanglement::{negativity, SecondOrderState};

/// Smallest width times mass for which delocalized results are computed.
pub const REJECT_BELOW: f64 = 35.0;
/// Width times mass from which the non-relativistic treatment is trusted.
pub const TRUSTED_FROM: f64 = 350.0;
/// Width times mass times speed ratio at which the fastest virtual velocities
/// in the packet (3.5 standard deviations) reach the wave speed.
pub const SOUND_SPEED_MARK: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathChoice {
    /// Full momentum-space integrals.
    Exact,
    /// Second-order expansion of the templates around zero momentum.
    Taylor,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelVariant {
    Pointlike,
    /// Gaussian smearing; `width` is L/(c sigma).
    Smeared { width: f64 },
    /// Coherently delocalized centre of mass. `width` is L/(c sigma), `mass`
    /// is M c sigma, `speed_ratio` is c_s/c.
    Delocalized { width: f64, mass: f64, speed_ratio: f64, path: PathChoice },
}

impl ModelVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ModelVariant::Pointlike => "pointlike",
            ModelVariant::Smeared { .. } => "smeared",
            ModelVariant::Delocalized { .. } => "delocalized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioConfig {
    /// Omega sigma.
    pub omega: f64,
    /// S/(c sigma).
    pub separation: f64,
    pub model: ModelVariant,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{0}` given more than once")]
    DuplicateKey(String),
    #[error("key `{key}` does not apply to model {model}")]
    Inapplicable { key: String, model: &'static str },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("bad value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
    #[error("{0}")]
    OutOfRange(String),
}

impl ScenarioConfig {
    pub fn new(omega: f64, separation: f64, model: ModelVariant) -> Self {
        ScenarioConfig { omega, separation, model }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::OutOfRange(msg));
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return bad(format!("omega must be positive, got {}", self.omega));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return bad(format!("separation must be non-negative, got {}", self.separation));
        }
        match self.model {
            ModelVariant::Pointlike => Ok(()),
            ModelVariant::Smeared { width } => {
                if !(width > 0.0 && width.is_finite()) {
                    return bad(format!("width must be positive, got {width}"));
                }
                Ok(())
            }
            ModelVariant::Delocalized { width, mass, speed_ratio, .. } => {
                if !(width > 0.0 && width.is_finite()) {
                    return bad(format!("width must be positive, got {width}"));
                }
                if !(mass > 0.0 && mass.is_finite()) {
                    return bad(format!("mass must be positive, got {mass}"));
                }
                if !(speed_ratio > 0.0 && speed_ratio <= 1.0) {
                    return bad(format!("speed_ratio must lie in (0, 1], got {speed_ratio}"));
                }
                Ok(())
            }
        }
    }

    /// Parses the flat `key = value` format. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let entries = parse_pairs(text)?;
        let pairs: Vec<(&str, &str)> = entries.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        Self::from_pairs(&pairs)
    }

    /// Builds a config from already split key/value pairs (keys must be
    /// among the known ones).
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, ConfigError> {
        let get = |key: &str| pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        for (k, _) in pairs {
            if !KEYS.contains(k) {
                return Err(ConfigError::UnknownKey(k.to_string()));
            }
        }
        let number = |key: &'static str| -> Result<f64, ConfigError> {
            let v = get(key).ok_or(ConfigError::MissingKey(key))?;
            parse_number(v).ok_or_else(|| ConfigError::BadValue { key: key.into(), value: v.into() })
        };
        let omega = number("omega")?;
        let separation = number("separation")?;
        let model_name = get("model").ok_or(ConfigError::MissingKey("model"))?;
        let model = match model_name.to_ascii_lowercase().as_str() {
            "pointlike" => {
                reject_keys(pairs, &["width", "mass", "speed_ratio", "path"], "pointlike")?;
                ModelVariant::Pointlike
            }
            "smeared" => {
                reject_keys(pairs, &["mass", "speed_ratio", "path"], "smeared")?;
                ModelVariant::Smeared { width: number("width")? }
            }
            "delocalized" => {
                let speed_ratio = if get("speed_ratio").is_some() { number("speed_ratio")? } else { 1.0 };
                let path = match get("path").map(|p| p.to_ascii_lowercase()) {
                    None => PathChoice::Taylor,
                    Some(p) if p == "taylor" => PathChoice::Taylor,
                    Some(p) if p == "exact" => PathChoice::Exact,
                    Some(p) => return Err(ConfigError::BadValue { key: "path".into(), value: p }),
                };
                ModelVariant::Delocalized { width: number("width")?, mass: number("mass")?, speed_ratio, path }
            }
            other => return Err(ConfigError::BadValue { key: "model".into(), value: other.into() }),
        };
        let cfg = ScenarioConfig { omega, separation, model };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Serializes to the config format; numbers use the shortest
    /// representation that parses back to the same bits.
    pub fn to_config_string(&self) -> String {
        let mut out = format!("omega = {}\nseparation = {}\nmodel = {}\n", self.omega, self.separation, self.model.name());
        match self.model {
            ModelVariant::Pointlike => {}
            ModelVariant::Smeared { width } => out.push_str(&format!("width = {width}\n")),
            ModelVariant::Delocalized { width, mass, speed_ratio, path } => {
                let path = match path {
                    PathChoice::Exact => "exact",
                    PathChoice::Taylor => "taylor",
                };
                out.push_str(&format!("width = {width}\nmass = {mass}\nspeed_ratio = {speed_ratio}\npath = {path}\n"));
            }
        }
        out
    }
}

impl FromStr for ScenarioConfig {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioConfig::parse(s)
    }
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_config_string())
    }
}

/// Splits config text into checked key/value pairs without interpreting
/// the values.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax { line: n + 1 });
        }
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey(key));
        }
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError::DuplicateKey(key));
        }
        entries.push((key, value));
    }
    Ok(entries)
}

pub const KEYS: [&str; 7] = ["omega", "separation", "model", "width", "mass", "speed_ratio", "path"];

fn reject_keys(pairs: &[(&str, &str)], keys: &[&str], model: &'static str) -> Result<(), ConfigError> {
    for (k, _) in pairs {
        if keys.contains(k) {
            return Err(ConfigError::Inapplicable { key: k.to_string(), model });
        }
    }
    Ok(())
}

/// Decimal number or a ratio of two decimals such as `4/9`.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?,
        None => s.parse::<f64>().ok()?,
    };
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "message", rename_all = "lowercase")]
pub enum RegimeVerdict {
    Ok,
    Warn(String),
    Reject(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    #[serde(flatten)]
    pub verdict: RegimeVerdict,
    /// L M c in units of hbar, i.e. width times mass.
    pub lmc: Option<f64>,
    /// L M c_s, i.e. width times mass times speed ratio.
    pub supersonic_indicator: Option<f64>,
    /// Set when the packet's fastest virtual velocities come within an order
    /// of magnitude of the wave speed (`L M c_s < 10 * 3.5`).
    pub near_sound_speed: bool,
}

/// Classifies a model against the non-relativistic bound `L M c >~ 350`.
pub fn regime_check(model: &ModelVariant) -> RegimeReport {
    match *model {
        ModelVariant::Delocalized { width, mass, speed_ratio, .. } => {
            let lmc = width * mass;
            let sonic = lmc * speed_ratio;
            let verdict = if lmc < REJECT_BELOW {
                RegimeVerdict::Reject(format!(
                    "width*mass = {lmc} is below {REJECT_BELOW}: virtual centre-of-mass velocities are relativistic"
                ))
            } else if lmc < TRUSTED_FROM {
                RegimeVerdict::Warn(format!(
                    "width*mass = {lmc} is below {TRUSTED_FROM}: outside the non-relativistic regime, results indicative only"
                ))
            } else {
                RegimeVerdict::Ok
            };
            RegimeReport {
                verdict,
                lmc: Some(lmc),
                supersonic_indicator: Some(sonic),
                near_sound_speed: sonic < 10.0 * SOUND_SPEED_MARK,
            }
        }
        _ => RegimeReport { verdict: RegimeVerdict::Ok, lmc: None, supersonic_indicator: None, near_sound_speed: false },
    }
}

/// Output of a single scenario evaluation (all values per unit squared
/// coupling).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarvestResult {
    pub p_a: f64,
    pub p_b: f64,
    pub m: Complex64,
    pub negativity: f64,
    pub err_p: f64,
    pub err_m: f64,
}

impl HarvestResult {
    /// Identical detectors: both excitation probabilities equal `p`.
    pub fn symmetric(p: f64, m: Complex64, err_p: f64, err_m: f64) -> Self {
        let state = SecondOrderState::new(p, p, m);
        HarvestResult { p_a: p, p_b: p, m, negativity: negativity(&state), err_p, err_m }
    }

    pub fn state(&self) -> SecondOrderState {
        SecondOrderState::new(self.p_a, self.p_b, self.m)
    }
}
