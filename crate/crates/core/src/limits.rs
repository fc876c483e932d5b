//! The two limits in which delocalized detectors approach classical ones:
//! the regularized joint limit (width to zero and mass to infinity at fixed
//! width times mass) and the plain infinite-mass limit at fixed width.

use std::f64::consts::PI;

use serde::Serialize;

use crate::classical::{entangling_smeared, excitation_smeared};
use crate::delocalized::{
    entangling_exact, entangling_taylor, excitation_exact, excitation_taylor, Packet,
};
use crate::quadrature::QuadratureSpec;
use crate::radial::{radial_integral, Chirp, Profile, Weight};
use crate::scenario::{regime_check, ModelVariant, PathChoice, RegimeVerdict};
use crate::{Estimate, HarvestError};

/// Limit of the excitation probability as `gamma -> 0` with `width = l gamma`,
/// `mass = m / gamma`:
/// `P_0 + (1 / (4 pi^2 lmc^2)) int_0^inf k^3 A''(a + k) dk`.
///
/// Depends on the product `lmc` only.
pub fn gamma_limit_p(omega: f64, lmc: f64, spec: &QuadratureSpec) -> Result<Estimate<f64>, HarvestError> {
    if !(omega > 0.0) || !(lmc > 0.0) {
        return Err(HarvestError::InvalidConfig(format!("need omega > 0 and lmc > 0, got {omega}, {lmc}")));
    }
    let base = excitation_smeared(omega, None, spec)?;
    let chirp = Chirp::new(omega, 1.0, f64::INFINITY);
    let curve = radial_integral(chirp, Weight { power: 3, width: None }, Profile::BumpSecond, spec)?;
    let c = 1.0 / (4.0 * PI * PI * lmc * lmc);
    Ok(Estimate { value: base.value + c * curve.value, err: base.err + c * curve.err_estimate })
}

/// `width(gamma) = l gamma`, `mass(gamma) = lmc / (l gamma)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaFamily {
    pub l: f64,
    pub lmc: f64,
    /// Descending.
    pub gammas: Vec<f64>,
}

impl GammaFamily {
    pub fn new(l: f64, lmc: f64, gammas: Vec<f64>) -> Self {
        GammaFamily { l, lmc, gammas }
    }

    pub fn width(&self, gamma: f64) -> f64 {
        self.l * gamma
    }

    pub fn mass(&self, gamma: f64) -> f64 {
        self.lmc / (self.l * gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Gamma,
    Mass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow {
    /// gamma or mass, depending on the report kind.
    pub param: f64,
    pub p: f64,
    pub abs_m: f64,
    pub negativity: f64,
    pub rel_err_p: f64,
    pub rel_err_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitReference {
    pub p: f64,
    pub abs_m: f64,
    pub negativity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub kind: LimitKind,
    pub omega: f64,
    pub separation: f64,
    pub rows: Vec<LimitRow>,
    pub reference: LimitReference,
    /// Empirical orders from successive error ratios: in `gamma^2` for the
    /// gamma family, in `1 / mass` for the mass sweep.
    pub rates_p: Vec<f64>,
    pub rates_m: Vec<f64>,
    pub monotone_p: bool,
    pub monotone_m: bool,
    /// `|M|` of the pointlike detector, kept for contrast in the mass limit.
    pub pointlike_abs_m: Option<f64>,
}

impl LimitReport {
    pub fn final_rel_err_p(&self) -> Option<f64> {
        self.rows.last().map(|r| r.rel_err_p)
    }

    pub fn final_rel_err_m(&self) -> Option<f64> {
        self.rows.last().map(|r| r.rel_err_m)
    }
}

fn evaluate_packet(
    omega: f64,
    separation: f64,
    packet: &Packet,
    path: PathChoice,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), HarvestError> {
    let model = ModelVariant::Delocalized { width: packet.width, mass: packet.mass, speed_ratio: packet.speed_ratio, path };
    if let RegimeVerdict::Reject(msg) = regime_check(&model).verdict {
        return Err(HarvestError::RegimeRejected(msg));
    }
    let (p, m) = match path {
        PathChoice::Taylor => {
            (excitation_taylor(omega, packet, spec)?, entangling_taylor(omega, separation, packet, true, spec)?)
        }
        PathChoice::Exact => (excitation_exact(omega, packet, spec)?, entangling_exact(omega, separation, packet, spec)?),
    };
    Ok((p.value, m.value.norm()))
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs()
}

/// Orders from successive errors: `ln(e_i / e_{i+1}) / ln(t_i / t_{i+1})`.
fn rates(errors: &[f64], scale: &[f64]) -> Vec<f64> {
    errors
        .windows(2)
        .zip(scale.windows(2))
        .map(|(e, t)| (e[0] / e[1]).ln() / (t[0] / t[1]).ln())
        .collect()
}

fn strictly_shrinking(errors: &[f64]) -> bool {
    errors.windows(2).all(|e| e[1] < e[0])
}

fn build_report(
    kind: LimitKind,
    omega: f64,
    separation: f64,
    params: &[f64],
    scale: &[f64],
    values: Vec<(f64, f64)>,
    reference: LimitReference,
    pointlike_abs_m: Option<f64>,
) -> LimitReport {
    let rows: Vec<LimitRow> = params
        .iter()
        .zip(values)
        .map(|(&param, (p, abs_m))| LimitRow {
            param,
            p,
            abs_m,
            negativity: (abs_m - p).max(0.0),
            rel_err_p: rel(p, reference.p),
            rel_err_m: rel(abs_m, reference.abs_m),
        })
        .collect();
    let ep: Vec<f64> = rows.iter().map(|r| r.rel_err_p).collect();
    let em: Vec<f64> = rows.iter().map(|r| r.rel_err_m).collect();
    LimitReport {
        kind,
        omega,
        separation,
        rates_p: rates(&ep, scale),
        rates_m: rates(&em, scale),
        monotone_p: strictly_shrinking(&ep),
        monotone_m: strictly_shrinking(&em),
        rows,
        reference,
        pointlike_abs_m,
    }
}

/// Evaluates a gamma family in vacuum against the pointlike limit with the
/// excitation probability corrected at order `1 / lmc^2`.
pub fn run_gamma_family(
    omega: f64,
    separation: f64,
    family: &GammaFamily,
    path: PathChoice,
    spec: &QuadratureSpec,
) -> Result<LimitReport, HarvestError> {
    if family.gammas.windows(2).any(|g| g[1] >= g[0]) {
        return Err(HarvestError::InvalidConfig("gammas must be strictly descending".into()));
    }
    let mut values = Vec::with_capacity(family.gammas.len());
    for &g in &family.gammas {
        let packet = Packet::new(family.width(g), family.mass(g), 1.0);
        values.push(evaluate_packet(omega, separation, &packet, path, spec)?);
    }
    let p_ref = gamma_limit_p(omega, family.lmc, spec)?.value;
    let m_ref = entangling_smeared(omega, separation, None, spec)?.value.norm();
    let reference = LimitReference { p: p_ref, abs_m: m_ref, negativity: (m_ref - p_ref).max(0.0) };
    let scale: Vec<f64> = family.gammas.iter().map(|g| g * g).collect();
    Ok(build_report(LimitKind::Gamma, omega, separation, &family.gammas, &scale, values, reference, None))
}

/// Sweeps the mass upward at fixed width: the excitation probability should
/// approach the pointlike value and `|M|` the smeared one at the same width.
pub fn mass_limit_check(
    omega: f64,
    separation: f64,
    width: f64,
    masses: &[f64],
    path: PathChoice,
    spec: &QuadratureSpec,
) -> Result<LimitReport, HarvestError> {
    if masses.windows(2).any(|m| m[1] <= m[0]) {
        return Err(HarvestError::InvalidConfig("masses must be strictly ascending".into()));
    }
    let mut values = Vec::with_capacity(masses.len());
    for &m in masses {
        values.push(evaluate_packet(omega, separation, &Packet::new(width, m, 1.0), path, spec)?);
    }
    let p_ref = excitation_smeared(omega, None, spec)?.value;
    let m_ref = entangling_smeared(omega, separation, Some(width), spec)?.value.norm();
    let m_point = entangling_smeared(omega, separation, None, spec)?.value.norm();
    let reference = LimitReference { p: p_ref, abs_m: m_ref, negativity: (m_ref - p_ref).max(0.0) };
    let scale: Vec<f64> = masses.iter().map(|m| 1.0 / m).collect();
    Ok(build_report(LimitKind::Mass, omega, separation, masses, &scale, values, reference, Some(m_point)))
}
