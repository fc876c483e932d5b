//! Pointlike and Gaussian-smeared detectors with classical centres of mass.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::kernel::pair_kernel;
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, Exclusion, IntegralValue, QuadError, QuadValue, QuadratureSpec, TailMode,
};
use crate::radial::{radial_integral, Chirp, Profile, Weight};
use crate::scenario::{ModelVariant, ScenarioConfig};
use crate::special::{bump, g, h};
use crate::{Estimate, HarvestError};

/// Above this many oscillations inside the Gaussian cut-off the semi-infinite
/// machinery replaces plain truncation.
const MAX_DAMPED_OSCILLATIONS: f64 = 200.0;

/// `sin(t / sigma)` on `[0, pi sigma]`, zero elsewhere.
pub fn switching(t: f64, sigma: f64) -> f64 {
    if (0.0..=PI * sigma).contains(&t) {
        (t / sigma).sin()
    } else {
        0.0
    }
}

/// `A(k) = [1 + cos(pi (a + k))] / ((a + k)^2 - 1)^2`.
pub fn spectral_a(k: f64, a: f64) -> f64 {
    bump(a + k)
}

/// `B(k) = i (2a + k) sin(pi a) / (2a (1 - a^2)) + (e^{-i pi a} + e^{-i pi k}) / (1 - (a - k)^2)`.
pub fn spectral_b(k: f64, a: f64) -> Complex64 {
    Complex64::new(0.0, 0.5 * (2.0 * a + k) * h(a)) + Complex64::from_polar(1.0, -PI * a) * g(a - k)
}

/// `P = (1 / 2 pi^2) int_0^inf k exp(-l^2 k^2 / 4) A(k) dk`; `width = None`
/// is the pointlike detector.
pub fn excitation_smeared(a: f64, width: Option<f64>, spec: &QuadratureSpec) -> Result<Estimate<f64>, QuadError> {
    let width = width.filter(|&w| w > 0.0);
    let weight = Weight { power: 1, width };
    let prefactor = 1.0 / (2.0 * PI * PI);
    if let Some(w) = width {
        let scale = 2.0 / w;
        let cut = crate::quadrature::gaussian_cutoff(scale, spec.abs_tol);
        if cut / 2.0 < MAX_DAMPED_OSCILLATIONS {
            let f = |k: f64| k * (-0.25 * w * w * k * k).exp() * bump(a + k);
            let ex: Vec<Exclusion<f64>> = (a < 1.0).then(|| Exclusion::new(1.0 - a, f(1.0 - a))).into_iter().collect();
            let r = integrate_semi_infinite(f, 0.0, &spec.with_tail(TailMode::GaussianDamped { scale }), &ex)?;
            return Ok(Estimate::from(r.scale(prefactor)));
        }
    }
    let r = radial_integral(Chirp::new(a, 1.0, f64::INFINITY), weight, Profile::Bump, spec)?;
    Ok(Estimate::from(r.scale(prefactor)))
}

/// `M = -(1 / 2 pi^2 s) int_0^inf sin(k s) exp(-l^2 k^2 / 4) I(a, k) dk`,
/// which is the usual `e^{i pi a} B(k) / (1 - (a + k)^2)` form written
/// through the pair kernel.
pub fn entangling_smeared(
    a: f64,
    separation: f64,
    width: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>, QuadError> {
    let s = separation;
    let width = width.filter(|&w| w > 0.0);
    let damp = move |k: f64| match width {
        Some(w) => (-0.25 * w * w * k * k).exp(),
        None => 1.0,
    };
    let f = move |k: f64| pair_kernel(a, k) * ((k * s).sin() * damp(k));
    let prefactor = -1.0 / (2.0 * PI * PI * s);
    let shell: Vec<Exclusion<Complex64>> = (a < 1.0).then(|| Exclusion::new(1.0 - a, f(1.0 - a))).into_iter().collect();

    if let Some(w) = width {
        let scale = 2.0 / w;
        let cut = crate::quadrature::gaussian_cutoff(scale, spec.abs_tol);
        if cut * (s + PI) / (2.0 * PI) < MAX_DAMPED_OSCILLATIONS {
            let r = integrate_semi_infinite(f, 0.0, &spec.with_tail(TailMode::GaussianDamped { scale }), &shell)?;
            return Ok(Estimate::from(r.scale(prefactor)));
        }
    }

    // Past k = a + 2 no removable point is left and the kernel splits as
    // I = c1(k) + c2(k) e^{-i pi k} with non-oscillating c1, c2.
    let k1 = a + 2.0;
    let head = integrate_finite(f, 0.0, k1, spec, &shell)?;
    let phase = Complex64::from_polar(1.0, PI * a);
    let ha = h(a);
    let c1 = move |k: f64| {
        let plus = 1.0 - (a + k) * (a + k);
        let minus = 1.0 - (a - k) * (a - k);
        (Complex64::new(0.0, 0.5 * (2.0 * a + k) * ha) * phase + 1.0 / minus) / plus
    };
    let c2 = move |k: f64| phase / ((1.0 - (a + k) * (a + k)) * (1.0 - (a - k) * (a - k)));
    let half_i = Complex64::new(0.0, -0.5); // 1 / (2i)
    // c1 decays only like 1/k, so its tail always needs the panel sums;
    // c2 falls off like 1/k^4 and can do without them at low frequency
    let t1 = oscillatory_tail(move |k| c1(k) * ((k * s).sin() * damp(k)), k1, s, false, spec)?;
    let w2 = s - PI;
    let t2 = oscillatory_tail(move |k| c2(k) * half_i * Complex64::from_polar(damp(k), w2 * k), k1, w2, true, spec)?;
    let w3 = s + PI;
    let t3 = oscillatory_tail(move |k| -c2(k) * half_i * Complex64::from_polar(damp(k), -w3 * k), k1, w3, true, spec)?;
    let total = head.combine(t1).combine(t2).combine(t3);
    Ok(Estimate::from(total.scale(prefactor)))
}

/// Tail integral of an integrand oscillating like `e^{i omega k}` times a
/// slowly varying amplitude; panels start on a multiple of `pi / omega`.
/// With `fast_decay` a nearly non-oscillating integrand is mapped onto a
/// finite interval instead.
pub(crate) fn oscillatory_tail<T, F>(
    f: F,
    lower: f64,
    omega: f64,
    fast_decay: bool,
    spec: &QuadratureSpec,
) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let w = omega.abs();
    if w == 0.0 || (fast_decay && w < 0.5) {
        return integrate_semi_infinite(f, lower, &spec.with_tail(TailMode::Algebraic), &[]);
    }
    let half = PI / w;
    let aligned = (lower / half).ceil() * half;
    let lead = integrate_finite(&f, lower, aligned, spec, &[])?;
    let rest = integrate_semi_infinite(&f, aligned, &spec.with_tail(TailMode::OscillatoryPartition { period: 2.0 * half }), &[])?;
    Ok(lead.combine(rest))
}

fn classical_width(cfg: &ScenarioConfig) -> Result<Option<f64>, HarvestError> {
    match cfg.model {
        ModelVariant::Pointlike => Ok(None),
        ModelVariant::Smeared { width } => Ok(Some(width)),
        ModelVariant::Delocalized { .. } => {
            Err(HarvestError::InvalidConfig("classical quantities need a pointlike or smeared model".into()))
        }
    }
}

pub fn excitation_classical(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Estimate<f64>, HarvestError> {
    cfg.validate()?;
    Ok(excitation_smeared(cfg.omega, classical_width(cfg)?, spec)?)
}

pub fn entangling_classical(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Estimate<Complex64>, HarvestError> {
    cfg.validate()?;
    if cfg.separation <= 0.0 {
        return Err(HarvestError::InvalidConfig("the entangling term needs a positive separation".into()));
    }
    Ok(entangling_smeared(cfg.omega, cfg.separation, classical_width(cfg)?, spec)?)
}

pub fn negativity_classical(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<f64, HarvestError> {
    let p = excitation_classical(cfg, spec)?;
    let m = entangling_classical(cfg, spec)?;
    Ok((m.value.norm() - p.value).max(0.0))
}
