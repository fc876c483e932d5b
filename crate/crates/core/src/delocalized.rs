//! Detectors whose centre of mass is a coherent Gaussian wave packet of
//! width `L`, optionally in a medium where waves travel at `r = c_s / c`.
//!
//! The recoil enters through the template functions `U(p)` and
//! `V(k, p1, p2)`. Two routes are provided: the full momentum-space
//! integrals and a second-order expansion of the templates around zero
//! momentum, which is accurate to `(L M c)^{-4}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::classical::entangling_smeared;
use crate::kernel::{pair_kernel, pair_kernel_jet};
use crate::quadrature::{
    gaussian_cutoff, integrate_finite_with_breaks, integrate_nested, IntegralValue, QuadError, QuadratureSpec,
};
use crate::radial::{radial_integral, Chirp, Profile, Weight};
use crate::scenario::{regime_check, ModelVariant, PathChoice, RegimeVerdict, ScenarioConfig};
use crate::{Estimate, HarvestError};

/// Gap, mass and speed ratio shared by the template functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemplateArgs {
    /// Omega sigma.
    pub omega: f64,
    /// M c sigma.
    pub mass: f64,
    /// c_s / c.
    pub speed_ratio: f64,
}

impl TemplateArgs {
    pub fn new(omega: f64, mass: f64, speed_ratio: f64) -> Self {
        TemplateArgs { omega, mass, speed_ratio }
    }
}

/// Packet parameters for one delocalized detector pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    pub width: f64,
    pub mass: f64,
    pub speed_ratio: f64,
}

impl Packet {
    pub fn new(width: f64, mass: f64, speed_ratio: f64) -> Self {
        Packet { width, mass, speed_ratio }
    }

    fn args(&self, omega: f64) -> TemplateArgs {
        TemplateArgs::new(omega, self.mass, self.speed_ratio)
    }
}

fn tighter(spec: &QuadratureSpec) -> QuadratureSpec {
    spec.with_tolerances(0.1 * spec.rel_tol, 0.1 * spec.abs_tol)
}

/// `U(p) = int_{-1}^{1} dz int_0^inf dk k A(a + r k + k^2/(2m) - k p z / m)`.
pub fn template_u(p: f64, args: &TemplateArgs, spec: &QuadratureSpec) -> Result<IntegralValue<f64>, QuadError> {
    let TemplateArgs { omega, mass, speed_ratio } = *args;
    if p == 0.0 {
        return Ok(radial_integral(Chirp::new(omega, speed_ratio, mass), Weight { power: 1, width: None }, Profile::Bump, spec)?
            .scale(2.0));
    }
    let inner = tighter(spec);
    integrate_nested(
        |z| {
            let chirp = Chirp::new(omega, speed_ratio - p * z / mass, mass);
            radial_integral(chirp, Weight { power: 1, width: None }, Profile::Bump, &inner)
        },
        -1.0,
        1.0,
        &[0.0],
        spec,
    )
}

/// `d^2 U / dp^2` at `p = 0`. Differentiating under the integral gives
/// `(2 / (3 m^2)) int_0^inf k^3 A''(F(k)) dk` after the `z^2` moment.
pub fn d2_template_u(args: &TemplateArgs, spec: &QuadratureSpec) -> Result<IntegralValue<f64>, QuadError> {
    let TemplateArgs { omega, mass, speed_ratio } = *args;
    let r = radial_integral(Chirp::new(omega, speed_ratio, mass), Weight { power: 3, width: None }, Profile::BumpSecond, spec)?;
    Ok(r.scale(2.0 / (3.0 * mass * mass)))
}

/// Richardson-extrapolated central second difference of `U` at zero with
/// steps `h` and `h / 2`.
///
/// Differencing two separately computed values of `U` loses everything to
/// cancellation, so the difference is formed inside the integrand:
/// `U(h) - U(0) = int_0^1 dz int dk k [A(F - d) + A(F + d) - 2 A(F)]`
/// with `d = k h z / m`.
pub fn d2_template_u_fd(args: &TemplateArgs, h: f64, spec: &QuadratureSpec) -> Result<f64, QuadError> {
    let TemplateArgs { omega, mass, speed_ratio } = *args;
    let chirp = Chirp::new(omega, speed_ratio, mass);
    let inner = tighter(spec);
    let second_difference = |step: f64| -> Result<f64, QuadError> {
        let rise = integrate_nested(
            |z| {
                let profile = Profile::BumpSecondDifference { step_per_k: step * z / mass };
                radial_integral(chirp, Weight { power: 1, width: None }, profile, &inner)
            },
            0.0,
            1.0,
            &[],
            spec,
        )?;
        Ok(2.0 * rise.value / (step * step))
    };
    let coarse = second_difference(h)?;
    let fine = second_difference(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

fn kernel_arguments(k: f64, p1: f64, p2: f64, args: &TemplateArgs) -> (f64, f64, f64) {
    let c = k / (2.0 * args.mass);
    let alpha = args.omega - c * (p1 - p2);
    let base = args.speed_ratio * k;
    (alpha, base + c * (p1 + p2), base - c * (p1 + p2))
}

/// `V(k, p1, p2) = sum_j I(alpha, beta_j)` with
/// `alpha = a - k (p1 - p2) / (2m)` and `beta_j = r k + (-1)^j k (p1 + p2) / (2m)`.
pub fn template_v(k: f64, p1: f64, p2: f64, args: &TemplateArgs) -> Complex64 {
    let (alpha, b0, b1) = kernel_arguments(k, p1, p2, args);
    pair_kernel(alpha, b0) + pair_kernel(alpha, b1)
}

/// `(d^2 V / dp1^2, d^2 V / dp2^2)` at `p1 = p2 = 0`. Both reduce to
/// `2 c^2 (I_aa + I_bb)(a, r k)` with `c = k / (2m)`; the mixed terms cancel
/// in the sum over `j`.
pub fn d2_template_v(k: f64, args: &TemplateArgs) -> (Complex64, Complex64) {
    let c = k / (2.0 * args.mass);
    let jet = pair_kernel_jet(args.omega, args.speed_ratio * k);
    let d = (jet.d_alpha_alpha + jet.d_beta_beta) * (2.0 * c * c);
    (d, d)
}

/// Finite-difference counterpart of [`d2_template_v`]: central differences
/// in each momentum with Richardson extrapolation. The momentum step is
/// chosen so the kernel arguments move by `1e-3 / max(1, k)`.
pub fn d2_template_v_fd(k: f64, args: &TemplateArgs) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    if k == 0.0 {
        return (zero, zero);
    }
    let shift = 1e-3 / k.max(1.0);
    let h = shift * 2.0 * args.mass / k;
    let centre = template_v(k, 0.0, 0.0, args);
    let second = |h: f64, first: bool| {
        let (plus, minus) = if first {
            (template_v(k, h, 0.0, args), template_v(k, -h, 0.0, args))
        } else {
            (template_v(k, 0.0, h, args), template_v(k, 0.0, -h, args))
        };
        (plus + minus - 2.0 * centre) / (h * h)
    };
    let rich = |first: bool| (4.0 * second(0.5 * h, first) - second(h, first)) / 3.0;
    (rich(true), rich(false))
}

/// Second-order route for the excitation probability:
/// `(1 / (4 pi^2 r)) [U(0) + (3 / (2 L^2)) U''(0)]`.
pub fn excitation_taylor(omega: f64, packet: &Packet, spec: &QuadratureSpec) -> Result<Estimate<f64>, QuadError> {
    let args = packet.args(omega);
    let lead = template_u(0.0, &args, spec)?;
    let curvature = d2_template_u(&args, spec)?;
    let total = lead.combine(curvature.scale(1.5 / (packet.width * packet.width)));
    Ok(Estimate::from(total.scale(1.0 / (4.0 * PI * PI * packet.speed_ratio))))
}

/// Full route: `(1 / (pi r)) int_0^inf dp p^2 |phi(p)|^2 U(p)` with the
/// Gaussian momentum density `L^3 (2 pi)^{-3/2} exp(-p^2 L^2 / 2)`.
pub fn excitation_exact(omega: f64, packet: &Packet, spec: &QuadratureSpec) -> Result<Estimate<f64>, QuadError> {
    let args = packet.args(omega);
    let l = packet.width;
    let norm = l.powi(3) / (2.0 * PI).powf(1.5);
    let cut = gaussian_cutoff(2f64.sqrt() / l, spec.abs_tol);
    let inner = tighter(spec);
    let total = integrate_nested(
        |p| {
            let density = norm * p * p * (-0.5 * p * p * l * l).exp();
            Ok(template_u(p, &args, &inner)?.scale(density))
        },
        0.0,
        cut,
        &[1.0 / l, 2.0 / l, 4.0 / l],
        spec,
    )?;
    Ok(Estimate::from(total.scale(1.0 / (PI * packet.speed_ratio))))
}

/// Second-order route for the entangling term:
/// `-(1 / (4 pi^2 r)) int dk (sin(k s) / s) e^{-L^2 k^2 / 4} [V(k,0,0) + (1/(2 L^2)) (V_11 + V_22)]`.
///
/// The leading part equals the smeared classical term at rescaled width and
/// separation divided by `r^3`, which reuses its oscillatory tail handling.
/// `with_recoil = false` drops the derivative terms.
pub fn entangling_taylor(
    omega: f64,
    separation: f64,
    packet: &Packet,
    with_recoil: bool,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>, QuadError> {
    let r = packet.speed_ratio;
    let l = packet.width;
    let s = separation;
    let lead = entangling_smeared(omega, s / r, Some(l / r), spec)?;
    let lead = Estimate { value: lead.value / r.powi(3), err: lead.err / r.powi(3) };
    if !with_recoil {
        return Ok(lead);
    }
    let args = packet.args(omega);
    let f = |k: f64| {
        let (d11, d22) = d2_template_v(k, &args);
        (d11 + d22) * ((k * s).sin() / s * (-0.25 * l * l * k * k).exp() / (2.0 * l * l))
    };
    let cut = gaussian_cutoff(2.0 / l, spec.abs_tol);
    let local = spec.with_tolerances(spec.rel_tol, spec.abs_tol.max(0.1 * spec.rel_tol * lead.value.norm()));
    let correction = integrate_finite_with_breaks(f, 0.0, cut, &[], &local, &[])?;
    let correction = correction.scale(-1.0 / (4.0 * PI * PI * r));
    Ok(Estimate { value: lead.value + correction.value, err: lead.err + correction.err_estimate })
}

/// Full route: `-(L^2 / (8 pi^3 r)) int dp1 int dp2 e^{-L^2 (p1^2 + p2^2) / 2}
/// int dk (sin(k s) / s) e^{-L^2 k^2 / 4} V(k, p1, p2)`, iterated with the
/// momenta cut at six standard deviations.
pub fn entangling_exact(
    omega: f64,
    separation: f64,
    packet: &Packet,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>, QuadError> {
    let args = packet.args(omega);
    let l = packet.width;
    let s = separation;
    let q = 6.0 / l;
    let cut = gaussian_cutoff(2.0 / l, spec.abs_tol);
    let middle = tighter(spec);
    let inner = tighter(&middle);
    let shells = |p1: f64, p2: f64| -> Vec<f64> {
        // alpha + beta_j = 1 at k (r + p2/m) = 1 - a and k (r - p1/m) = 1 - a
        let gap = 1.0 - omega;
        [args.speed_ratio + p2 / args.mass, args.speed_ratio - p1 / args.mass]
            .iter()
            .filter(|&&v| v != 0.0)
            .map(|v| gap / v)
            .filter(|&k| k > 0.0 && k < cut)
            .collect()
    };
    let total = integrate_nested(
        |p1| {
            integrate_nested(
                |p2| {
                    let weight = (-0.5 * l * l * (p1 * p1 + p2 * p2)).exp();
                    let f = |k: f64| template_v(k, p1, p2, &args) * ((k * s).sin() / s * (-0.25 * l * l * k * k).exp());
                    Ok(integrate_finite_with_breaks(f, 0.0, cut, &shells(p1, p2), &inner, &[])?.scale(weight))
                },
                -q,
                q,
                &[0.0],
                &middle,
            )
        },
        -q,
        q,
        &[0.0],
        spec,
    )?;
    Ok(Estimate::from(total.scale(-l * l / (8.0 * PI.powi(3) * packet.speed_ratio))))
}

fn delocalized_packet(cfg: &ScenarioConfig) -> Result<Packet, HarvestError> {
    cfg.validate()?;
    match cfg.model {
        ModelVariant::Delocalized { width, mass, speed_ratio, .. } => {
            if let RegimeVerdict::Reject(msg) = regime_check(&cfg.model).verdict {
                return Err(HarvestError::RegimeRejected(msg));
            }
            Ok(Packet::new(width, mass, speed_ratio))
        }
        _ => Err(HarvestError::InvalidConfig("delocalized quantities need a delocalized model".into())),
    }
}

pub fn excitation_delocalized(cfg: &ScenarioConfig, path: PathChoice, spec: &QuadratureSpec) -> Result<Estimate<f64>, HarvestError> {
    let packet = delocalized_packet(cfg)?;
    Ok(match path {
        PathChoice::Taylor => excitation_taylor(cfg.omega, &packet, spec)?,
        PathChoice::Exact => excitation_exact(cfg.omega, &packet, spec)?,
    })
}

pub fn entangling_delocalized(
    cfg: &ScenarioConfig,
    path: PathChoice,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>, HarvestError> {
    let packet = delocalized_packet(cfg)?;
    if cfg.separation <= 0.0 {
        return Err(HarvestError::InvalidConfig("the entangling term needs a positive separation".into()));
    }
    Ok(match path {
        PathChoice::Taylor => entangling_taylor(cfg.omega, cfg.separation, &packet, true, spec)?,
        PathChoice::Exact => entangling_exact(cfg.omega, cfg.separation, &packet, spec)?,
    })
}

pub fn negativity_delocalized(cfg: &ScenarioConfig, path: PathChoice, spec: &QuadratureSpec) -> Result<f64, HarvestError> {
    let p = excitation_delocalized(cfg, path, spec)?;
    let m = entangling_delocalized(cfg, path, spec)?;
    Ok((m.value.norm() - p.value).max(0.0))
}
