//! The pair kernel
//!
//! ```text
//! I(alpha, beta) = int_0^pi dt1 int_0^t1 dt2 sin(t1) sin(t2) e^{i t1 (alpha - beta)} e^{i t2 (alpha + beta)}
//! ```
//!
//! which is the building block of every entangling term: the classical
//! integrand is `I(a, k)` and the delocalized template is a sum of two
//! kernels with recoil-shifted arguments. `I` is entire in both arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::divided::kernel_differences;
use crate::special::{g, h_jet};

/// Distance from the shells `alpha + beta = +-1` inside which the closed form
/// is replaced by interpolation towards the shell limit.
pub const SHELL_RADIUS: f64 = 1e-4;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn numerator(alpha: f64, beta: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, PI * alpha);
    I * 0.5 * e * ((2.0 * alpha + beta) * h_jet(alpha).0) + g(alpha - beta)
}

fn closed_form(alpha: f64, beta: f64) -> Complex64 {
    let s = alpha + beta;
    numerator(alpha, beta) / (1.0 - s * s)
}

/// Limit of the kernel on the shell `alpha + beta = shell` (shell = +-1) at
/// fixed `alpha - beta = diff`.
pub fn shell_limit(shell: f64, diff: f64) -> Complex64 {
    let alpha = 0.5 * (shell + diff);
    let beta = 0.5 * (shell - diff);
    let (h, h1) = h_jet(alpha);
    let e = Complex64::from_polar(1.0, PI * alpha);
    let w = 2.0 * alpha + beta;
    // d/ds of the numerator along the shell normal
    let dn = I * 0.5 * e * (I * (PI / 2.0) * w * h + 1.5 * h + 0.5 * w * h1);
    -dn / (2.0 * shell)
}

/// Closed-form kernel, with linear interpolation towards the shell limit
/// within [`SHELL_RADIUS`] of `alpha + beta = +-1`.
pub fn pair_kernel(alpha: f64, beta: f64) -> Complex64 {
    let s = alpha + beta;
    for shell in [1.0, -1.0] {
        let off = s - shell;
        if off.abs() < SHELL_RADIUS {
            let diff = alpha - beta;
            let limit = shell_limit(shell, diff);
            let edge_s = shell + SHELL_RADIUS.copysign(off);
            let edge = closed_form(0.5 * (edge_s + diff), 0.5 * (edge_s - diff));
            return limit + (edge - limit) * (off.abs() / SHELL_RADIUS);
        }
    }
    closed_form(alpha, beta)
}

/// Kernel value with first and second partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelJet {
    pub value: Complex64,
    pub d_alpha: Complex64,
    pub d_beta: Complex64,
    pub d_alpha_alpha: Complex64,
    pub d_alpha_beta: Complex64,
    pub d_beta_beta: Complex64,
}

/// Kernel and derivatives from the divided-difference representation
///
/// ```text
/// I = -1/4 sum_{s1, s2 = +-1} s1 s2 F[0, z1, z2],  F(z) = e^{pi z},
/// z1 = i (alpha - beta + s1),  z2 = i (2 alpha + s1 + s2),
/// ```
///
/// which has no removable points to special-case.
pub fn pair_kernel_jet(alpha: f64, beta: f64) -> KernelJet {
    let zero = Complex64::new(0.0, 0.0);
    let mut jet = KernelJet {
        value: zero,
        d_alpha: zero,
        d_beta: zero,
        d_alpha_alpha: zero,
        d_alpha_beta: zero,
        d_beta_beta: zero,
    };
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let z1 = I * (alpha - beta + s1);
            let z2 = I * (2.0 * alpha + s1 + s2);
            let f = kernel_differences(z1, z2);
            let w = -0.25 * s1 * s2;
            jet.value += f.f11 * w;
            jet.d_alpha += (I * f.f21 + 2.0 * I * f.f12) * w;
            jet.d_beta += -I * f.f21 * w;
            jet.d_alpha_alpha += (-2.0 * f.f31 - 4.0 * f.f22 - 8.0 * f.f13) * w;
            jet.d_alpha_beta += (2.0 * f.f31 + 2.0 * f.f22) * w;
            jet.d_beta_beta += -2.0 * f.f31 * w;
        }
    }
    jet
}
