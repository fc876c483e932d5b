//! Negativity of the second-order two-detector state.

use num_complex::Complex64;

/// The parts of the perturbative density matrix that decide entanglement:
/// the two excitation probabilities and the entangling term (per unit
/// squared coupling).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderState {
    pub p_a: f64,
    pub p_b: f64,
    pub m: Complex64,
}

impl SecondOrderState {
    pub fn new(p_a: f64, p_b: f64, m: Complex64) -> Self {
        SecondOrderState { p_a, p_b, m }
    }

    pub fn negativity(&self) -> f64 {
        negativity(self)
    }
}

/// `max(0, sqrt((p_a - p_b)^2 / 4 + |m|^2) - (p_a + p_b) / 2)`.
///
/// For identical detectors this is `max(0, |m| - p)`.
pub fn negativity(state: &SecondOrderState) -> f64 {
    let half_gap = 0.5 * (state.p_a - state.p_b);
    let mean = 0.5 * (state.p_a + state.p_b);
    (half_gap.hypot(state.m.norm()) - mean).max(0.0)
}
