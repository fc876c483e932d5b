//! Adaptive quadrature for the integrand families that show up in detector
//! response calculations: Gaussian-damped and undamped oscillatory
//! semi-infinite integrals, and finite integrals with removable
//! singularities at known points.

mod cubature;
mod extrapolation;
mod gauss_kronrod;
mod semi_infinite;

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub use cubature::{integrate_2d, integrate_nested};
pub use extrapolation::{wynn_epsilon, EpsilonTable};
pub use gauss_kronrod::{integrate_finite, integrate_finite_with_breaks};
pub use semi_infinite::{gaussian_cutoff, integrate_semi_infinite};

/// How the part of a semi-infinite integral beyond the last breakpoint is
/// treated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailMode {
    /// The integrand carries an envelope no larger than `exp(-(x/scale)^2)`.
    /// The range is cut where that envelope drops below `abs_tol / 100`.
    GaussianDamped { scale: f64 },
    /// The integrand decays algebraically while oscillating with the given
    /// asymptotic period. Half-period panels are summed and the partial sums
    /// are accelerated with the epsilon algorithm.
    OscillatoryPartition { period: f64 },
    /// Smooth algebraic decay without oscillation; the half line is mapped
    /// onto [0, 1) with `x = lower + t / (1 - t)`.
    Algebraic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_mode: TailMode,
    /// Half-width of the window around an exclusion center in which the
    /// integrand is replaced by linear interpolation.
    pub singularity_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            tail_mode: TailMode::Algebraic,
            singularity_radius: 1e-4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tail(mut self, tail_mode: TailMode) -> Self {
        self.tail_mode = tail_mode;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.rel_tol) || !positive(self.abs_tol) || !positive(self.singularity_radius) {
            return Err(QuadError::InvalidSpec(format!(
                "tolerances and singularity radius must be positive (rel_tol={}, abs_tol={}, radius={})",
                self.rel_tol, self.abs_tol, self.singularity_radius
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadError::InvalidSpec("max_subdivisions must be at least 1".into()));
        }
        match self.tail_mode {
            TailMode::GaussianDamped { scale } if !positive(scale) => {
                Err(QuadError::InvalidSpec(format!("gaussian tail scale must be positive, got {scale}")))
            }
            TailMode::OscillatoryPartition { period } if !positive(period) => {
                Err(QuadError::InvalidSpec(format!("oscillation period must be positive, got {period}")))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn tolerance(&self, value_magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value_magnitude)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue<T> {
    pub value: T,
    pub err_estimate: f64,
    pub evaluations: usize,
}

impl<T: QuadValue> IntegralValue<T> {
    pub fn zero() -> Self {
        IntegralValue { value: T::zero(), err_estimate: 0.0, evaluations: 0 }
    }

    /// Sum of two estimates; errors add linearly.
    pub fn combine(self, other: Self) -> Self {
        IntegralValue {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        IntegralValue {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

/// A removable singularity at `center` whose limiting integrand value is
/// known in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exclusion<T> {
    pub center: f64,
    pub limit: T,
}

impl<T> Exclusion<T> {
    pub fn new(center: f64, limit: T) -> Self {
        Exclusion { center, limit }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature did not converge after {evaluations} evaluations: best estimate {best} with error {err:e}")]
    NonConvergence { best: Complex64, err: f64, evaluations: usize },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
}

/// Scalar types the engine can integrate. Complex values are handled as a
/// pair of real parts wherever the algorithm is not linear.
pub trait QuadValue:
    Copy + Send + Sync + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn parts(self) -> [f64; 2];
    fn from_parts(parts: [f64; 2]) -> Self;
    fn to_complex(self) -> Complex64;

    fn is_finite(&self) -> bool {
        let [re, im] = self.parts();
        re.is_finite() && im.is_finite()
    }
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn parts(self) -> [f64; 2] {
        [self, 0.0]
    }
    fn from_parts(parts: [f64; 2]) -> Self {
        parts[0]
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn parts(self) -> [f64; 2] {
        [self.re, self.im]
    }
    fn from_parts(parts: [f64; 2]) -> Self {
        Complex64::new(parts[0], parts[1])
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Integrand wrapper that swaps in linear interpolation near exclusions.
pub(crate) struct Excluded<T, F> {
    f: F,
    radius: f64,
    windows: Vec<Window<T>>,
}

#[derive(Clone, Copy)]
struct Window<T> {
    center: f64,
    limit: T,
    left: T,
    right: T,
}

impl<T: QuadValue, F: Fn(f64) -> T> Excluded<T, F> {
    pub(crate) fn new(f: F, exclusions: &[Exclusion<T>], radius: f64) -> Self {
        let windows = exclusions
            .iter()
            .map(|e| Window {
                center: e.center,
                limit: e.limit,
                left: f(e.center - radius),
                right: f(e.center + radius),
            })
            .collect();
        Excluded { f, radius, windows }
    }

    pub(crate) fn eval(&self, x: f64) -> T {
        for w in &self.windows {
            let d = x - w.center;
            if d.abs() < self.radius {
                let t = d.abs() / self.radius;
                let edge = if d < 0.0 { w.left } else { w.right };
                return w.limit + (edge - w.limit) * t;
            }
        }
        (self.f)(x)
    }

    /// Breakpoints that keep the interpolation kinks on subinterval edges.
    pub(crate) fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = Vec::new();
        for w in &self.windows {
            for p in [w.center - self.radius, w.center, w.center + self.radius] {
                if p > a && p < b {
                    pts.push(p);
                }
            }
        }
        pts
    }
}
