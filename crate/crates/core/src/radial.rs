//! Radial integrals `int_0^inf w(k) phi(G(k)) dk` with a quadratic chirp
//! `G(k) = a + rho k + k^2 / (2 m)` and `phi` one of the bump profiles.
//!
//! The range is split at `K1` where `G` reaches an integer `X1 >= 2` on its
//! increasing branch. Below `K1` the integral is done adaptively in `k`, with
//! the shell `G = 1` registered as an exclusion. Above it the variable is
//! changed to `u = G(k)`, which turns the chirp into a plain period-2
//! oscillation; the smooth and oscillating parts of `phi` are then
//! integrated separately (mapped algebraic tail and half-period panels with
//! epsilon acceleration).

use crate::quadrature::{
    integrate_finite_with_breaks, integrate_semi_infinite, Exclusion, IntegralValue, QuadError, QuadratureSpec, TailMode,
};
use crate::special::{
    bump, bump_oscillating, bump_second, bump_second_oscillating, bump_second_smooth, bump_smooth,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Chirp {
    pub a: f64,
    pub rho: f64,
    /// `1 / (2 m)`; zero for infinite mass.
    pub inv_two_m: f64,
}

impl Chirp {
    pub fn new(a: f64, rho: f64, mass: f64) -> Self {
        let inv_two_m = if mass.is_infinite() { 0.0 } else { 0.5 / mass };
        Chirp { a, rho, inv_two_m }
    }

    pub fn at(&self, k: f64) -> f64 {
        self.a + k * (self.rho + k * self.inv_two_m)
    }

    pub fn slope(&self, k: f64) -> f64 {
        self.rho + 2.0 * self.inv_two_m * k
    }

    /// Start of the increasing branch on `k >= 0`.
    pub fn vertex(&self) -> f64 {
        if self.rho < 0.0 && self.inv_two_m > 0.0 {
            -self.rho / (2.0 * self.inv_two_m)
        } else {
            0.0
        }
    }

    /// Inverse of `G` on the increasing branch.
    pub fn k_of(&self, u: f64) -> f64 {
        let du = u - self.a;
        if self.inv_two_m == 0.0 {
            return du / self.rho;
        }
        let disc = (self.rho * self.rho + 4.0 * self.inv_two_m * du).max(0.0);
        if self.rho > 0.0 {
            2.0 * du / (self.rho + disc.sqrt())
        } else {
            (disc.sqrt() - self.rho) / (2.0 * self.inv_two_m)
        }
    }

    /// Non-negative solutions of `G(k) = target`.
    pub fn crossings(&self, target: f64) -> Vec<f64> {
        let c = self.a - target;
        let mut roots = Vec::new();
        if self.inv_two_m == 0.0 {
            if self.rho != 0.0 {
                roots.push(-c / self.rho);
            }
        } else {
            let disc = self.rho * self.rho - 4.0 * self.inv_two_m * c;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                // numerically stable pair
                let qv = -0.5 * (self.rho + sq.copysign(self.rho));
                if qv != 0.0 {
                    roots.push(qv / self.inv_two_m);
                    roots.push(c / qv);
                } else {
                    roots.push(0.0);
                }
            }
        }
        roots.retain(|&k| k >= 0.0 && k.is_finite());
        roots.sort_by(f64::total_cmp);
        roots.dedup();
        roots
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Profile {
    /// `[1 + cos(pi u)] / (u^2 - 1)^2`
    Bump,
    /// Second derivative of `Bump`.
    BumpSecond,
    /// `Bump(u - c k) + Bump(u + c k) - 2 Bump(u)`.
    BumpSecondDifference { step_per_k: f64 },
}

impl Profile {
    fn full(&self, u: f64, k: f64) -> f64 {
        match *self {
            Profile::Bump => bump(u),
            Profile::BumpSecond => bump_second(u),
            Profile::BumpSecondDifference { step_per_k } => {
                let d = step_per_k * k;
                (bump(u - d) - bump(u)) + (bump(u + d) - bump(u))
            }
        }
    }

    fn smooth(&self, u: f64, k: f64) -> f64 {
        match *self {
            Profile::Bump => bump_smooth(u),
            Profile::BumpSecond => bump_second_smooth(u),
            Profile::BumpSecondDifference { step_per_k } => {
                let d = step_per_k * k;
                (bump_smooth(u - d) - bump_smooth(u)) + (bump_smooth(u + d) - bump_smooth(u))
            }
        }
    }

    fn oscillating(&self, u: f64, k: f64) -> f64 {
        match *self {
            Profile::Bump => bump_oscillating(u),
            Profile::BumpSecond => bump_second_oscillating(u),
            Profile::BumpSecondDifference { step_per_k } => {
                let d = step_per_k * k;
                (bump_oscillating(u - d) - bump_oscillating(u)) + (bump_oscillating(u + d) - bump_oscillating(u))
            }
        }
    }
}

/// Weight `k^power`, optionally times `exp(-width^2 k^2 / 4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Weight {
    pub power: i32,
    pub width: Option<f64>,
}

impl Weight {
    fn at(&self, k: f64) -> f64 {
        let base = k.powi(self.power);
        match self.width {
            Some(w) => base * (-0.25 * w * w * k * k).exp(),
            None => base,
        }
    }
}

pub(crate) fn radial_integral(
    chirp: Chirp,
    weight: Weight,
    profile: Profile,
    spec: &QuadratureSpec,
) -> Result<IntegralValue<f64>, QuadError> {
    if chirp.inv_two_m == 0.0 && chirp.rho <= 0.0 {
        return Err(QuadError::InvalidSpec(format!("chirp must grow without bound (rho = {})", chirp.rho)));
    }
    let vertex = chirp.vertex();
    let start = chirp.a.max(1.0).ceil() + 1.0;
    let k1 = chirp.k_of(start).max(vertex);

    let integrand = |k: f64| weight.at(k) * profile.full(chirp.at(k), k);
    let mut shells = chirp.crossings(1.0);
    shells.extend(chirp.crossings(-1.0));
    let exclusions: Vec<Exclusion<f64>> = shells
        .iter()
        .filter(|&&k| k > spec.singularity_radius && k < k1 - spec.singularity_radius)
        .map(|&k| Exclusion::new(k, integrand(k)))
        .collect();
    let mut breaks = shells.clone();
    breaks.push(vertex);
    let head = integrate_finite_with_breaks(integrand, 0.0, k1, &breaks, spec, &exclusions)?;

    let jacobian = |u: f64| {
        let k = chirp.k_of(u);
        (k, 1.0 / chirp.slope(k))
    };
    let smooth = integrate_semi_infinite(
        |u: f64| {
            let (k, dk) = jacobian(u);
            weight.at(k) * dk * profile.smooth(u, k)
        },
        start,
        &spec.with_tail(TailMode::Algebraic),
        &[],
    )?;
    let oscillating = integrate_semi_infinite(
        |u: f64| {
            let (k, dk) = jacobian(u);
            weight.at(k) * dk * profile.oscillating(u, k)
        },
        start,
        &spec.with_tail(TailMode::OscillatoryPartition { period: 2.0 }),
        &[],
    )?;
    Ok(head.combine(smooth).combine(oscillating))
}
