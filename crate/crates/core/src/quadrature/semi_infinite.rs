use super::extrapolation::EpsilonTable;
use super::gauss_kronrod::integrate_finite_with_breaks;
use super::{Excluded, Exclusion, IntegralValue, QuadError, QuadValue, QuadratureSpec, TailMode};

const MAX_PANELS: usize = 4000;
const EPSILON_WINDOW: usize = 40;

/// Integrates `f` over `[lower, inf)` using the strategy in `spec.tail_mode`.
pub fn integrate_semi_infinite<T, F>(
    f: F,
    lower: f64,
    spec: &QuadratureSpec,
    exclusions: &[Exclusion<T>],
) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    if !lower.is_finite() {
        return Err(QuadError::InvalidInterval { a: lower, b: f64::INFINITY });
    }
    match spec.tail_mode {
        TailMode::GaussianDamped { scale } => {
            let cut = gaussian_cutoff(scale, spec.abs_tol);
            if cut <= lower {
                return Ok(IntegralValue::zero());
            }
            integrate_finite_with_breaks(f, lower, cut, &[], spec, exclusions)
        }
        TailMode::OscillatoryPartition { period } => partition(f, lower, period, spec, exclusions),
        TailMode::Algebraic => algebraic(f, lower, spec, exclusions),
    }
}

/// Abscissa where `exp(-(x/scale)^2)` falls to `abs_tol / 100`.
pub fn gaussian_cutoff(scale: f64, abs_tol: f64) -> f64 {
    scale * (100.0 / abs_tol).ln().max(0.0).sqrt()
}

fn partition<T, F>(
    f: F,
    lower: f64,
    period: f64,
    spec: &QuadratureSpec,
    exclusions: &[Exclusion<T>],
) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let half = 0.5 * period;
    let mut table = EpsilonTable::new(EPSILON_WINDOW);
    let mut sum = T::zero();
    let mut panel_err = 0.0;
    let mut evaluations = 0;
    let mut history: Vec<[f64; 2]> = Vec::new();
    let mut quiet = 0;
    for n in 0..MAX_PANELS {
        let a = lower + n as f64 * half;
        let b = a + half;
        let local: Vec<Exclusion<T>> =
            exclusions.iter().filter(|e| e.center + spec.singularity_radius > a && e.center - spec.singularity_radius < b).copied().collect();
        let panel = integrate_finite_with_breaks(&f, a, b, &[], spec, &local)?;
        evaluations += panel.evaluations;
        panel_err += panel.err_estimate;
        sum = sum + panel.value;
        table.push(sum.parts());

        let tol = spec.tolerance(sum.magnitude());
        if panel.value.magnitude() <= 1e-3 * tol {
            quiet += 1;
            if quiet >= 3 {
                return Ok(IntegralValue { value: sum, err_estimate: panel_err, evaluations });
            }
        } else {
            quiet = 0;
        }

        if table.len() < 4 {
            continue;
        }
        let (est, _) = table.estimate();
        history.push(est);
        if history.len() >= 3 {
            let k = history.len();
            let d1 = dist(history[k - 1], history[k - 2]);
            let d2 = dist(history[k - 2], history[k - 3]);
            let tol = spec.tolerance(T::from_parts(est).magnitude());
            if d1 <= tol && d2 <= tol {
                return Ok(IntegralValue { value: T::from_parts(est), err_estimate: d1 + d2 + panel_err, evaluations });
            }
        }
    }
    let (est, err) = table.estimate();
    Err(QuadError::NonConvergence { best: T::from_parts(est).to_complex(), err: err + panel_err, evaluations })
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn algebraic<T, F>(f: F, lower: f64, spec: &QuadratureSpec, exclusions: &[Exclusion<T>]) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let wrapped = Excluded::new(&f, exclusions, spec.singularity_radius);
    let to_t = |x: f64| (x - lower) / (1.0 + x - lower);
    let mut breaks: Vec<f64> = wrapped.breakpoints(lower, f64::INFINITY).into_iter().map(to_t).collect();
    breaks.push(0.5);
    let g = |t: f64| {
        let s = 1.0 - t;
        wrapped.eval(lower + t / s) * (1.0 / (s * s))
    };
    integrate_finite_with_breaks(g, 0.0, 1.0, &breaks, spec, &[])
}
