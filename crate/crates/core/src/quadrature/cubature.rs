use std::cell::RefCell;

use super::gauss_kronrod::{integrate_finite, integrate_finite_with_breaks};
use super::{IntegralValue, QuadError, QuadValue, QuadratureSpec};

/// Iterated adaptive integration of `f(x, y)` over `[x0, x1] x [y0, y1]`.
///
/// The inner integral runs at a tenth of the outer tolerances so its error
/// does not masquerade as integrand roughness in the outer pass.
pub fn integrate_2d<T, F>(f: F, x: (f64, f64), y: (f64, f64), spec: &QuadratureSpec) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64, f64) -> T,
{
    let inner_spec = spec.with_tolerances(0.1 * spec.rel_tol, 0.1 * spec.abs_tol / (x.1 - x.0).abs().max(1.0));
    integrate_nested(|xv| integrate_finite(|yv| f(xv, yv), y.0, y.1, &inner_spec, &[]), x.0, x.1, &[], spec)
}

/// Outer adaptive pass over `[a, b]` whose integrand is itself an integral.
/// The first inner failure aborts the whole computation; inner error
/// estimates are folded into the returned one.
pub fn integrate_nested<T, F>(inner: F, a: f64, b: f64, breaks: &[f64], spec: &QuadratureSpec) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> Result<IntegralValue<T>, QuadError>,
{
    let failure: RefCell<Option<QuadError>> = RefCell::new(None);
    let inner_err = RefCell::new(0.0f64);
    let inner_evals = RefCell::new(0usize);
    let outer = integrate_finite_with_breaks(
        |x| {
            if failure.borrow().is_some() {
                return T::zero();
            }
            match inner(x) {
                Ok(v) => {
                    let mut e = inner_err.borrow_mut();
                    *e = e.max(v.err_estimate);
                    *inner_evals.borrow_mut() += v.evaluations;
                    v.value
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    T::zero()
                }
            }
        },
        a,
        b,
        breaks,
        spec,
        &[],
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(IntegralValue {
        value: outer.value,
        err_estimate: outer.err_estimate + inner_err.into_inner() * (b - a).abs(),
        evaluations: inner_evals.into_inner(),
    })
}
