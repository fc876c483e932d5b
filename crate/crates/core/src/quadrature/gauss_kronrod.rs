//! Globally adaptive 10/21-point Gauss-Kronrod integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Excluded, Exclusion, IntegralValue, QuadError, QuadValue, QuadratureSpec};

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208041227580,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rule<T> {
    pub value: T,
    pub err: f64,
    /// Integral of |f|, used for the roundoff floor.
    pub resabs: f64,
}

/// One application of the 21-point Kronrod rule with the QUADPACK error
/// heuristic.
pub(crate) fn qk21<T, F>(f: &F, a: f64, b: f64) -> Result<Rule<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<T, QuadError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { x })
        }
    };

    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    let fc = eval(center)?;
    let mut resg = T::zero();
    let mut resk = fc * WGK[10];
    let mut resabs = WGK[10] * fc.magnitude();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }

    let scale = half.abs();
    let value = resk * half;
    let resabs = resabs * scale;
    let resasc = resasc * scale;
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Rule { value, err, resabs })
}

struct Segment<T> {
    a: f64,
    b: f64,
    rule: Rule<T>,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rule.err == other.rule.err
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rule.err.total_cmp(&other.rule.err)
    }
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Inside `spec.singularity_radius` of each exclusion center the integrand is
/// replaced by linear interpolation towards the supplied limit.
pub fn integrate_finite<T, F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    exclusions: &[Exclusion<T>],
) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    integrate_finite_with_breaks(f, a, b, &[], spec, exclusions)
}

/// Like [`integrate_finite`] but starts from the partition induced by
/// `breaks` (points outside `(a, b)` are ignored).
pub fn integrate_finite_with_breaks<T, F>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
    exclusions: &[Exclusion<T>],
) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(IntegralValue::zero());
    }
    if exclusions.is_empty() {
        adapt(&f, a, b, breaks, spec)
    } else {
        let wrapped = Excluded::new(&f, exclusions, spec.singularity_radius);
        let mut pts: Vec<f64> = breaks.to_vec();
        pts.extend(wrapped.breakpoints(a, b));
        adapt(&|x| wrapped.eval(x), a, b, &pts, spec)
    }
}

fn adapt<T, F>(f: &F, a: f64, b: f64, breaks: &[f64], spec: &QuadratureSpec) -> Result<IntegralValue<T>, QuadError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Segment<T>> = Vec::new();
    let mut evaluations = 0usize;
    for w in pts.windows(2) {
        let rule = qk21(f, w[0], w[1])?;
        evaluations += 21;
        heap.push(Segment { a: w[0], b: w[1], rule });
    }

    let mut splits = 0usize;
    loop {
        let (total, err, resabs) = totals(&heap, &settled);
        let tol = spec.tolerance(total.magnitude());
        let floor = 100.0 * f64::EPSILON * resabs;
        if err <= tol.max(floor) {
            return Ok(IntegralValue { value: total, err_estimate: err, evaluations });
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => {
                return Err(QuadError::NonConvergence { best: total.to_complex(), err, evaluations });
            }
        };
        if splits >= spec.max_subdivisions {
            heap.push(worst);
            return Err(QuadError::NonConvergence { best: total.to_complex(), err, evaluations });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if width <= 1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE) || mid <= worst.a || mid >= worst.b {
            settled.push(worst);
            continue;
        }
        let left = qk21(f, worst.a, mid)?;
        let right = qk21(f, mid, worst.b)?;
        evaluations += 42;
        splits += 1;
        heap.push(Segment { a: worst.a, b: mid, rule: left });
        heap.push(Segment { a: mid, b: worst.b, rule: right });
    }
}

fn totals<T: QuadValue>(heap: &BinaryHeap<Segment<T>>, settled: &[Segment<T>]) -> (T, f64, f64) {
    let mut total = T::zero();
    let mut err = 0.0;
    let mut resabs = 0.0;
    for s in heap.iter().chain(settled.iter()) {
        total = total + s.rule.value;
        err += s.rule.err;
        resabs += s.rule.resabs;
    }
    (total, err, resabs)
}
