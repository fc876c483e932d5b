//! Entire functions built from ratios with removable zeros. Each one is
//! evaluated in a factored form `sinc * rational` within `NEAR` of its
//! removable points, where the direct quotient would lose digits.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

const NEAR: f64 = 0.1;

/// `sin(y)/y` and its first two derivatives.
pub fn sinc_jet(y: f64) -> (f64, f64, f64) {
    if y.abs() < 0.5 {
        // Alternating Taylor series; 12 terms exhaust double precision here.
        let y2 = y * y;
        let (mut s, mut d1, mut d2) = (1.0, 0.0, 0.0);
        let mut term = 1.0; // (-1)^n / (2n+1)!
        let mut pow = 1.0; // y^{2n-2}
        for n in 1..12 {
            let m = 2.0 * n as f64;
            term /= -(m * (m + 1.0));
            s += term * pow * y2;
            d1 += term * m * pow * y;
            d2 += term * m * (m - 1.0) * pow;
            pow *= y2;
        }
        (s, d1, d2)
    } else {
        let (sn, cs) = y.sin_cos();
        let s = sn / y;
        let d1 = (cs - s) / y;
        let d2 = -s - 2.0 * d1 / y;
        (s, d1, d2)
    }
}

pub fn sinc(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        1.0 - y * y / 6.0
    } else {
        y.sin() / y
    }
}

/// `q(x) = cos(pi x / 2) / (x^2 - 1)` with first and second derivatives.
pub fn q_jet(x: f64) -> (f64, f64, f64) {
    let (centre, sign, rat) = if (x - 1.0).abs() < NEAR {
        // q = -(pi/2) sinc(pi d/2) / (2 + d)
        (1.0, -1.0, 2.0)
    } else if (x + 1.0).abs() < NEAR {
        // q = (pi/2) sinc(pi d/2) / (d - 2)
        (-1.0, 1.0, -2.0)
    } else {
        let (sn, cs) = (FRAC_PI_2 * x).sin_cos();
        let d = x * x - 1.0;
        let inv = 1.0 / d;
        let q = cs * inv;
        let c1 = -FRAC_PI_2 * sn;
        let c2 = -FRAC_PI_2 * FRAC_PI_2 * cs;
        let q1 = c1 * inv - cs * 2.0 * x * inv * inv;
        let q2 = c2 * inv - 4.0 * x * c1 * inv * inv + cs * (8.0 * x * x * inv - 2.0) * inv * inv;
        return (q, q1, q2);
    };
    let d = x - centre;
    let (s, s1, s2) = sinc_jet(FRAC_PI_2 * d);
    // R(d) = 1 / (d + rat) with rat = +-2
    let r = 1.0 / (d + rat);
    let r1 = -r * r;
    let r2 = 2.0 * r * r * r;
    let c = sign * FRAC_PI_2;
    let q = c * s * r;
    let q1 = c * (FRAC_PI_2 * s1 * r + s * r1);
    let q2 = c * (FRAC_PI_2 * FRAC_PI_2 * s2 * r + 2.0 * FRAC_PI_2 * s1 * r1 + s * r2);
    (q, q1, q2)
}

/// `[1 + cos(pi x)] / (x^2 - 1)^2`, finite everywhere (value pi^2/8 at x = +-1).
pub fn bump(x: f64) -> f64 {
    let (q, _, _) = q_jet(x);
    2.0 * q * q
}

/// Second derivative of [`bump`].
pub fn bump_second(x: f64) -> f64 {
    let (q, q1, q2) = q_jet(x);
    4.0 * (q1 * q1 + q * q2)
}

/// Non-oscillating part of [`bump`] for `|x| > 1`: `1 / (x^2 - 1)^2`.
pub fn bump_smooth(x: f64) -> f64 {
    let d = x * x - 1.0;
    1.0 / (d * d)
}

/// Oscillating remainder of [`bump`]: `cos(pi x) / (x^2 - 1)^2`.
pub fn bump_oscillating(x: f64) -> f64 {
    let d = x * x - 1.0;
    (PI * x).cos() / (d * d)
}

/// Non-oscillating part of [`bump_second`] for `|x| > 1`.
pub fn bump_second_smooth(x: f64) -> f64 {
    let d = x * x - 1.0;
    (20.0 * x * x + 4.0) / (d * d * d * d)
}

/// Oscillating remainder of [`bump_second`].
pub fn bump_second_oscillating(x: f64) -> f64 {
    let d = x * x - 1.0;
    let d2 = d * d;
    let (sn, cs) = (PI * x).sin_cos();
    cs * ((20.0 * x * x + 4.0) / (d2 * d2) - PI * PI / d2) + sn * 8.0 * PI * x / (d2 * d)
}

/// `h(a) = sin(pi a) / (a (1 - a^2))` and its derivative.
pub fn h_jet(a: f64) -> (f64, f64) {
    let n = a.round();
    if n.abs() <= 1.0 && (a - n).abs() < NEAR {
        let d = a - n;
        let (s, s1, _) = sinc_jet(PI * d);
        // R(d) such that h = pi sinc(pi d) R(d)
        let (r, r1) = if n == 0.0 {
            let r = 1.0 / (1.0 - d * d);
            (r, 2.0 * d * r * r)
        } else if n == 1.0 {
            let p = (1.0 + d) * (2.0 + d);
            let r = 1.0 / p;
            (r, -(3.0 + 2.0 * d) * r * r)
        } else {
            let p = (1.0 - d) * (2.0 - d);
            let r = 1.0 / p;
            (r, (3.0 - 2.0 * d) * r * r)
        };
        return (PI * s * r, PI * (PI * s1 * r + s * r1));
    }
    let (sn, cs) = (PI * a).sin_cos();
    let p = a * (1.0 - a * a);
    let p1 = 1.0 - 3.0 * a * a;
    (sn / p, (PI * cs * p - sn * p1) / (p * p))
}

pub fn h(a: f64) -> f64 {
    h_jet(a).0
}

/// `g(x) = (1 + e^{i pi x}) / (1 - x^2)`, entire.
pub fn g(x: f64) -> Complex64 {
    let near_plus = (x - 1.0).abs() < NEAR;
    let near_minus = (x + 1.0).abs() < NEAR;
    if near_plus || near_minus {
        let d = if near_plus { x - 1.0 } else { x + 1.0 };
        let phase = Complex64::from_polar(1.0, FRAC_PI_2 * d);
        let s = sinc(FRAC_PI_2 * d);
        let denom = if near_plus { 2.0 + d } else { -(2.0 - d) };
        return Complex64::new(0.0, PI * s / denom) * phase;
    }
    (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, PI * x)) / (1.0 - x * x)
}

/// Derivative of [`g`].
pub fn g_prime(x: f64) -> Complex64 {
    // g (1 - x^2) = 1 + e^{i pi x}  =>  g' = (i pi e^{i pi x} + 2 x g) / (1 - x^2)
    let near_plus = (x - 1.0).abs() < NEAR;
    let near_minus = (x + 1.0).abs() < NEAR;
    if near_plus || near_minus {
        // g = c * sinc(pi d / 2) e^{i pi d / 2} / (d + rat)
        let (d, c, rat) = if near_plus { (x - 1.0, PI, 2.0) } else { (x + 1.0, PI, -2.0) };
        let (s, s1, _) = sinc_jet(FRAC_PI_2 * d);
        let phase = Complex64::from_polar(1.0, FRAC_PI_2 * d);
        let r = 1.0 / (d + rat);
        let i = Complex64::new(0.0, 1.0);
        let ds = FRAC_PI_2 * s1 * r - s * r * r;
        return i * c * phase * (Complex64::new(ds, 0.0) + i * FRAC_PI_2 * s * r);
    }
    let e = Complex64::from_polar(1.0, PI * x);
    (Complex64::new(0.0, PI) * e + g(x) * (2.0 * x)) / (1.0 - x * x)
}
