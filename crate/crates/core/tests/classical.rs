use std::f64::consts::PI;

use num_complex::Complex64;
use udw_harvest::classical::*;
use udw_harvest::kernel::pair_kernel;
use udw_harvest::quadrature::QuadratureSpec;
use udw_harvest::scenario::{ModelVariant, ScenarioConfig};
use udw_harvest::HarvestError;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

/// Composite Simpson rule with `n` (even) panels.
fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// `pi/2 - Si(x)` from the auxiliary asymptotic series, good to ~1e-12 for x >= 40.
fn si_complement(x: f64) -> f64 {
    let x2 = x * x;
    let f = (1.0 - 2.0 / x2 + 24.0 / (x2 * x2) - 720.0 / (x2 * x2 * x2)) / x;
    let g = (1.0 - 6.0 / x2 + 120.0 / (x2 * x2) - 5040.0 / (x2 * x2 * x2)) / x2;
    f * x.cos() + g * x.sin()
}

#[test]
fn switching_examples() {
    assert_eq!(switching(PI / 2.0, 1.0), 1.0);
    assert_eq!(switching(-0.1, 1.0), 0.0);
    assert!(switching(PI, 1.0).abs() < 1e-15);
    assert_eq!(switching(3.5, 1.0), 0.0);
    assert_eq!(switching(PI, 2.0), 1.0);
}

#[test]
fn spectral_a_examples() {
    let limit = PI * PI / 8.0;
    assert!((spectral_a(0.5, 0.5) - limit).abs() < 1e-10);
    assert!((spectral_a(0.0, 1.0) - limit).abs() < 1e-10);
    assert!((spectral_a(1.0, 3.0) - 2.0 / 225.0).abs() < 1e-15);
    for i in 0..2000 {
        let k = i as f64 * 0.01;
        assert!(spectral_a(k, 0.3) >= 0.0);
    }
}

#[test]
fn spectral_b_examples() {
    assert!(spectral_b(0.5, 0.5).norm() < 1e-14);

    // first term at a = 1: average of the two one-sided neighbours
    for k in [0.0, 0.7, 2.5] {
        let first = |a: f64| spectral_b(k, a) - Complex64::from_polar(1.0, -PI * a) * udw_harvest::special::g(a - k);
        let side = 0.5 * (first(1.0 + 1e-5) + first(1.0 - 1e-5));
        let at = first(1.0);
        assert!((at - side).norm() < 1e-8, "k = {k}: {at} vs {side}");
        let expected = Complex64::new(0.0, PI * (2.0 + k) / 4.0);
        assert!((at - expected).norm() < 1e-12, "k = {k}: {at} vs {expected}");
    }

    // a - k = 1: the numerator vanishes and the quotient stays finite
    let at = spectral_b(0.5, 1.5);
    let side = 0.5 * (spectral_b(0.5 + 1e-5, 1.5) + spectral_b(0.5 - 1e-5, 1.5));
    assert!(at.is_finite());
    assert!((at - side).norm() < 1e-8);
}

#[test]
fn pointlike_excitation_frozen() {
    // Frozen from an independent adaptive-quadrature evaluation of the
    // pointlike integral.
    let p = excitation_smeared(1.0, None, &spec()).unwrap();
    assert!(rel(p.value, 0.018726157623904047) < 1e-8, "{}", p.value);
    let p = excitation_smeared(1.0, Some(1.0), &spec()).unwrap();
    assert!(rel(p.value, 0.014285064603068571) < 1e-9, "{}", p.value);
}

#[test]
fn narrow_smearing_recovers_pointlike() {
    let p0 = excitation_smeared(1.0, None, &spec()).unwrap().value;
    let pn = excitation_smeared(1.0, Some(1e-3), &spec()).unwrap().value;
    assert!(rel(pn, p0) < 1e-3);
    let m0 = entangling_smeared(1.0, 1.0, None, &spec()).unwrap().value.norm();
    let mn = entangling_smeared(1.0, 1.0, Some(1e-3), &spec()).unwrap().value.norm();
    assert!(rel(mn, m0) < 1e-3);
}

#[test]
fn excitation_decreases_with_gap_and_width() {
    let p_small = excitation_smeared(0.1, None, &spec()).unwrap().value;
    let p_large = excitation_smeared(50.0, None, &spec()).unwrap().value;
    assert!(p_large < p_small);
    let widths = [0.0, 0.25, 0.5, 1.0, 2.0, 10.0, 1e3];
    let ps: Vec<f64> = widths.iter().map(|&w| excitation_smeared(1.0, Some(w), &spec()).unwrap().value).collect();
    assert!(ps.windows(2).all(|p| p[1] < p[0]), "{ps:?}");
    assert!(ps.iter().all(|&p| p > 0.0));
}

#[test]
fn pointlike_entangling_against_brute_force() {
    let (a, s) = (0.1, 0.1);
    let got = entangling_smeared(a, s, None, &spec()).unwrap().value;

    // Fine Simpson on [0, 400]; beyond that the kernel is -X/k + O(k^-3)
    // with X = (i/2) e^{i pi a} sin(pi a) / (a (1 - a^2)), so the tail is
    // -X (pi/2 - Si(400 s)) up to ~1e-8.
    let upper = 400.0;
    let head = simpson(|k| pair_kernel(a, k) * (k * s).sin(), 0.0, upper, 1_000_000);
    let x = Complex64::new(0.0, 0.5) * Complex64::from_polar(1.0, PI * a) * ((PI * a).sin() / (a * (1.0 - a * a)));
    let tail = -x * si_complement(upper * s);
    let oracle = -(head + tail) / (2.0 * PI * PI * s);
    assert!((got - oracle).norm() / oracle.norm() < 1e-7, "{got} vs {oracle}");
}

#[test]
fn smeared_entangling_against_simpson() {
    for (a, s, l) in [(1.0, 1.0, 1.0), (0.1, 0.1, 1.0), (2.3, 0.7, 0.5)] {
        let got = entangling_smeared(a, s, Some(l), &spec()).unwrap().value;
        let upper = 14.0 / l;
        let raw = simpson(|k| pair_kernel(a, k) * ((k * s).sin() * (-0.25 * l * l * k * k).exp()), 0.0, upper, 200_000);
        let oracle = -raw / (2.0 * PI * PI * s);
        assert!((got - oracle).norm() / oracle.norm() < 1e-9, "{a} {s} {l}: {got} vs {oracle}");
    }
}

#[test]
fn entangling_decays_with_separation() {
    let near = entangling_smeared(1.0, 0.1, None, &spec()).unwrap().value.norm();
    let far = entangling_smeared(1.0, 1e3, None, &spec()).unwrap().value.norm();
    assert!(far < 1e-6 * near, "{far} vs {near}");

    let first = entangling_smeared(0.1, 0.05, None, &spec()).unwrap().value.norm();
    for i in 1..=20 {
        let s = 0.05 + i as f64 * 0.2475;
        let m = entangling_smeared(0.1, s, None, &spec()).unwrap().value.norm();
        assert!(m <= first, "s = {s}");
    }
}

#[test]
fn smearing_lowers_entangling_term_near_origin() {
    let m0 = entangling_smeared(0.1, 0.1, None, &spec()).unwrap().value.norm();
    let m1 = entangling_smeared(0.1, 0.1, Some(1.0), &spec()).unwrap().value.norm();
    assert!(m1 < m0);
}

#[test]
fn shell_integrand_is_continuous() {
    // the M integrand at a + k = 1 is finite; neighbours agree with its value
    let (a, s) = (0.3, 0.8);
    let f = |k: f64| pair_kernel(a, k) * (k * s).sin();
    let centre = f(1.0 - a);
    for d in [1e-6, -1e-6] {
        assert!((f(1.0 - a + d) - centre).norm() / centre.norm() < 1e-4);
    }
}

#[test]
fn negativity_via_configs() {
    let point = ScenarioConfig::new(0.1, 0.1, ModelVariant::Pointlike);
    let smeared = ScenarioConfig::new(0.1, 0.1, ModelVariant::Smeared { width: 1.0 });
    let n_point = negativity_classical(&point, &spec()).unwrap();
    let n_smeared = negativity_classical(&smeared, &spec()).unwrap();
    assert!(n_point > 0.0);
    assert!(n_point >= n_smeared);

    // |M| <= P clamps to zero
    let far = ScenarioConfig::new(3.0, 5.0, ModelVariant::Pointlike);
    let p = excitation_classical(&far, &spec()).unwrap().value;
    let m = entangling_classical(&far, &spec()).unwrap().value.norm();
    assert!(m <= p);
    assert_eq!(negativity_classical(&far, &spec()).unwrap(), 0.0);
}

#[test]
fn entangling_needs_separation() {
    let cfg = ScenarioConfig::new(1.0, 0.0, ModelVariant::Pointlike);
    assert!(matches!(entangling_classical(&cfg, &spec()), Err(HarvestError::InvalidConfig(_))));
}
