use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;
use udw_harvest::classical::{entangling_smeared, excitation_smeared, spectral_a, spectral_b};
use udw_harvest::delocalized::*;
use udw_harvest::quadrature::{integrate_2d, integrate_semi_infinite, Exclusion, QuadratureSpec, TailMode};
use udw_harvest::scenario::{ModelVariant, PathChoice, ScenarioConfig};
use udw_harvest::special::bump;
use udw_harvest::HarvestError;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn crel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

const PACKET_WIDTH: f64 = 4.0 / 9.0;

#[test]
fn template_u_is_even() {
    let args = TemplateArgs::new(1.0, 900.0, 1.0);
    let plus = template_u(0.3, &args, &spec()).unwrap().value;
    let minus = template_u(-0.3, &args, &spec()).unwrap().value;
    assert!(rel(minus, plus) < 1e-9);

    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let p = rng.gen_range(0.0..3.5 / PACKET_WIDTH);
        let a = template_u(p, &args, &spec()).unwrap().value;
        let b = template_u(-p, &args, &spec()).unwrap().value;
        assert!(rel(b, a) < 1e-9, "p = {p}");
    }
}

#[test]
fn template_u_at_rest_matches_direct_quadrature() {
    for (a, m, r) in [(1.0, 900.0, 1.0), (0.3, 400.0, 0.26), (2.0, 50.0, 1.0)] {
        let args = TemplateArgs::new(a, m, r);
        let got = template_u(0.0, &args, &spec()).unwrap().value;
        // spectral_A evaluated at the recoil-shifted argument, plain mapped tail
        let f = |k: f64| k * spectral_a(r * k + k * k / (2.0 * m), a);
        let shell = (2.0 * m * (1.0 - a) + m * m * r * r).sqrt() - m * r;
        let ex: Vec<Exclusion<f64>> = (a < 1.0).then(|| Exclusion::new(shell, f(shell))).into_iter().collect();
        let oracle_spec = QuadratureSpec { max_subdivisions: 20_000, ..spec() }.with_tail(TailMode::Algebraic).with_tolerances(1e-9, 1e-13);
        let oracle = 2.0 * integrate_semi_infinite(f, 0.0, &oracle_spec, &ex).unwrap().value;
        assert!(rel(got, oracle) < 1e-7, "{a} {m} {r}: {got} vs {oracle}");
    }
}

#[test]
fn template_u_heavy_limit_is_pointlike() {
    let u = template_u(0.0, &TemplateArgs::new(1.0, 1e9, 1.0), &spec()).unwrap().value;
    let point = 2.0 * PI * PI * excitation_smeared(1.0, None, &spec()).unwrap().value;
    assert!(rel(0.5 * u, point) < 1e-4);
}

#[test]
fn template_u_double_integral_matches_reduced_form() {
    let (a, m, p) = (1.0, 900.0, 60.0);
    let kmax = 30.0;
    let integrand = |z: f64, k: f64| k * bump(a + k + k * k / (2.0 * m) - k * p * z / m);
    let loose = spec().with_tolerances(1e-9, 1e-12);
    let two_d = integrate_2d(integrand, (-1.0, 1.0), (0.0, kmax), &loose).unwrap().value;
    // z done by a fixed 2000-panel Simpson rule inside a fine Simpson in k
    let z_simpson = |k: f64| {
        let n = 2000;
        let h = 2.0 / n as f64;
        let mut acc = integrand(-1.0, k) + integrand(1.0, k);
        for i in 1..n {
            acc += integrand(-1.0 + i as f64 * h, k) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    };
    let n = 6000;
    let h = kmax / n as f64;
    let mut reduced = z_simpson(0.0) + z_simpson(kmax);
    for i in 1..n {
        reduced += z_simpson(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    reduced *= h / 3.0;
    assert!(rel(two_d, reduced) < 1e-6, "{two_d} vs {reduced}");
}

#[test]
fn d2_template_u_matches_finite_differences() {
    let args = TemplateArgs::new(1.0, 900.0, 1.0);
    let symbolic = d2_template_u(&args, &spec()).unwrap().value;
    let fd = d2_template_u_fd(&args, 1e-2, &spec()).unwrap();
    assert!(rel(fd, symbolic) < 1e-4, "{fd} vs {symbolic}");

    let heavier = d2_template_u(&TemplateArgs::new(1.0, 1800.0, 1.0), &spec()).unwrap().value;
    assert!(heavier.abs() < symbolic.abs());
}

#[test]
fn curvature_correction_vanishes_for_heavy_packets() {
    let args = TemplateArgs::new(1.0, 1e9, 1.0);
    let lead = template_u(0.0, &args, &spec()).unwrap().value;
    let correction = 1.5 * d2_template_u(&args, &spec()).unwrap().value;
    assert!((correction / lead).abs() < 1e-6);
}

#[test]
fn template_v_reduces_to_classical_kernel() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        let a: f64 = rng.gen_range(0.05..4.0);
        let k: f64 = rng.gen_range(0.0..20.0);
        let near_shell = [(a + k - 1.0).abs(), (a - k).abs() - 1.0, (a - 1.0).abs()].iter().any(|d| d.abs() < 1e-3);
        if near_shell {
            continue;
        }
        let args = TemplateArgs::new(a, 900.0, 1.0);
        let lhs = template_v(k, 0.0, 0.0, &args) * (1.0 - (a + k) * (a + k));
        let rhs = 2.0 * Complex64::from_polar(1.0, PI * a) * spectral_b(k, a);
        assert!(crel(lhs, rhs) < 1e-10, "a = {a}, k = {k}: {lhs} vs {rhs}");
        checked += 1;
    }
}

#[test]
fn template_v_is_total() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..1_000_000 {
        let args = TemplateArgs::new(rng.gen_range(0.01..5.0), rng.gen_range(35.0..1e4), rng.gen_range(0.01..=1.0));
        let v = template_v(rng.gen_range(0.0..50.0), rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0), &args);
        assert!(v.is_finite());
    }
    // points within 1e-6 of each family of removable sets; alpha and beta
    // are placed directly through p1 - p2 and p1 + p2
    let k = 1.7;
    let m = 900.0;
    let c = k / (2.0 * m);
    let place = |alpha: f64, beta0: f64| {
        let args = TemplateArgs::new(1.3, m, 1.0);
        let diff = (args.omega - alpha) / c;
        let sum = (beta0 - k) / c;
        template_v(k, 0.5 * (sum + diff), 0.5 * (sum - diff), &args)
    };
    for _ in 0..100 {
        let d = rng.gen_range(-1e-6..1e-6);
        let x = rng.gen_range(-3.0..3.0);
        for (alpha, beta) in [
            (x, 1.0 - x + d),
            (x, -1.0 - x + d),
            (x, x - 1.0 + d),
            (x, x + 1.0 + d),
            (1.0 + d, x),
            (-1.0 + d, x),
            (d, x),
        ] {
            assert!(place(alpha, beta).is_finite(), "alpha = {alpha}, beta = {beta}");
        }
    }
}

#[test]
fn template_v_shell_limit() {
    let args = TemplateArgs::new(0.4, 900.0, 1.0);
    let k = 0.6; // a + r k = 1 at p = 0
    let centre = template_v(k, 0.0, 0.0, &args);
    for d in [1e-6, -1e-6] {
        assert!(crel(template_v(k + d, 0.0, 0.0, &args), centre) < 1e-4);
    }
    // alpha = 0 through the momentum difference
    let p_diff = 2.0 * 900.0 * 0.4 / k;
    assert!(template_v(k, p_diff, 0.0, &args).is_finite());
}

#[test]
fn d2_template_v_matches_finite_differences() {
    for (a, k, m, r) in [(1.0, 1.0, 900.0, 1.0), (0.3, 2.2, 500.0, 1.0), (2.5, 0.4, 400.0, 0.26), (0.1, 7.3, 2000.0, 1.0)] {
        let args = TemplateArgs::new(a, m, r);
        let (s1, s2) = d2_template_v(k, &args);
        let (f1, f2) = d2_template_v_fd(k, &args);
        assert!(s1.is_finite() && s2.is_finite());
        assert!(crel(f1, s1) < 1e-4, "{a} {k}: {f1} vs {s1}");
        assert!(crel(f2, s2) < 1e-4, "{a} {k}: {f2} vs {s2}");
    }
    let light = d2_template_v(1.0, &TemplateArgs::new(1.0, 900.0, 1.0)).0.norm();
    let heavy = d2_template_v(1.0, &TemplateArgs::new(1.0, 9000.0, 1.0)).0.norm();
    assert!(heavy < light / 50.0);
}

#[test]
fn taylor_leading_term_is_smeared_classical() {
    for (a, s, l) in [(0.1, 0.5, 0.5), (1.0, 1.0, 1.0), (2.0, 0.3, PACKET_WIDTH)] {
        let lead = entangling_taylor(a, s, &Packet::new(l, 900.0, 1.0), false, &spec()).unwrap().value.norm();
        let classical = entangling_smeared(a, s, Some(l), &spec()).unwrap().value.norm();
        assert!(rel(lead, classical) < 1e-6);
    }
}

#[test]
fn taylor_and_exact_excitation_agree() {
    let packet = Packet::new(PACKET_WIDTH, 900.0, 1.0);
    let taylor = excitation_taylor(1.0, &packet, &spec()).unwrap().value;
    let exact = excitation_exact(1.0, &packet, &spec()).unwrap().value;
    assert!(rel(exact, taylor) < 1e-3, "{exact} vs {taylor}");
}

#[test]
fn slower_medium_raises_excitation() {
    for i in 0..6 {
        let a = 0.1 + i as f64 * 0.98;
        let vacuum = excitation_taylor(a, &Packet::new(PACKET_WIDTH, 900.0, 1.0), &spec()).unwrap().value;
        let medium = excitation_taylor(a, &Packet::new(PACKET_WIDTH, 900.0, 0.26), &spec()).unwrap().value;
        assert!(medium > vacuum, "a = {a}");
    }
}

#[test]
fn heavier_packets_approach_pointlike_excitation() {
    let point = excitation_smeared(0.1, None, &spec()).unwrap().value;
    let ps: Vec<f64> =
        [1.0, 10.0, 100.0, 1000.0].iter().map(|&m| excitation_taylor(0.1, &Packet::new(1e3, m, 1.0), &spec()).unwrap().value).collect();
    assert!(ps.windows(2).all(|p| p[1] > p[0]), "{ps:?}");
    assert!(ps.iter().all(|&p| p < point));
    assert!(rel(ps[3], point) < rel(ps[0], point));
}

#[test]
fn entangling_term_suppressed_by_width_and_separation() {
    let m = |l: f64, s: f64| entangling_taylor(0.1, s, &Packet::new(l, 500.0 / l, 1.0), true, &spec()).unwrap().value.norm();
    assert!(m(1.0, 0.5) < m(0.5, 0.5));
    assert!(m(2.0, 0.5) < m(1.0, 0.5));
    let first = m(0.5, 0.05);
    for i in 1..10 {
        assert!(m(0.5, 0.05 + 0.5 * i as f64) <= first);
    }
}

#[test]
fn slow_medium_kills_negativity() {
    for i in 0..5 {
        let a = 0.1 + i as f64 * 1.2;
        let model = ModelVariant::Delocalized { width: PACKET_WIDTH, mass: 900.0, speed_ratio: 0.01, path: PathChoice::Taylor };
        let cfg = ScenarioConfig::new(a, 0.1, model);
        assert_eq!(negativity_delocalized(&cfg, PathChoice::Taylor, &spec()).unwrap(), 0.0, "a = {a}");
    }
}

#[test]
fn rejected_regime_is_an_error() {
    let model = ModelVariant::Delocalized { width: 1.0, mass: 10.0, speed_ratio: 1.0, path: PathChoice::Taylor };
    let cfg = ScenarioConfig::new(1.0, 1.0, model);
    assert!(matches!(excitation_delocalized(&cfg, PathChoice::Taylor, &spec()), Err(HarvestError::RegimeRejected(_))));
    assert!(matches!(entangling_delocalized(&cfg, PathChoice::Exact, &spec()), Err(HarvestError::RegimeRejected(_))));
}
