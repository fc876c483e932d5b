use std::f64::consts::PI;

use udw_harvest::classical::excitation_smeared;
use udw_harvest::delocalized::{excitation_taylor, Packet};
use udw_harvest::limits::*;
use udw_harvest::quadrature::QuadratureSpec;
use udw_harvest::scenario::PathChoice;
use udw_harvest::special::{bump, bump_second};
use udw_harvest::HarvestError;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

#[test]
fn gamma_limit_tends_to_pointlike() {
    let point = excitation_smeared(0.7, None, &spec()).unwrap().value;
    let far = gamma_limit_p(0.7, 1e6, &spec()).unwrap().value;
    assert!(rel(far, point) < 1e-6);
}

#[test]
fn gamma_limit_correction_is_perturbative() {
    let point = excitation_smeared(0.1, None, &spec()).unwrap().value;
    let corrected = gamma_limit_p(0.1, 500.0, &spec()).unwrap().value;
    let correction = corrected - point;
    assert!(correction.is_finite());
    assert!(correction.abs() < point);
}

#[test]
fn correction_bracket_is_finite_on_the_shell() {
    // the printed bracket over ((x^2 - 1)^4) against the profile curvature
    let bracket = |x: f64| {
        let d = x * x - 1.0;
        let (s, c) = (PI * x).sin_cos();
        ((20.0 * x * x + 4.0) + c * (20.0 * x * x + 4.0 - PI * PI * d * d) + 8.0 * x * PI * d * s) / d.powi(4)
    };
    for x in [0.3, 1.7, 2.9, 6.1] {
        assert!(rel(bump_second(x), bracket(x)) < 1e-9, "x = {x}");
    }
    let centre = bump_second(1.0);
    assert!(centre.is_finite());
    for d in [1e-6, -1e-6] {
        assert!(rel(bump_second(1.0 + d), centre) < 1e-4);
    }
    assert!(bump(1.0).is_finite());
}

#[test]
fn gamma_family_keeps_product_fixed() {
    let family = GammaFamily::new(1.0, 400.0, vec![0.4, 0.2, 0.1, 0.05]);
    for &g in &family.gammas {
        assert!(rel(family.width(g) * family.mass(g), 400.0) < 1e-15);
    }
}

#[test]
fn gamma_family_converges_to_corrected_limit() {
    let family = GammaFamily::new(1.0, 400.0, vec![0.4, 0.2, 0.1, 0.05]);
    let report = run_gamma_family(0.5, 1.0, &family, PathChoice::Taylor, &spec()).unwrap();
    assert_eq!(report.rows.len(), 4);
    assert_eq!(report.rates_p.len(), 3);
    assert!(report.monotone_p, "{report:?}");
    assert!(report.final_rel_err_p().unwrap() < 1e-2);
}

#[test]
fn limit_target_depends_on_product_only() {
    // the same lmc reached through different splits yields the same target
    let a = gamma_limit_p(1.3, 400.0, &spec()).unwrap().value;
    let b = gamma_limit_p(1.3, 2.0 * 200.0, &spec()).unwrap().value;
    assert_eq!(a, b);
    let report_a = run_gamma_family(1.3, 1.0, &GammaFamily::new(1.0, 400.0, vec![0.2]), PathChoice::Taylor, &spec()).unwrap();
    let report_b = run_gamma_family(1.3, 1.0, &GammaFamily::new(0.5, 400.0, vec![0.4]), PathChoice::Taylor, &spec()).unwrap();
    assert_eq!(report_a.reference.p, report_b.reference.p);
}

#[test]
fn single_member_family_has_no_rates() {
    let family = GammaFamily::new(1.0, 400.0, vec![0.2]);
    let report = run_gamma_family(1.0, 1.0, &family, PathChoice::Taylor, &spec()).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert!(report.rates_p.is_empty() && report.rates_m.is_empty());
}

#[test]
fn unsorted_family_is_rejected() {
    let family = GammaFamily::new(1.0, 400.0, vec![0.1, 0.2]);
    assert!(matches!(run_gamma_family(1.0, 1.0, &family, PathChoice::Taylor, &spec()), Err(HarvestError::InvalidConfig(_))));
}

#[test]
fn mass_limit_reaches_smeared_entangling_term() {
    let masses = [1e3, 1e4, 1e5, 1e6];
    let report = mass_limit_check(1.0, 1.0, 1.0, &masses, PathChoice::Taylor, &spec()).unwrap();
    assert!(report.monotone_p && report.monotone_m, "{report:?}");
    assert!(report.final_rel_err_p().unwrap() < 1e-3);
    assert!(report.final_rel_err_m().unwrap() < 1e-3);
    let point = report.pointlike_abs_m.unwrap();
    let last = report.rows.last().unwrap().abs_m;
    assert!(rel(last, point) > 1e-2);
}

#[test]
fn family_members_match_direct_evaluation() {
    let family = GammaFamily::new(1.0, 400.0, vec![0.2]);
    let report = run_gamma_family(0.5, 1.0, &family, PathChoice::Taylor, &spec()).unwrap();
    let direct = excitation_taylor(0.5, &Packet::new(0.2, 2000.0, 1.0), &spec()).unwrap().value;
    assert!(rel(report.rows[0].p, direct) < 1e-12);
}
