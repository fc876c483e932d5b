use num_complex::Complex64;
use proptest::prelude::*;
use udw_harvest::entanglement::{negativity, SecondOrderState};
use udw_harvest::quadrature::QuadratureSpec;
use udw_harvest::scenario::*;
use udw_harvest::{evaluate, HarvestError};

fn delocalized(width: f64, mass: f64, speed_ratio: f64) -> ModelVariant {
    ModelVariant::Delocalized { width, mass, speed_ratio, path: PathChoice::Taylor }
}

#[test]
fn regime_examples() {
    let ok = regime_check(&delocalized(4.0 / 9.0, 900.0, 1.0));
    assert_eq!(ok.verdict, RegimeVerdict::Ok);
    assert!(!ok.near_sound_speed);

    let slow = regime_check(&delocalized(4.0 / 9.0, 900.0, 0.01));
    assert_eq!(slow.verdict, RegimeVerdict::Ok);
    let sonic = slow.supersonic_indicator.unwrap();
    assert!((sonic - 4.0).abs() < 1e-12);
    assert!(sonic >= SOUND_SPEED_MARK);
    assert!(slow.near_sound_speed);

    assert!(matches!(regime_check(&delocalized(1.0, 10.0, 1.0)).verdict, RegimeVerdict::Reject(_)));
    assert!(matches!(regime_check(&delocalized(1.0, 100.0, 1.0)).verdict, RegimeVerdict::Warn(_)));
    assert_eq!(regime_check(&ModelVariant::Pointlike).verdict, RegimeVerdict::Ok);
}

#[test]
fn parses_documented_format() {
    let text = "# detector pair\nomega = 0.1\nseparation=0.1\nmodel = delocalized\nwidth = 4/9\nmass = 900  # M c sigma\nspeed_ratio = 0.26\npath = exact\n";
    let cfg: ScenarioConfig = text.parse().unwrap();
    assert_eq!(cfg.omega, 0.1);
    assert_eq!(cfg.model, ModelVariant::Delocalized { width: 4.0 / 9.0, mass: 900.0, speed_ratio: 0.26, path: PathChoice::Exact });

    let cfg = ScenarioConfig::parse("omega=1\nseparation=2\nmodel=delocalized\nwidth=1\nmass=400\n").unwrap();
    assert_eq!(cfg.model, delocalized(1.0, 400.0, 1.0));
}

#[test]
fn rejects_bad_configs() {
    let unknown = ScenarioConfig::parse("omeg=1\nseparation=1\nmodel=pointlike\n").unwrap_err();
    assert_eq!(unknown, ConfigError::UnknownKey("omeg".into()));
    assert!(unknown.to_string().contains("omeg"));
    assert_eq!(ScenarioConfig::parse("separation=1\nmodel=pointlike\n").unwrap_err(), ConfigError::MissingKey("omega"));
    assert!(matches!(ScenarioConfig::parse("omega=1\nomega=2\n"), Err(ConfigError::DuplicateKey(_))));
    assert!(matches!(ScenarioConfig::parse("omega 1\n"), Err(ConfigError::Syntax { line: 1 })));
    assert!(matches!(
        ScenarioConfig::parse("omega=1\nseparation=1\nmodel=pointlike\nwidth=2\n"),
        Err(ConfigError::Inapplicable { .. })
    ));
    assert!(matches!(ScenarioConfig::parse("omega=x\nseparation=1\nmodel=pointlike\n"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(ScenarioConfig::parse("omega=-1\nseparation=1\nmodel=pointlike\n"), Err(ConfigError::OutOfRange(_))));
    assert!(matches!(
        ScenarioConfig::parse("omega=1\nseparation=1\nmodel=delocalized\nwidth=1\nmass=400\nspeed_ratio=1.5\n"),
        Err(ConfigError::OutOfRange(_))
    ));
}

#[test]
fn negativity_examples() {
    let s = SecondOrderState::new(1e-3, 1e-3, Complex64::new(0.0, 2e-3));
    assert_eq!(negativity(&s), 1e-3);
    assert_eq!(negativity(&SecondOrderState::new(0.3, 0.01, Complex64::new(0.0, 0.0))), 0.0);
    assert_eq!(negativity(&SecondOrderState::new(0.0, 0.0, Complex64::new(0.6, 0.8))), 1.0);
}

#[test]
fn evaluate_recomputes_negativity() {
    let spec = QuadratureSpec::default();
    for model in [ModelVariant::Pointlike, ModelVariant::Smeared { width: 1.0 }, delocalized(4.0 / 9.0, 900.0, 1.0)] {
        let r = evaluate(&ScenarioConfig::new(0.1, 0.1, model), &spec).unwrap();
        assert_eq!(r.p_a, r.p_b);
        assert_eq!(r.negativity, r.state().negativity());
        assert_eq!(r.negativity, (r.m.norm() - r.p_a).max(0.0));
        assert!(r.negativity > 0.0);
    }
    let rejected = evaluate(&ScenarioConfig::new(1.0, 1.0, delocalized(1.0, 10.0, 1.0)), &spec);
    assert!(matches!(rejected, Err(HarvestError::RegimeRejected(_))));
}

fn arb_model() -> impl Strategy<Value = ModelVariant> {
    let path = prop_oneof![Just(PathChoice::Exact), Just(PathChoice::Taylor)];
    prop_oneof![
        Just(ModelVariant::Pointlike),
        (1e-6f64..1e6).prop_map(|width| ModelVariant::Smeared { width }),
        (1e-6f64..1e6, 1e-6f64..1e9, 1e-6f64..=1.0, path)
            .prop_map(|(width, mass, speed_ratio, path)| ModelVariant::Delocalized { width, mass, speed_ratio, path }),
    ]
}

proptest! {
    #[test]
    fn config_round_trips(omega in 1e-9f64..1e9, separation in 0f64..1e9, model in arb_model()) {
        let cfg = ScenarioConfig::new(omega, separation, model);
        let back: ScenarioConfig = cfg.to_string().parse().unwrap();
        prop_assert_eq!(back, cfg);
    }
}

fn arb_state() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0f64..1.0, 0f64..1.0, 0f64..1.0, -std::f64::consts::PI..std::f64::consts::PI)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn negativity_properties((pa, pb, m, phase) in arb_state(), bump in 0f64..0.5, twist in -3.0f64..3.0) {
        let n = |pa: f64, pb: f64, m: Complex64| negativity(&SecondOrderState::new(pa, pb, m));
        let z = Complex64::from_polar(m, phase);
        let base = n(pa, pb, z);
        prop_assert!(base >= 0.0);
        prop_assert!(n(pa, pb, Complex64::from_polar(m + bump, phase)) >= base);
        prop_assert!(n(pa + bump, pb, z) <= base);
        prop_assert!(n(pa, pb + bump, z) <= base);
        prop_assert_eq!(n(pb, pa, z), base);
        prop_assert_eq!(n(pa, pb, Complex64::new(z.norm(), 0.0)), base);
        prop_assert!((n(pa, pb, Complex64::from_polar(m, twist)) - base).abs() <= 1e-15);
    }
}
