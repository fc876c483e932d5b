use harvest_cli::grid::{linspace, logspace, Axis};
use harvest_cli::output::fmt_num;
use proptest::prelude::*;

#[test]
fn number_examples() {
    assert_eq!(fmt_num(0.0), "0");
    assert_eq!(fmt_num(0.1), "0.1");
    assert_eq!(fmt_num(1.0), "1");
    assert_eq!(fmt_num(-2.5), "-2.5");
    assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
    assert_eq!(fmt_num(123456.789), "123456.789");
    assert_eq!(fmt_num(1e-7), "1e-7");
    assert_eq!(fmt_num(4.35572983679e-13), "4.35572983679e-13");
    assert_eq!(fmt_num(1e15), "1e15");
    assert_eq!(fmt_num(f64::NAN), "nan");
}

proptest! {
    #[test]
    fn twelve_digits_round_trip(x in -1e30f64..1e30) {
        let s = fmt_num(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs(), "{} -> {}", x, s);
        prop_assert!(!s.contains(',') && !s.contains(' '));
    }
}

#[test]
fn axis_forms() {
    assert_eq!(Axis::parse("omega=0.1,0.5,1").unwrap().values, vec![0.1, 0.5, 1.0]);
    let lin = Axis::parse("separation=0.05:5:50").unwrap();
    assert_eq!(lin.values.len(), 50);
    assert_eq!(lin.values[0], 0.05);
    assert!((lin.values[49] - 5.0).abs() < 1e-15);
    let log = Axis::parse("mass=log:1e3:1e6:4").unwrap();
    for (got, want) in log.values.iter().zip([1e3, 1e4, 1e5, 1e6]) {
        assert!((got / want - 1.0).abs() < 1e-12);
    }
    assert!((Axis::parse("width=4/9").unwrap().values[0] - 4.0 / 9.0).abs() < 1e-16);
    for bad in ["omega", "model=1", "omega=a:b:3", "omega=1:2:0", "mass=log:0:1:3", "omega=1:2"] {
        assert!(Axis::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn spacing_helpers() {
    assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
    assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    assert!((logspace(1.0, 100.0, 3)[1] - 10.0).abs() < 1e-12);
}
