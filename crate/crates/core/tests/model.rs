mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use tsp::model::{flip_params, vg_from_common};
use tsp::{BgParams, CharFn, OneSidedParams, TsParams};

#[test]
fn char_fn_fixtures() {
    let z = printed().char_fn().eval(Complex64::new(1.3, 0.0), 0.7).unwrap();
    assert!((z - Complex64::new(PHI_TS_RE, PHI_TS_IM)).norm() < 1e-14);

    let bg = BgParams::new(1.4, 0.44, 0.4, 0.35).unwrap();
    let z = bg.char_fn().eval(Complex64::new(0.9, 0.0), 1.2).unwrap();
    assert!((z - Complex64::new(PHI_BG_RE, PHI_BG_IM)).norm() < 1e-14);

    let plus = OneSidedParams::new(1.4, 0.6, 3.0).unwrap();
    let z = plus.char_fn().eval(Complex64::new(2.0, 0.0), 1.0).unwrap();
    assert!((z - Complex64::new(PHI_PLUS_RE, PHI_PLUS_IM)).norm() < 1e-14);
    assert!((plus.compensator().unwrap() - ZETA_PLUS).abs() < 1e-14);
}

#[test]
fn one_sided_strip_is_below_minus_lambda() {
    let cf = OneSidedParams::new(1.4, 0.6, 3.0).unwrap().char_fn();
    assert!(cf.eval(Complex64::new(0.0, -2.9), 1.0).is_ok());
    assert!(cf.eval(Complex64::new(0.0, -3.1), 1.0).is_err());
    assert!(cf.eval(Complex64::new(0.0, 50.0), 1.0).is_ok());
}

#[test]
fn vg_fixture() {
    let p = vg_from_common(0.2, -0.1, 0.5).unwrap();
    assert!(rel_err(p.lambda_plus(), VG_LAMBDA_PLUS) < 1e-14);
    assert!(rel_err(p.lambda_minus(), VG_LAMBDA_MINUS) < 1e-14);
    let a = p.alpha_plus();
    assert!((2.0 * a / (p.lambda_plus() * p.lambda_minus()) - 0.04).abs() < 1e-12);
    assert!((a / p.lambda_plus() - a / p.lambda_minus() + 0.1).abs() < 1e-12);
}

#[test]
fn printed_parameters_have_no_real_compensator() {
    assert!(matches!(printed().compensator(), Err(tsp::Error::MartingaleViolation(_))));
    assert!(printed().char_fn().eval(Complex64::new(0.5, 0.0), 1.0).is_ok());
}

fn ts_strategy() -> impl Strategy<Value = TsParams> {
    (0.1..3.0f64, 0.05..0.95f64, 1.05..8.0f64, 0.1..3.0f64, 0.05..0.95f64, 0.2..8.0f64)
        .prop_map(|(ap, bp, lp, am, bm, lm)| TsParams::new(ap, bp, lp, am, bm, lm).unwrap())
}

fn models() -> impl Strategy<Value = CharFn> {
    prop_oneof![
        ts_strategy().prop_map(|p| p.char_fn()),
        (0.1..3.0f64, 0.05..0.95f64, 1.05..8.0f64)
            .prop_map(|(a, b, l)| OneSidedParams::new(a, b, l).unwrap().char_fn()),
        (0.1..3.0f64, 1.05..8.0f64, 0.1..3.0f64, 0.2..8.0f64)
            .prop_map(|(ap, lp, am, lm)| BgParams::new(ap, lp, am, lm).unwrap().char_fn()),
    ]
}

proptest! {
    #[test]
    fn compensator_round_trip(cf in models()) {
        let z = cf.compensator().unwrap();
        let phi = cf.eval(Complex64::new(0.0, -1.0), 1.0).unwrap();
        prop_assert!(((-z).exp() - phi).norm() <= 1e-14 * phi.norm());
        prop_assert!(phi.im.abs() <= 1e-14 * phi.re);
    }

    #[test]
    fn char_fn_is_bounded_and_hermitian(cf in models(), u in -50.0..50.0f64, t in prop::sample::select(vec![0.1, 1.0, 5.0])) {
        let p = cf.eval(Complex64::new(u, 0.0), t).unwrap();
        let m = cf.eval(Complex64::new(-u, 0.0), t).unwrap();
        prop_assert!(p.norm() <= 1.0 + 1e-15);
        prop_assert!((p - m.conj()).norm() <= 1e-14);
        prop_assert!((cf.eval(Complex64::new(0.0, 0.0), t).unwrap() - 1.0).norm() == 0.0);
    }

    #[test]
    fn flip_is_an_involution(p in ts_strategy()) {
        prop_assert_eq!(flip_params(&flip_params(&p)), p);
        let f = p.flip();
        prop_assert_eq!(f.alpha_plus(), p.alpha_minus());
        prop_assert_eq!(f.beta_plus(), p.beta_minus());
        prop_assert_eq!(f.lambda_plus(), p.lambda_minus());
    }

    #[test]
    fn kobol_path_is_bitwise_ts(ap in 0.1..3.0f64, lp in 1.05..8.0f64, am in 0.1..3.0f64, lm in 0.2..8.0f64, b in 0.05..0.95f64, u in -20.0..20.0f64) {
        let k = TsParams::kobol(ap, lp, am, lm, b).unwrap();
        let t = TsParams::new(ap, b, lp, am, b, lm).unwrap();
        let z = Complex64::new(u, 0.0);
        prop_assert_eq!(k.char_fn().eval(z, 1.0).unwrap(), t.char_fn().eval(z, 1.0).unwrap());
    }

    #[test]
    fn vg_round_trip(a in 0.2..5.0f64, lp in 0.5..20.0f64, lm in 0.5..20.0f64) {
        let p = BgParams::new(a, lp, a, lm).unwrap();
        let (s, th, nu) = p.to_vg().unwrap();
        let q = vg_from_common(s, th, nu).unwrap();
        prop_assert!(rel_err(q.lambda_plus(), lp) < 1e-13);
        prop_assert!(rel_err(q.lambda_minus(), lm) < 1e-13);
        prop_assert!(rel_err(q.alpha_plus(), a) < 1e-14);
    }
}
