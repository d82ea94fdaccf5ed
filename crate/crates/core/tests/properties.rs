use proptest::prelude::*;
use subord::composite::{product_inv_pdf, quotient_inv_pdf, PairParams};
use subord::invgauss::{
    ig_first_exit_closed_form, ig_first_exit_pdf, ig_pdf, ig_pdf_series, IGParams,
};
use subord::oracle::ks_two_sample;
use subord::oracle::sampler::{sample_inverse, sample_stable, sample_tempered};
use subord::specfun::{gamma, mittag_leffler, MittagLefflerParams};
use subord::stable::{
    inv_stable_pdf, inv_stable_power_pdf, stable_pdf, stable_power_pdf, StableParams,
};
use subord::tempered::{inv_tempered_pdf, tempered_pdf, TemperedParams};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(x in 0.05f64..40.0) {
        let a = gamma(x + 1.0).unwrap();
        let b = x * gamma(x).unwrap();
        prop_assert!(close(a, b, 1e-13));
    }

    #[test]
    fn stable_self_similarity(alpha in 0.2f64..0.95, t in 0.2f64..5.0, x in 0.05f64..20.0) {
        let f = stable_pdf(StableParams::new(alpha, t).unwrap(), x).unwrap().value;
        let s = t.powf(1.0 / alpha);
        let g = stable_pdf(StableParams::new(alpha, 1.0).unwrap(), x / s).unwrap().value / s;
        prop_assert!(f >= 0.0);
        prop_assert!(close(f, g, 1e-9), "{} {}", f, g);
    }

    #[test]
    fn inverse_self_similarity(alpha in 0.2f64..0.95, t in 0.2f64..5.0, x in 0.01f64..3.0) {
        let h = inv_stable_pdf(StableParams::new(alpha, t).unwrap(), x).unwrap().value;
        let s = t.powf(alpha);
        let g = inv_stable_pdf(StableParams::new(alpha, 1.0).unwrap(), x / s).unwrap().value / s;
        prop_assert!(close(h, g, 1e-9), "{} {}", h, g);
    }

    #[test]
    fn first_power_is_the_base_density(alpha in 0.2f64..0.95, x in 0.05f64..10.0) {
        let p = StableParams::new(alpha, 1.3).unwrap();
        prop_assert_eq!(stable_power_pdf(p, 1, x).unwrap().value, stable_pdf(p, x).unwrap().value);
        prop_assert_eq!(inv_stable_power_pdf(p, 1, x).unwrap().value, inv_stable_pdf(p, x).unwrap().value);
    }

    #[test]
    fn untempered_equals_stable(alpha in 0.2f64..0.95, x in 0.05f64..10.0) {
        let p = TemperedParams::new(alpha, 0.0, 1.0).unwrap();
        prop_assert_eq!(tempered_pdf(p, x).unwrap().value, stable_pdf(p.stable(), x).unwrap().value);
        prop_assert_eq!(inv_tempered_pdf(p, x).unwrap().value, inv_stable_pdf(p.stable(), x).unwrap().value);
    }

    #[test]
    fn product_is_symmetric(a1 in 0.2f64..0.9, a2 in 0.2f64..0.9, x in 0.05f64..5.0) {
        let v = product_inv_pdf(PairParams::new(a1, a2, 1.0).unwrap(), x).unwrap().value;
        let w = product_inv_pdf(PairParams::new(a2, a1, 1.0).unwrap(), x).unwrap().value;
        prop_assert_eq!(v, w);
    }

    #[test]
    fn quotient_reflection(a1 in 0.25f64..0.9, a2 in 0.25f64..0.9, x in 0.1f64..10.0) {
        let q12 = quotient_inv_pdf(PairParams::new(a1, a2, 1.0).unwrap(), x).unwrap().value;
        let q21 = quotient_inv_pdf(PairParams::new(a2, a1, 1.0).unwrap(), 1.0 / x).unwrap().value;
        prop_assert!(close(q12, q21 / (x * x), 1e-8), "{} {}", q12, q21 / (x * x));
    }

    #[test]
    fn exponential_mittag_leffler(z in 0.0f64..20.0) {
        let v = mittag_leffler(MittagLefflerParams::new(1.0, 1.0, 1.0).unwrap(), z).unwrap().value;
        prop_assert!(close(v, z.exp(), 1e-13));
    }

    #[test]
    fn ig_series_matches_closed_form(delta in 0.3f64..2.0, gamma in 0.0f64..2.0, x in 0.2f64..10.0) {
        let p = IGParams::new(delta, gamma, 1.0).unwrap();
        let a = ig_pdf_series(p, x).unwrap().value;
        let b = ig_pdf(p, x).unwrap().value;
        prop_assert!(close(a, b, 1e-10), "{} {}", a, b);
    }

    #[test]
    fn first_exit_series_matches_closed_form(delta in 0.3f64..2.0, gamma in 0.0f64..1.5, x in 0.05f64..3.0) {
        let p = IGParams::new(delta, gamma, 1.0).unwrap();
        let a = ig_first_exit_pdf(p, x).unwrap().value;
        let b = ig_first_exit_closed_form(p, x).unwrap();
        prop_assert!(close(a, b, 1e-8), "{} {}", a, b);
    }

    #[test]
    fn ks_two_sample_is_symmetric(a in prop::collection::vec(0.0f64..1.0, 1..50), b in prop::collection::vec(0.0f64..1.0, 1..50)) {
        let (mut a1, mut b1) = (a.clone(), b.clone());
        let (mut a2, mut b2) = (a, b);
        let d1 = ks_two_sample(&mut a1, &mut b1);
        let d2 = ks_two_sample(&mut b2, &mut a2);
        prop_assert_eq!(d1, d2);
        prop_assert!((0.0..=1.0).contains(&d1));
    }
}

#[test]
fn batches_do_not_depend_on_worker_count() {
    // spans three blocks
    let n = 150_000;
    let p = StableParams::new(0.6, 1.0).unwrap();
    let a = sample_stable(p, n, 11, 1).unwrap();
    let b = sample_stable(p, n, 11, 3).unwrap();
    assert_eq!(a.values, b.values);
    let t = TemperedParams::new(0.6, 3.0, 2.0).unwrap();
    let a = sample_tempered(t, n, 12, 1).unwrap();
    let b = sample_tempered(t, n, 12, 4).unwrap();
    assert_eq!(a.values, b.values);
    assert_eq!(a.acceptance_rate, b.acceptance_rate);
}

#[test]
fn inverse_sampler_self_similarity() {
    let n = 200_000;
    let a = sample_inverse(StableParams::new(0.7, 2.0).unwrap(), n, 5, 2).unwrap();
    let b = sample_inverse(StableParams::new(0.7, 1.0).unwrap(), n, 6, 2).unwrap();
    let mut x = a.values;
    let mut y: Vec<f64> = b.values.iter().map(|v| v * 2f64.powf(0.7)).collect();
    let d = ks_two_sample(&mut x, &mut y);
    // 1% two-sample critical value
    assert!(d < 1.63 * (2.0 / n as f64).sqrt(), "{d}");
}
