use lpsi_core::bounds::{fourier_upper, theorem1_bracket, theorem2_bracket, theorem4_bracket, xi, BoundSettings};
use lpsi_core::{Error, PsiFamily};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn theorem1_orders_for_power_families(r in 1.2f64..3.0, s in 1.5f64..4.0, beta in -2.0f64..2.0, n in 1u64..40) {
        let f = PsiFamily::power(r).unwrap();
        let b = theorem1_bracket(&f, s, beta, n, &BoundSettings::default()).unwrap();
        prop_assert!(b.holds(), "{:?}", b.checks.iter().find(|c| !c.pass));
        prop_assert!(b.lower > 0.0 && b.lower < b.upper);
    }

    #[test]
    fn theorem2_orders_when_cosine_part_survives(r in 1.2f64..3.0, beta in -0.9f64..0.9, n in 1u64..64) {
        let f = PsiFamily::power(r).unwrap();
        let b = theorem2_bracket(&f, beta, n, &BoundSettings::default()).unwrap();
        prop_assert!(b.holds(), "{:?}", b.checks.iter().find(|c| !c.pass));
    }

    #[test]
    fn theorem4_orders_for_odd_beta(r in 1.3f64..1.95, odd in -2i32..2, n in 1u64..48) {
        let f = PsiFamily::power(r).unwrap();
        let b = theorem4_bracket(&f, (2 * odd + 1) as f64, n, &BoundSettings::default()).unwrap();
        prop_assert!(b.holds(), "{:?}", b.checks.iter().find(|c| !c.pass));
    }

    #[test]
    fn theorem4_rejects_slow_alpha(r in 2.0f64..4.0, n in 1u64..8) {
        // α(ψt) = 1/(r-1) must exceed 1
        let f = PsiFamily::power(r).unwrap();
        prop_assert!(matches!(theorem4_bracket(&f, 1.0, n, &BoundSettings::default()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn fourier_upper_decreases_in_n(r in 1.2f64..3.0, beta in -1.0f64..1.0, n in 1u64..30) {
        let f = PsiFamily::power(r).unwrap();
        let cfg = BoundSettings::default();
        let a = fourier_upper(&f, 2.0, beta, n, &cfg).unwrap();
        let b = fourier_upper(&f, 2.0, beta, n + 1, &cfg).unwrap();
        prop_assert!(b.lo() <= a.hi());
    }

    #[test]
    fn xi_dominates_its_right_branch(s in 1.01f64..50.0) {
        let x = xi(s).unwrap();
        prop_assert!(x >= 14.0 * (8.0 * std::f64::consts::PI).powf(1.0 / s) * s);
        prop_assert!(x >= 4.0 * (std::f64::consts::PI / (s - 1.0)).powf(1.0 / s));
    }
}
