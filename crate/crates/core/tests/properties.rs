mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn aim_recurrence(seed in any::<u64>()) {
        prop_assert_eq!(common::aim_recurrence(seed), Ok(()));
    }

    #[test]
    fn ratio_at_termination(seed in any::<u64>()) {
        prop_assert_eq!(common::ratio_at_termination(seed), Ok(()));
    }

    #[test]
    fn normalize_homomorphism(seed in any::<u64>()) {
        prop_assert_eq!(common::normalize_homomorphism(seed), Ok(()));
    }

    #[test]
    fn product_rule(seed in any::<u64>()) {
        prop_assert_eq!(common::product_rule(seed), Ok(()));
    }

    #[test]
    fn pochhammer_recurrence(seed in any::<u64>()) {
        prop_assert_eq!(common::pochhammer_recurrence(seed), Ok(()));
    }

    #[test]
    fn truncation_matches_evaluation(seed in any::<u64>()) {
        prop_assert_eq!(common::truncation_matches_evaluation(seed), Ok(()));
    }

    #[test]
    fn rk_order(seed in any::<u64>()) {
        prop_assert_eq!(common::rk_order(seed), Ok(()));
    }
}
