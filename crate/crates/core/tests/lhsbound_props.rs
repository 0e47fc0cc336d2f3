mod common;

use common::{arb_direction, arb_set};
use proptest::prelude::*;
use steering_core::{canonicalize, lhs_bound, lhs_bound_eig, MeasurementSet, Rotation3};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gauge_invariance(
        set in arb_set(1, 10),
        axis in arb_direction(),
        angle in -3.2..3.2f64,
        pattern in any::<u16>(),
    ) {
        let signs: Vec<i8> = (0..set.len()).map(|j| if pattern >> j & 1 == 1 { -1 } else { 1 }).collect();
        let moved = set.rotated(&Rotation3::about_axis(axis.vec(), angle)).signed(&signs).unwrap();
        let a = lhs_bound(&set).unwrap().value;
        let b = lhs_bound(&moved).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn oracle_equivalence(set in arb_set(1, 12)) {
        let a = lhs_bound(&set).unwrap().value;
        let b = lhs_bound_eig(&set).unwrap();
        prop_assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn bound_lies_between_averaging_limit_and_one(set in arb_set(1, 14)) {
        let c = lhs_bound(&set).unwrap().value;
        let n = set.len() as f64;
        prop_assert!(c >= 1.0 / n.sqrt() - 1e-12);
        prop_assert!(c <= 1.0 + 1e-12);
    }

    #[test]
    fn reported_maximizer_attains_bound(set in arb_set(1, 12)) {
        let r = lhs_bound(&set).unwrap();
        prop_assert_eq!(r.signs[0], 1);
        let signed = set.signed(&r.signs).unwrap();
        let m = signed.mean_vector();
        prop_assert!((m.norm() - r.value).abs() <= 1e-12);
        let res = m.to_array();
        for k in 0..3 {
            prop_assert!((res[k] - r.resultant[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn canonical_form(set in arb_set(2, 12)) {
        let before = lhs_bound(&set).unwrap().value;
        let c = canonicalize(&set).unwrap();
        let after = lhs_bound(&c).unwrap();
        prop_assert!((before - after.value).abs() <= 1e-12);
        prop_assert!(after.all_ones_maximizing());
        let m = c.mean_vector();
        prop_assert!(m.x.abs() <= 1e-12 && m.y.abs() <= 1e-12);
        prop_assert!((m.z - after.value).abs() <= 1e-12);
    }
}

#[test]
fn parallel_directions_reach_one() {
    let set = MeasurementSet::from_rows("par", &[[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [0.0, 0.0, 1.0]]).unwrap();
    assert!((lhs_bound(&set).unwrap().value - 1.0).abs() < 1e-15);
    let s = 0.5f64.sqrt();
    let set = MeasurementSet::from_rows("tilted", &[[s, 0.0, s], [0.0, 0.0, 1.0]]).unwrap();
    assert!(lhs_bound(&set).unwrap().value < 1.0 - 1e-3);
}
