use std::f64::consts::SQRT_2;

use proptest::prelude::*;
use steering_core::hemisphere::{
    all_ones_bound, analytic_bound, band_residual, build_hemisphere_set, convergence_table, exact_bound_small,
    intermediate_closed_form, HemisphereConfig,
};

#[test]
fn analytic_bound_exceeds_half_with_inverse_rate() {
    for n in 2..=2000 {
        let b = analytic_bound(n).unwrap();
        assert!(b > 0.5);
        // the n = 2 value sets the constant
        assert!(n as f64 * (b - 0.5) <= SQRT_2 - 1.0 + 1e-12, "n={n}");
    }
    assert!((analytic_bound(2).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn intermediate_form_differs_by_half_angle_factor() {
    for n in [2usize, 3, 7, 50, 1000] {
        let alpha = std::f64::consts::FRAC_PI_2 / n as f64;
        let ratio = intermediate_closed_form(n) / analytic_bound(n).unwrap();
        assert!((ratio - (alpha / 2.0).cos().powi(2)).abs() < 1e-12);
    }
}

#[test]
fn rounded_sets_converge() {
    let rows = convergence_table((20..=200).step_by(10), |n| 20.0 * n as f64).unwrap();
    for r in &rows {
        assert!((r.all_ones - 0.5).abs() <= 0.02, "{r:?}");
    }
}

#[test]
fn dense_bands_make_all_ones_maximal() {
    // every band holding at least two points keeps the all-ones assignment
    // maximal on this grid; sparse bands can break it
    let mut checked = 0;
    for n in 2..=20 {
        for step in 1..=40 {
            let config = HemisphereConfig::new(n, step as f64 * 0.5);
            let counts = config.points_per_band();
            if counts.iter().any(|&p| p < 2) || config.total_points() > 20 {
                continue;
            }
            let hs = build_hemisphere_set(&config).unwrap();
            let exact = exact_bound_small(&hs).unwrap();
            assert!(exact.all_ones_maximizing, "n={n} counts={counts:?}");
            assert!((exact.bound.value - exact.all_ones).abs() < 1e-12);
            checked += 1;
        }
    }
    assert!(checked > 5);
}

#[test]
fn exact_capacity() {
    let hs = build_hemisphere_set(&HemisphereConfig::new(10, 10.0)).unwrap();
    assert!(hs.len() > 20);
    assert!(exact_bound_small(&hs).unwrap_err().is_capacity());
}

proptest! {
    #[test]
    fn azimuth_offset_is_irrelevant(n in 2usize..40, density in 1.0..60.0f64, offset in 0.0..6.3f64) {
        let base = build_hemisphere_set(&HemisphereConfig::new(n, density)).unwrap();
        let shifted = build_hemisphere_set(&HemisphereConfig { azimuth_offset: offset, ..HemisphereConfig::new(n, density) }).unwrap();
        prop_assert!((all_ones_bound(&base) - all_ones_bound(&shifted)).abs() <= 1e-10);
        prop_assert!(band_residual(&shifted) <= 1e-10);
        prop_assert!(shifted.set.directions().iter().all(|d| d.z() >= 0.0));
    }
}
