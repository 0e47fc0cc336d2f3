#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use steering_core::{MeasurementSet, UnitVector3};

/// Uniform direction from (z, azimuth).
pub fn direction(z: f64, phi: f64) -> UnitVector3 {
    let rho = (1.0 - z * z).max(0.0).sqrt();
    UnitVector3::new(rho * phi.cos(), rho * phi.sin(), z).unwrap()
}

pub fn arb_direction() -> impl Strategy<Value = UnitVector3> {
    (-1.0..=1.0f64, 0.0..2.0 * PI).prop_map(|(z, phi)| direction(z, phi))
}

pub fn arb_set(min: usize, max: usize) -> impl Strategy<Value = MeasurementSet> {
    prop::collection::vec(arb_direction(), min..=max).prop_map(|d| MeasurementSet::new("arb", d).unwrap())
}
