//! Quantum values of the steering functional and detection sweeps.
//!
//! For Alice directions a_j and Bob directions b_j the functional evaluates
//! to (1/N) Σ_j a_j·(T b_j) with T the Pauli correlation tensor of the
//! state. Maximizing over unit a_j gives (1/N) Σ_j |T b_j|.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SteeringError};
use crate::lhsbound::{lhs_bound, MeasurementSet};
use crate::qstate::{correlation_matrix, DensityMatrix, StateParams};
use crate::vector::UnitVector3;

/// Below this length T·b_j carries no usable direction.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationResult {
    pub quantum_value: f64,
    pub lhs_bound: f64,
    pub detected: bool,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alice_directions: Option<Vec<UnitVector3>>,
}

impl ViolationResult {
    fn new(quantum_value: f64, lhs_bound: f64, alice: Option<Vec<UnitVector3>>) -> Self {
        let margin = quantum_value - lhs_bound;
        ViolationResult {
            quantum_value,
            lhs_bound,
            detected: margin > 0.0,
            margin,
            alice_directions: alice,
        }
    }
}

/// (1/N) Σ_j a_j·(T b_j) for given Alice and Bob directions.
pub fn quantum_value(rho: &DensityMatrix, alice: &MeasurementSet, bob: &MeasurementSet) -> Result<f64> {
    if alice.len() != bob.len() {
        return Err(SteeringError::validation(format!(
            "Alice has {} settings, Bob has {}",
            alice.len(),
            bob.len()
        )));
    }
    let t = correlation_matrix(rho);
    let total: f64 = alice
        .directions()
        .iter()
        .zip(bob.directions())
        .map(|(a, b)| a.vec().dot(t.apply(b.vec())))
        .sum();
    Ok(total / bob.len() as f64)
}

/// Quantum value maximized over Alice's directions, with no bound attached
/// (`lhs_bound` is NaN and `detected` false).
pub fn max_quantum_value(rho: &DensityMatrix, bob: &MeasurementSet) -> ViolationResult {
    let t = correlation_matrix(rho);
    let mut total = 0.0;
    let mut alice = Vec::with_capacity(bob.len());
    for b in bob.directions() {
        let tb = t.apply(b.vec());
        let len = tb.norm();
        if len > DEGENERATE_TOLERANCE {
            total += len;
            alice.push(UnitVector3::normalize(tb).expect("nonzero vector"));
        } else {
            alice.push(*b);
        }
    }
    let q = total / bob.len() as f64;
    ViolationResult {
        quantum_value: q,
        lhs_bound: f64::NAN,
        detected: false,
        margin: f64::NAN,
        alice_directions: Some(alice),
    }
}

/// Optimal quantum value against the set's exact LHS bound; detection is strict.
pub fn detect(rho: &DensityMatrix, bob: &MeasurementSet) -> Result<ViolationResult> {
    let bound = lhs_bound(bob)?.value;
    Ok(detect_with_bound(rho, bob, bound))
}

/// As [`detect`], reusing a precomputed bound for `bob`.
pub fn detect_with_bound(rho: &DensityMatrix, bob: &MeasurementSet, bound: f64) -> ViolationResult {
    let q = max_quantum_value(rho, bob);
    ViolationResult::new(q.quantum_value, bound, q.alice_directions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    GeneralizedWerner,
    Mems,
    Avn,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "werner" | "w" => Some(Family::Werner),
            "generalized_werner" | "gw" => Some(Family::GeneralizedWerner),
            "mems" => Some(Family::Mems),
            "avn" => Some(Family::Avn),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::GeneralizedWerner => "generalized_werner",
            Family::Mems => "mems",
            Family::Avn => "avn",
        }
    }

    pub fn is_two_dimensional(self) -> bool {
        matches!(self, Family::GeneralizedWerner | Family::Avn)
    }

    /// State for grid coordinates (first axis, optional second axis).
    pub fn state(self, p1: f64, p2: Option<f64>) -> Result<DensityMatrix> {
        let need2 = || p2.ok_or_else(|| SteeringError::validation(format!("{} needs theta", self.name())));
        let params = match self {
            Family::Werner => StateParams::Werner { v: p1 },
            Family::Mems => StateParams::Mems { gamma: p1 },
            Family::GeneralizedWerner => StateParams::GeneralizedWerner { v: p1, theta: need2()? },
            Family::Avn => StateParams::Avn { v: p1, theta: need2()? },
        };
        params.build()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Axis {
            name: name.into(),
            values,
        }
    }

    /// `count` evenly spaced points from `lo` to `hi` inclusive.
    pub fn linspace(name: impl Into<String>, lo: f64, hi: f64, count: usize) -> Self {
        let values = match count {
            0 => vec![],
            1 => vec![lo],
            _ => (0..count)
                .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                .collect(),
        };
        Axis::new(name, values)
    }

    /// `count` evenly spaced interior points of the open interval (lo, hi).
    pub fn interior(name: impl Into<String>, lo: f64, hi: f64, count: usize) -> Self {
        let values = (1..=count)
            .map(|i| lo + (hi - lo) * i as f64 / (count + 1) as f64)
            .collect();
        Axis::new(name, values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub family: Family,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub set_label: String,
}

impl SweepGrid {
    /// The default grid for a family: V (or γ) on [0, 1]; θ on [0, π/2]
    /// for the generalized Werner family and on the open (0, π/2) for AVN.
    pub fn uniform(family: Family, points: usize, set_label: impl Into<String>) -> Self {
        let axis1 = match family {
            Family::Mems => Axis::linspace("gamma", 0.0, 1.0, points),
            _ => Axis::linspace("V", 0.0, 1.0, points),
        };
        let axis2 = match family {
            Family::GeneralizedWerner => Some(Axis::linspace("theta", 0.0, FRAC_PI_2, points)),
            Family::Avn => Some(Axis::interior("theta", 0.0, FRAC_PI_2, points)),
            _ => None,
        };
        SweepGrid {
            family,
            axis1,
            axis2,
            set_label: set_label.into(),
        }
    }

    /// Grid coordinates in row-major order (axis1 outer).
    pub fn points(&self) -> Vec<(f64, Option<f64>)> {
        let mut out = Vec::new();
        for &p1 in &self.axis1.values {
            match &self.axis2 {
                Some(a2) => out.extend(a2.values.iter().map(|&p2| (p1, Some(p2)))),
                None => out.push((p1, None)),
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.axis1.values.is_empty() {
            return Err(SteeringError::validation("sweep axis is empty"));
        }
        if self.family.is_two_dimensional() != self.axis2.is_some() {
            return Err(SteeringError::validation(format!(
                "family {} expects {} axes",
                self.family.name(),
                if self.family.is_two_dimensional() { 2 } else { 1 }
            )));
        }
        // building each state checks parameter ranges
        for (p1, p2) in self.points() {
            self.family.state(p1, p2)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param1: f64,
    pub param2: Option<f64>,
    pub result: ViolationResult,
}

/// Evaluates every grid point against `bob`; rows are in grid order.
pub fn sweep(grid: &SweepGrid, bob: &MeasurementSet) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    let bound = lhs_bound(bob)?.value;
    grid.points()
        .into_par_iter()
        .map(|(p1, p2)| {
            let rho = grid.family.state(p1, p2)?;
            let mut result = detect_with_bound(&rho, bob, bound);
            result.alice_directions = None;
            Ok(SweepRow {
                param1: p1,
                param2: p2,
                result,
            })
        })
        .collect()
}

/// Detection flags of a sweep, in row order.
pub fn detection_mask(rows: &[SweepRow]) -> Vec<bool> {
    rows.iter().map(|r| r.result.detected).collect()
}

/// True when every point detected in `inner` is also detected in `outer`.
pub fn mask_contained(inner: &[bool], outer: &[bool]) -> bool {
    inner.len() == outer.len() && inner.iter().zip(outer).all(|(&a, &b)| !a || b)
}

/// Location of the first detection along a one-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    /// First grid value at which the set detects steering.
    pub first_detected: f64,
    /// Bisected parameter where the margin changes sign.
    pub refined: f64,
}

/// Finds the first detected grid point along `axis` (for a fixed second
/// parameter, if any) and bisects between it and its predecessor down to
/// `tolerance`. Returns `None` when nothing on the axis is detected.
pub fn critical_parameter(
    family: Family,
    axis: &Axis,
    fixed: Option<f64>,
    bob: &MeasurementSet,
    tolerance: f64,
) -> Result<Option<CriticalPoint>> {
    let bound = lhs_bound(bob)?.value;
    let detected_at = |p: f64| -> Result<bool> {
        let rho = family.state(p, fixed)?;
        Ok(detect_with_bound(&rho, bob, bound).detected)
    };
    let mut prev: Option<f64> = None;
    for &p in &axis.values {
        if detected_at(p)? {
            let refined = match prev {
                None => p,
                Some(lo) => {
                    let (mut lo, mut hi) = (lo, p);
                    while hi - lo > tolerance {
                        let mid = 0.5 * (lo + hi);
                        if detected_at(mid)? {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    hi
                }
            };
            return Ok(Some(CriticalPoint {
                first_detected: p,
                refined,
            }));
        }
        prev = Some(p);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::make_werner;

    fn z_set() -> MeasurementSet {
        MeasurementSet::from_rows("z", &[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]).unwrap()
    }

    #[test]
    fn werner_value_with_antiparallel_alice() {
        let bob = z_set();
        let alice = bob.signed(&[-1, -1]).unwrap();
        let q = quantum_value(&make_werner(0.37).unwrap(), &alice, &bob).unwrap();
        assert!((q - 0.37).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let bob = z_set();
        let alice = MeasurementSet::from_rows("a", &[[0.0, 0.0, 1.0]]).unwrap();
        assert!(quantum_value(&make_werner(0.5).unwrap(), &alice, &bob).is_err());
    }

    #[test]
    fn noise_falls_back_to_bob_directions() {
        let bob = z_set();
        let r = max_quantum_value(&make_werner(0.0).unwrap(), &bob);
        assert_eq!(r.quantum_value, 0.0);
        assert_eq!(r.alice_directions.unwrap(), bob.directions().to_vec());
    }

    #[test]
    fn strict_detection() {
        let bob = z_set();
        let bound = lhs_bound(&bob).unwrap().value;
        let r = detect_with_bound(&make_werner(bound).unwrap(), &bob, bound);
        assert!(!r.detected);
        assert!(r.margin <= 0.0);
    }

    #[test]
    fn family_names() {
        assert_eq!(Family::parse("GW"), Some(Family::GeneralizedWerner));
        assert_eq!(Family::parse("generalized-werner"), Some(Family::GeneralizedWerner));
        assert_eq!(Family::parse("avn"), Some(Family::Avn));
        assert_eq!(Family::parse("bell"), None);
    }

    #[test]
    fn grid_shapes() {
        let g = SweepGrid::uniform(Family::Avn, 5, "x");
        assert_eq!(g.points().len(), 25);
        let th = &g.axis2.as_ref().unwrap().values;
        assert!(th[0] > 0.0 && th[4] < FRAC_PI_2);
        g.validate().unwrap();
        let mut bad = SweepGrid::uniform(Family::Werner, 3, "x");
        bad.axis1.values.push(1.5);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn containment() {
        assert!(mask_contained(&[false, true], &[true, true]));
        assert!(!mask_contained(&[true, false], &[false, true]));
        assert!(!mask_contained(&[true], &[true, true]));
    }
}
