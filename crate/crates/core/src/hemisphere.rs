//! Circle-stratified measurement sets on the northern hemisphere.
//!
//! The quarter arc from +z to the equator is split into `n` equal angles
//! α = π/(2n). Circle k (k = 1..n-1) sits at polar angle kα and carries
//! p_k = max(1, round(P·sin kα)) evenly spaced points, so the point density
//! is uniform over the hemisphere as P grows. With all signs +1 the bound is
//! Σ_k p_k cos(kα) / Σ_k p_k, which tends to 1/2.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SteeringError};
use crate::lhsbound::{lhs_bound, BoundResult, MeasurementSet};
use crate::vector::{UnitVector3, Vec3};

/// Largest set handed to exhaustive enumeration by [`exact_bound_small`].
pub const MAX_EXACT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HemisphereConfig {
    pub n_bands: usize,
    pub density: f64,
    #[serde(default)]
    pub azimuth_offset: f64,
}

impl HemisphereConfig {
    pub fn new(n_bands: usize, density: f64) -> Self {
        HemisphereConfig {
            n_bands,
            density,
            azimuth_offset: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_bands < 2 {
            return Err(SteeringError::validation(format!(
                "n_bands = {} must be at least 2",
                self.n_bands
            )));
        }
        if !(self.density.is_finite() && self.density > 0.0) {
            return Err(SteeringError::Range {
                name: "density",
                value: self.density,
                range: "(0, inf)",
            });
        }
        if !self.azimuth_offset.is_finite() {
            return Err(SteeringError::validation("azimuth_offset is not finite"));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        FRAC_PI_2 / self.n_bands as f64
    }

    /// Points on each circle, k = 1..n-1.
    pub fn points_per_band(&self) -> Vec<usize> {
        let alpha = self.alpha();
        (1..self.n_bands)
            .map(|k| round_count(self.density * (k as f64 * alpha).sin()).max(1))
            .collect()
    }

    pub fn total_points(&self) -> usize {
        self.points_per_band().iter().sum()
    }
}

/// Rounds half away from zero, treating values within 1e-9 of a
/// half-integer as exact halves (3·sin(π/6) evaluates to 1.4999999999999998).
fn round_count(x: f64) -> usize {
    (x + 1e-9).round() as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct HemisphereSet {
    pub config: HemisphereConfig,
    pub set: MeasurementSet,
    pub points_per_band: Vec<usize>,
    /// Polar angle kα of each circle.
    pub band_angles: Vec<f64>,
}

impl HemisphereSet {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Directions grouped by circle.
    pub fn bands(&self) -> impl Iterator<Item = &[UnitVector3]> {
        let dirs = self.set.directions();
        let mut start = 0;
        self.points_per_band.iter().map(move |&p| {
            let band = &dirs[start..start + p];
            start += p;
            band
        })
    }
}

pub fn build_hemisphere_set(config: &HemisphereConfig) -> Result<HemisphereSet> {
    config.validate()?;
    let alpha = config.alpha();
    let points_per_band = config.points_per_band();
    let band_angles: Vec<f64> = (1..config.n_bands).map(|k| k as f64 * alpha).collect();
    let mut dirs = Vec::with_capacity(points_per_band.iter().sum());
    for (&p, &theta) in points_per_band.iter().zip(&band_angles) {
        for j in 0..p {
            let phi = config.azimuth_offset + 2.0 * PI * j as f64 / p as f64;
            dirs.push(UnitVector3::from_angles(theta, phi));
        }
    }
    let label = format!(
        "hemisphere n={} P={} offset={}",
        config.n_bands, config.density, config.azimuth_offset
    );
    Ok(HemisphereSet {
        config: *config,
        set: MeasurementSet::new(label, dirs)?,
        points_per_band,
        band_angles,
    })
}

fn band_sum(band: &[UnitVector3]) -> Vec3 {
    band.iter().fold(Vec3::ZERO, |acc, d| acc + d.vec())
}

/// |Σ of all directions| / N, i.e. the bound under the all-ones assignment.
pub fn all_ones_bound(hs: &HemisphereSet) -> f64 {
    let total = hs.bands().fold(Vec3::ZERO, |acc, b| acc + band_sum(b));
    total.norm() / hs.len() as f64
}

/// Largest in-plane length of a circle's vector sum over circles with at
/// least two points; zero when every such circle sums along z.
pub fn band_residual(hs: &HemisphereSet) -> f64 {
    hs.bands()
        .filter(|b| b.len() >= 2)
        .map(|b| {
            let s = band_sum(b);
            (s.x * s.x + s.y * s.y).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Continuum ratio Σ sin(kα)cos(kα) / Σ sin(kα), k = 1..n-1, by direct summation.
pub fn analytic_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(SteeringError::validation(format!("n = {n} must be at least 2")));
    }
    let alpha = FRAC_PI_2 / n as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for k in 1..n {
        let (s, c) = (k as f64 * alpha).sin_cos();
        num += s * c;
        den += s;
    }
    Ok(num / den)
}

/// The intermediate closed form cos(α/2)·cos((n-1)α/2)/√2. It differs from
/// [`analytic_bound`] at finite n and is kept only for tabulation.
pub fn intermediate_closed_form(n: usize) -> f64 {
    let alpha = FRAC_PI_2 / n as f64;
    (alpha / 2.0).cos() * ((n as f64 - 1.0) * alpha / 2.0).cos() / 2f64.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactHemisphereBound {
    pub bound: BoundResult,
    pub all_ones: f64,
    /// The all-ones assignment attains the maximum (up to rounding ties).
    pub all_ones_maximizing: bool,
}

/// Full sign enumeration of a small hemisphere set.
pub fn exact_bound_small(hs: &HemisphereSet) -> Result<ExactHemisphereBound> {
    if hs.len() > MAX_EXACT {
        return Err(SteeringError::Capacity {
            what: "exact_bound_small",
            n: hs.len(),
            limit: MAX_EXACT,
        });
    }
    let bound = lhs_bound(&hs.set)?;
    Ok(ExactHemisphereBound {
        all_ones_maximizing: bound.all_ones_maximizing(),
        all_ones: all_ones_bound(hs),
        bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub total: usize,
    pub all_ones: f64,
    pub analytic: f64,
}

/// One row per band count in `ns`, with density `density(n)`.
pub fn convergence_table(
    ns: impl IntoIterator<Item = usize>,
    density: impl Fn(usize) -> f64,
) -> Result<Vec<ConvergenceRow>> {
    ns.into_iter()
        .map(|n| {
            let hs = build_hemisphere_set(&HemisphereConfig::new(n, density(n)))?;
            Ok(ConvergenceRow {
                n,
                total: hs.len(),
                all_ones: all_ones_bound(&hs),
                analytic: analytic_bound(n)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn smallest_construction() {
        let hs = build_hemisphere_set(&HemisphereConfig::new(2, 1.0)).unwrap();
        assert_eq!(hs.points_per_band, vec![1]);
        let d = hs.set.directions()[0];
        assert!((d.x() - FRAC_PI_4.sin()).abs() < 1e-15);
        assert!(d.y().abs() < 1e-15);
        assert!((d.z() - FRAC_PI_4.cos()).abs() < 1e-15);
        assert!((all_ones_bound(&hs) - 1.0).abs() < 1e-15);
        let exact = exact_bound_small(&hs).unwrap();
        assert!((exact.bound.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn four_bands_density_four() {
        let hs = build_hemisphere_set(&HemisphereConfig::new(4, 4.0)).unwrap();
        assert_eq!(hs.points_per_band, vec![2, 3, 4]);
        assert_eq!(hs.len(), 9);
        // hand sum: (2 cos π/8 + 3 cos π/4 + 4 cos 3π/8) / 9
        let a = PI / 8.0;
        let expect = (2.0 * a.cos() + 3.0 * (2.0 * a).cos() + 4.0 * (3.0 * a).cos()) / 9.0;
        assert!((all_ones_bound(&hs) - expect).abs() < 1e-15);
        assert!(band_residual(&hs) < 1e-10);
    }

    #[test]
    fn every_direction_is_northern() {
        for n in 2..30 {
            let hs = build_hemisphere_set(&HemisphereConfig::new(n, 7.5)).unwrap();
            assert!(hs.set.directions().iter().all(|d| d.z() > 0.0));
            for (band, &theta) in hs.bands().zip(&hs.band_angles) {
                assert!(band.iter().all(|d| (d.z() - theta.cos()).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn analytic_small_cases() {
        assert!((analytic_bound(2).unwrap() - FRAC_PI_4.cos()).abs() < 1e-15);
        assert!(analytic_bound(1).is_err());
        assert!((analytic_bound(1_000_000).unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn intermediate_form_differs_by_cos_squared() {
        for n in [3usize, 10, 100] {
            let alpha = FRAC_PI_2 / n as f64;
            let c2 = (alpha / 2.0).cos().powi(2);
            let direct = analytic_bound(n).unwrap();
            let mid = intermediate_closed_form(n);
            assert!((direct * c2 - mid).abs() < 1e-12, "n={n}: {direct} vs {mid}");
        }
    }

    #[test]
    fn config_validation() {
        assert!(build_hemisphere_set(&HemisphereConfig::new(1, 4.0)).is_err());
        assert!(build_hemisphere_set(&HemisphereConfig::new(3, 0.0)).is_err());
        assert!(build_hemisphere_set(&HemisphereConfig::new(3, f64::NAN)).is_err());
    }

    #[test]
    fn half_integer_counts_round_up() {
        let cfg = HemisphereConfig::new(3, 3.0);
        assert_eq!(cfg.points_per_band(), vec![2, 3]);
        let hs = build_hemisphere_set(&cfg).unwrap();
        let e = exact_bound_small(&hs).unwrap();
        assert!(e.all_ones_maximizing);
        assert!((e.bound.value - e.all_ones).abs() < 1e-12);
    }

    #[test]
    fn sparse_bands_need_not_favor_all_ones() {
        // one point at 30 degrees, an antipodal pair at 60 degrees: flipping
        // one member of the pair beats the all-ones sum
        let cfg = HemisphereConfig::new(3, 2.0);
        assert_eq!(cfg.points_per_band(), vec![1, 2]);
        let e = exact_bound_small(&build_hemisphere_set(&cfg).unwrap()).unwrap();
        assert!(!e.all_ones_maximizing);
        let third = 1.0 / 3.0;
        let all_ones = third * (0.5f64.powi(2) + (0.75f64.sqrt() + 1.0).powi(2)).sqrt();
        let flipped = third * ((0.5 + 3f64.sqrt()).powi(2) + 0.75).sqrt();
        assert!((e.all_ones - all_ones).abs() < 1e-12);
        assert!((e.bound.value - flipped).abs() < 1e-12);
    }

    #[test]
    fn exact_bound_capacity() {
        let hs = build_hemisphere_set(&HemisphereConfig::new(6, 10.0)).unwrap();
        assert!(hs.len() > MAX_EXACT);
        assert!(exact_bound_small(&hs).unwrap_err().is_capacity());
    }
}
