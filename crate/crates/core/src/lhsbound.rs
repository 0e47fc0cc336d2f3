//! Local-hidden-state bound of an N-setting linear steering inequality.
//!
//! For Bob's directions b_1..b_N the bound is
//! `C_N = max_A |Σ_j A_j b_j| / N` over sign assignments `A ∈ {±1}^N`.
//! [`lhs_bound`] scans the 2^(N-1) assignments with `A_1 = +1` in Gray-code
//! order, updating the running resultant with one vector per step.
//! [`lhs_bound_eig`] recomputes the same quantity from the largest
//! eigenvalue of `Σ_j A_j (b_j·σ)` and serves as an independent check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SteeringError};
use crate::linalg::max_eigenvalue_2x2;
use crate::vector::{Rotation3, UnitVector3, Vec3};

/// Largest N accepted by [`lhs_bound`].
pub const MAX_ENUMERATION: usize = 30;
/// Largest N accepted by [`lhs_bound_eig`].
pub const MAX_EIG_ENUMERATION: usize = 20;

/// Relative tolerance on |S|² under which two assignments count as tied.
const TIE_TOLERANCE: f64 = 1e-12;
/// The running resultant is rebuilt from scratch this often.
const RESYNC_INTERVAL: u64 = 1 << 10;

/// An ordered list of Bob's measurement directions.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    label: String,
    directions: Vec<UnitVector3>,
}

impl MeasurementSet {
    pub fn new(label: impl Into<String>, directions: Vec<UnitVector3>) -> Result<Self> {
        if directions.is_empty() {
            return Err(SteeringError::validation("measurement set is empty"));
        }
        Ok(MeasurementSet {
            label: label.into(),
            directions,
        })
    }

    /// Builds a set from raw rows, each validated as a unit vector.
    pub fn from_rows(label: impl Into<String>, rows: &[[f64; 3]]) -> Result<Self> {
        let dirs = rows
            .iter()
            .map(|r| UnitVector3::try_from(*r))
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::new(label, dirs)
    }

    /// Builds a set from rows that are only approximately unit length
    /// (e.g. printed with a few decimals), rescaling each one. Returns the
    /// set and the largest `| |row| - 1 |` encountered.
    pub fn from_rows_normalized(label: impl Into<String>, rows: &[[f64; 3]]) -> Result<(Self, f64)> {
        let mut delta: f64 = 0.0;
        let mut dirs = Vec::with_capacity(rows.len());
        for r in rows {
            let v = Vec3::from_array(*r);
            delta = delta.max((v.norm() - 1.0).abs());
            dirs.push(UnitVector3::normalize(v)?);
        }
        Ok((MeasurementSet::new(label, dirs)?, delta))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn directions(&self) -> &[UnitVector3] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn rows(&self) -> Vec<[f64; 3]> {
        self.directions.iter().map(|d| d.vec().to_array()).collect()
    }

    /// Σ_j b_j / N.
    pub fn mean_vector(&self) -> Vec3 {
        let sum = self.directions.iter().fold(Vec3::ZERO, |acc, d| acc + d.vec());
        (1.0 / self.len() as f64) * sum
    }

    pub fn rotated(&self, r: &Rotation3) -> MeasurementSet {
        MeasurementSet {
            label: self.label.clone(),
            directions: self.directions.iter().map(|d| r.apply_unit(*d)).collect(),
        }
    }

    /// Replaces b_j by s_j·b_j.
    pub fn signed(&self, signs: &[i8]) -> Result<MeasurementSet> {
        if signs.len() != self.len() {
            return Err(SteeringError::validation(format!(
                "{} signs for {} directions",
                signs.len(),
                self.len()
            )));
        }
        let directions = self
            .directions
            .iter()
            .zip(signs)
            .map(|(d, &s)| if s < 0 { d.flipped() } else { *d })
            .collect();
        Ok(MeasurementSet {
            label: self.label.clone(),
            directions,
        })
    }
}

/// max_A |Σ A_j b_j|² without bookkeeping for the maximizer; the hot path
/// of the optimizer. Callers enforce the capacity limit.
pub(crate) fn max_signed_norm_sqr(dirs: &[UnitVector3]) -> f64 {
    let free = dirs.len() - 1;
    let mut mask: u64 = 0;
    let mut sum = signed_sum(dirs, 0);
    let mut best = sum.norm_sqr();
    for step in 1..(1u64 << free) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if step % RESYNC_INTERVAL == 0 {
            sum = signed_sum(dirs, mask);
        } else {
            let b = dirs[bit + 1].vec();
            if mask >> bit & 1 == 1 {
                sum -= 2.0 * b;
            } else {
                sum += 2.0 * b;
            }
        }
        best = best.max(sum.norm_sqr());
    }
    best
}

/// Every sign pattern with `|Σ A_j b_j|² >= threshold_sqr`, as the mask of
/// flipped directions among `b_2..b_N` (A_1 = +1) and the signed sum.
pub(crate) fn patterns_above(dirs: &[UnitVector3], threshold_sqr: f64) -> Vec<(u64, Vec3)> {
    let free = dirs.len() - 1;
    let mut mask: u64 = 0;
    let mut sum = signed_sum(dirs, 0);
    let mut out = Vec::new();
    if sum.norm_sqr() >= threshold_sqr {
        out.push((0, sum));
    }
    for step in 1..(1u64 << free) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if step % RESYNC_INTERVAL == 0 {
            sum = signed_sum(dirs, mask);
        } else {
            let b = dirs[bit + 1].vec();
            if mask >> bit & 1 == 1 {
                sum -= 2.0 * b;
            } else {
                sum += 2.0 * b;
            }
        }
        if sum.norm_sqr() >= threshold_sqr {
            out.push((mask, sum));
        }
    }
    out
}

/// The bound value alone, `sqrt(max_A |Σ A_j b_j|²) / N`.
pub(crate) fn bound_value(dirs: &[UnitVector3]) -> f64 {
    max_signed_norm_sqr(dirs).sqrt() / dirs.len() as f64
}

/// The LHS bound together with one maximizing sign assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub signs: Vec<i8>,
    /// Σ_j A_j b_j / N for the reported assignment.
    pub resultant: [f64; 3],
}

impl BoundResult {
    pub fn all_ones_maximizing(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

fn check_capacity(set: &MeasurementSet, limit: usize, what: &'static str) -> Result<()> {
    if set.len() > limit {
        Err(SteeringError::Capacity {
            what,
            n: set.len(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// Bit `k` of a mask stands for A_{k+2} = -1 (A_1 is pinned to +1).
fn signed_sum(dirs: &[UnitVector3], mask: u64) -> Vec3 {
    let mut s = dirs[0].vec();
    for (k, d) in dirs[1..].iter().enumerate() {
        if mask >> k & 1 == 1 {
            s -= d.vec();
        } else {
            s += d.vec();
        }
    }
    s
}

/// Lexicographic order on sign vectors with +1 < -1.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

fn mask_to_signs(mask: u64, n: usize) -> Vec<i8> {
    let mut signs = Vec::with_capacity(n);
    signs.push(1);
    for k in 0..n - 1 {
        signs.push(if mask >> k & 1 == 1 { -1 } else { 1 });
    }
    signs
}

/// Exact LHS bound by exhaustive Gray-code enumeration.
///
/// The reported signs start with +1; among (numerically) tied maximizers
/// the lexicographically smallest sign vector is returned, so an all-ones
/// maximizer is always reported as such.
pub fn lhs_bound(set: &MeasurementSet) -> Result<BoundResult> {
    check_capacity(set, MAX_ENUMERATION, "lhs_bound")?;
    let dirs = set.directions();
    let n = dirs.len();
    let free = n - 1;

    let mut mask: u64 = 0;
    let mut sum = signed_sum(dirs, 0);
    let mut best_mask: u64 = 0;
    let mut best = sum.norm_sqr();

    for step in 1..(1u64 << free) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if step % RESYNC_INTERVAL == 0 {
            sum = signed_sum(dirs, mask);
        } else {
            let b = dirs[bit + 1].vec();
            if mask >> bit & 1 == 1 {
                sum -= 2.0 * b;
            } else {
                sum += 2.0 * b;
            }
        }
        let v = sum.norm_sqr();
        let tol = TIE_TOLERANCE * best.max(1.0);
        if v > best + tol {
            best = v;
            best_mask = mask;
        } else if v >= best - tol {
            if lex_less(mask, best_mask) {
                best_mask = mask;
            }
            best = best.max(v);
        }
    }

    let resultant = (1.0 / n as f64) * signed_sum(dirs, best_mask);
    Ok(BoundResult {
        value: resultant.norm(),
        signs: mask_to_signs(best_mask, n),
        resultant: resultant.to_array(),
    })
}

/// LHS bound via `max_A λ_max[Σ_j A_j b_j·σ] / N`, using a numerical
/// Hermitian eigensolver for every assignment.
pub fn lhs_bound_eig(set: &MeasurementSet) -> Result<f64> {
    check_capacity(set, MAX_EIG_ENUMERATION, "lhs_bound_eig")?;
    let dirs = set.directions();
    let n = dirs.len();
    let mut best = f64::NEG_INFINITY;
    for mask in 0..(1u64 << (n - 1)) {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (j, d) in dirs.iter().enumerate() {
            let a = if j > 0 && mask >> (j - 1) & 1 == 1 { -1.0 } else { 1.0 };
            // b·σ = [[z, x - iy], [x + iy, -z]]
            m[0][0] += Complex64::new(a * d.z(), 0.0);
            m[0][1] += Complex64::new(a * d.x(), -a * d.y());
            m[1][0] += Complex64::new(a * d.x(), a * d.y());
            m[1][1] += Complex64::new(-a * d.z(), 0.0);
        }
        best = best.max(max_eigenvalue_2x2(m));
    }
    Ok(best / n as f64)
}

/// Rotation taking the direction of `r` to +z: first −φ about z, then −θ about y.
pub fn rotation_to_north(r: Vec3) -> Rotation3 {
    let n = r.norm();
    if (r - Vec3::new(0.0, 0.0, n)).norm() <= 1e-12 * n.max(1.0) {
        return Rotation3::IDENTITY;
    }
    let phi = r.y.atan2(r.x);
    let theta = (r.z / n).clamp(-1.0, 1.0).acos();
    Rotation3::about_y(-theta).compose(&Rotation3::about_z(-phi))
}

/// Gauge-fixes a set: flips each direction by its maximizing sign, then
/// rotates the resultant onto +z. The bound is unchanged and the all-ones
/// assignment becomes maximizing.
pub fn canonicalize(set: &MeasurementSet) -> Result<MeasurementSet> {
    let bound = lhs_bound(set)?;
    let flipped = set.signed(&bound.signs)?;
    let sum = flipped
        .directions()
        .iter()
        .fold(Vec3::ZERO, |acc, d| acc + d.vec());
    if sum.norm() < 1e-12 {
        return Err(SteeringError::Canonicalization(format!(
            "resultant of '{}' vanishes",
            set.label()
        )));
    }
    Ok(flipped.rotated(&rotation_to_north(sum)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[[f64; 3]]) -> MeasurementSet {
        MeasurementSet::from_rows("t", rows).unwrap()
    }

    #[test]
    fn single_vector() {
        let b = lhs_bound(&set(&[[0.0, 0.0, 1.0]])).unwrap();
        assert_eq!(b.value, 1.0);
        assert_eq!(b.signs, vec![1]);
        assert_eq!(lhs_bound_eig(&set(&[[0.0, 0.0, 1.0]])).unwrap(), 1.0);
    }

    #[test]
    fn orthonormal_triad() {
        let b = lhs_bound(&set(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])).unwrap();
        assert!((b.value - 3f64.sqrt() / 3.0).abs() < 1e-15);
        // all eight assignments tie; the smallest is all-ones
        assert_eq!(b.signs, vec![1, 1, 1]);
    }

    #[test]
    fn antiparallel_pair_flips_second() {
        let b = lhs_bound(&set(&[[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])).unwrap();
        assert_eq!(b.value, 1.0);
        assert_eq!(b.signs, vec![1, -1]);
    }

    #[test]
    fn lex_order() {
        // position 2 differs first: + beats -
        assert!(lex_less(0b10, 0b01));
        assert!(lex_less(0b00, 0b01));
        assert!(!lex_less(0b01, 0b01));
        assert!(!lex_less(0b11, 0b10));
    }

    #[test]
    fn capacity_guards() {
        let rows = vec![[0.0, 0.0, 1.0]; 31];
        assert!(matches!(lhs_bound(&set(&rows)), Err(SteeringError::Capacity { n: 31, .. })));
        let rows = vec![[0.0, 0.0, 1.0]; 21];
        assert!(lhs_bound_eig(&set(&rows)).unwrap_err().is_capacity());
    }

    #[test]
    fn empty_set_is_invalid() {
        assert!(MeasurementSet::new("e", vec![]).is_err());
        assert!(MeasurementSet::from_rows("bad", &[[1.0, 1.0, 0.0]]).is_err());
    }

    #[test]
    fn canonicalize_opposite_pair() {
        let c = canonicalize(&set(&[[0.6, 0.0, 0.8], [-0.6, 0.0, -0.8]])).unwrap();
        for d in c.directions() {
            assert!((d.vec() - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn canonicalize_orthogonal_pair() {
        let c = canonicalize(&set(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])).unwrap();
        for d in c.directions() {
            assert!((d.z() - 0.5f64.sqrt()).abs() < 1e-12);
        }
        let b = lhs_bound(&c).unwrap();
        assert!(b.all_ones_maximizing());
        assert!((Vec3::from_array(b.resultant) - Vec3::new(0.0, 0.0, 0.5f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn rotation_to_north_cases() {
        let r = rotation_to_north(Vec3::new(0.0, 0.0, 2.0));
        assert_eq!(r, Rotation3::IDENTITY);
        let v = Vec3::new(-0.3, 0.4, -0.2);
        let w = rotation_to_north(v).apply(v);
        assert!((w - Vec3::new(0.0, 0.0, v.norm())).norm() < 1e-15);
        let v = Vec3::new(0.0, 0.0, -1.0);
        let w = rotation_to_north(v).apply(v);
        assert!((w - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
    }
}
