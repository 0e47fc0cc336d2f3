//! Two-qubit states: Werner, generalized Werner, MEMS and AVN families,
//! partial transposition and Pauli correlation tensors.
//!
//! Basis ordering is |00>, |01>, |10>, |11> with the first qubit (Alice)
//! as the most significant index.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Result, SteeringError};
use crate::linalg::hermitian_eigenvalues;
use crate::vector::Vec3;

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = -1e-9;
/// Looser hermiticity check applied before eigen-decomposition.
pub const EIGEN_HERMITIAN_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A 4×4 complex matrix with finite entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex64; 4]; 4],
}

impl ComplexMatrix4 {
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        if entries.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SteeringError::validation("matrix has non-finite entries"));
        }
        Ok(ComplexMatrix4 { entries })
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Result<Self> {
        ComplexMatrix4::new(rows.map(|r| r.map(re)))
    }

    pub fn identity() -> Self {
        let mut e = [[ZERO; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = re(1.0);
        }
        ComplexMatrix4 { entries: e }
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// max |M - M†| over entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix4 {
            entries: self.entries.map(|r| r.map(|z| z * s)),
        }
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix4) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    /// Transpose on the second tensor factor: (a b),(c d) -> (a d),(c b).
    pub fn partial_transpose(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        out[2 * a + b][2 * c + d] = self.entries[2 * a + d][2 * c + b];
                    }
                }
            }
        }
        ComplexMatrix4 { entries: out }
    }

    /// Eigenvalues (ascending); the matrix must be Hermitian within 1e-10.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let defect = self.hermiticity_defect();
        if defect > EIGEN_HERMITIAN_TOLERANCE {
            return Err(SteeringError::validation(format!(
                "matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let flat: Vec<Complex64> = self.entries.iter().flatten().copied().collect();
        Ok(hermitian_eigenvalues(&flat, 4))
    }
}

impl Add for ComplexMatrix4 {
    type Output = ComplexMatrix4;
    fn add(self, o: ComplexMatrix4) -> ComplexMatrix4 {
        let mut e = self.entries;
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] += o.entries[i][j];
            }
        }
        ComplexMatrix4 { entries: e }
    }
}

impl Mul<ComplexMatrix4> for f64 {
    type Output = ComplexMatrix4;
    fn mul(self, m: ComplexMatrix4) -> ComplexMatrix4 {
        m.scale(self)
    }
}

/// Smallest eigenvalue of a Hermitian 4×4 matrix.
pub fn min_eigenvalue(m: &ComplexMatrix4) -> Result<f64> {
    Ok(m.eigenvalues()?[0])
}

pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix4 {
    rho.matrix().partial_transpose()
}

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix4,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOLERANCE {
            return Err(SteeringError::validation(format!(
                "density matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - re(1.0)).norm() > TRACE_TOLERANCE {
            return Err(SteeringError::validation(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let lmin = min_eigenvalue(&matrix)?;
        if lmin < PSD_TOLERANCE {
            return Err(SteeringError::validation(format!(
                "density matrix has negative eigenvalue {lmin:e}"
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        check_range("weight", w, 0.0, 1.0, "[0, 1]")?;
        DensityMatrix::new(w * self.matrix + (1.0 - w) * other.matrix)
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        let e = self.matrix.entries();
        let mut p = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                p += (e[i][j] * e[j][i]).re;
            }
        }
        p
    }
}

/// Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    let i = Complex64::new(0.0, 1.0);
    match k {
        0 => [[ZERO, re(1.0)], [re(1.0), ZERO]],
        1 => [[ZERO, -i], [i, ZERO]],
        2 => [[re(1.0), ZERO], [ZERO, re(-1.0)]],
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// The 3×3 tensor T[k][l] = Tr[ρ (σ_k ⊗ σ_l)].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn apply(&self, b: Vec3) -> Vec3 {
        let t = &self.t;
        Vec3::new(
            t[0][0] * b.x + t[0][1] * b.y + t[0][2] * b.z,
            t[1][0] * b.x + t[1][1] * b.y + t[1][2] * b.z,
            t[2][0] * b.x + t[2][1] * b.y + t[2][2] * b.z,
        )
    }

    pub fn max_abs_diff(&self, other: &CorrelationMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                worst = worst.max((self.t[k][l] - other.t[k][l]).abs());
            }
        }
        worst
    }
}

pub fn correlation_matrix(rho: &DensityMatrix) -> CorrelationMatrix {
    let e = rho.matrix().entries();
    let mut t = [[0.0; 3]; 3];
    for (k, row) in t.iter_mut().enumerate() {
        let sk = pauli(k);
        for (l, out) in row.iter_mut().enumerate() {
            let sl = pauli(l);
            // Tr[ρ O] = Σ_ij ρ_ij O_ji with O = σ_k ⊗ σ_l
            let mut acc = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    let o_ji = sk[j >> 1][i >> 1] * sl[j & 1][i & 1];
                    acc += e[i][j] * o_ji;
                }
            }
            *out = acc.re;
        }
    }
    CorrelationMatrix { t }
}

/// Parameters of one of the four supported state families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateParams {
    Werner { v: f64 },
    GeneralizedWerner { v: f64, theta: f64 },
    Mems { gamma: f64 },
    Avn { v: f64, theta: f64 },
}

impl StateParams {
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            StateParams::Werner { v } => make_werner(v),
            StateParams::GeneralizedWerner { v, theta } => make_generalized_werner(v, theta),
            StateParams::Mems { gamma } => make_mems(gamma),
            StateParams::Avn { v, theta } => make_avn(v, theta),
        }
    }
}

/// V·|Φ−⟩⟨Φ−| + (1−V)·𝕀/4 with |Φ−⟩ = (|01⟩ − |10⟩)/√2.
pub fn make_werner(v: f64) -> Result<DensityMatrix> {
    check_range("V", v, 0.0, 1.0, "[0, 1]")?;
    let n = (1.0 - v) / 4.0;
    DensityMatrix::new(ComplexMatrix4::from_real([
        [n, 0.0, 0.0, 0.0],
        [0.0, 0.5 * v + n, -0.5 * v, 0.0],
        [0.0, -0.5 * v, 0.5 * v + n, 0.0],
        [0.0, 0.0, 0.0, n],
    ])?)
}

/// Werner-type mixture built on cos θ|01⟩ − sin θ|10⟩.
pub fn make_generalized_werner(v: f64, theta: f64) -> Result<DensityMatrix> {
    check_range("V", v, 0.0, 1.0, "[0, 1]")?;
    check_range("theta", theta, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let (s, c) = theta.sin_cos();
    let n = (1.0 - v) / 4.0;
    DensityMatrix::new(ComplexMatrix4::from_real([
        [n, 0.0, 0.0, 0.0],
        [0.0, v * c * c + n, -v * s * c, 0.0],
        [0.0, -v * s * c, v * s * s + n, 0.0],
        [0.0, 0.0, 0.0, n],
    ])?)
}

/// The MEMS diagonal weight: 1/3 up to γ = 2/3, then γ/2.
pub fn mems_g(gamma: f64) -> f64 {
    if gamma <= 2.0 / 3.0 {
        1.0 / 3.0
    } else {
        gamma / 2.0
    }
}

pub fn make_mems(gamma: f64) -> Result<DensityMatrix> {
    check_range("gamma", gamma, 0.0, 1.0, "[0, 1]")?;
    let g = mems_g(gamma);
    let h = gamma / 2.0;
    DensityMatrix::new(ComplexMatrix4::from_real([
        [g, 0.0, 0.0, h],
        [0.0, 1.0 - 2.0 * g, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [h, 0.0, 0.0, g],
    ])?)
}

/// The all-versus-nothing family. V = 1/2 is accepted; only the open
/// interval 0 < θ < π/2 is.
pub fn make_avn(v: f64, theta: f64) -> Result<DensityMatrix> {
    check_range("V", v, 0.0, 1.0, "[0, 1]")?;
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(SteeringError::Range {
            name: "theta",
            value: theta,
            range: "(0, pi/2)",
        });
    }
    let (s, c) = theta.sin_cos();
    let w = 1.0 - v;
    DensityMatrix::new(ComplexMatrix4::from_real([
        [v * c * c, 0.0, 0.0, v * s * c],
        [0.0, w * s * s, w * s * c, 0.0],
        [0.0, w * s * c, w * c * c, 0.0],
        [v * s * c, 0.0, 0.0, v * s * s],
    ])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
    }

    #[test]
    fn werner_endpoints() {
        let noise = make_werner(0.0).unwrap();
        assert!(noise.matrix().max_abs_diff(&ComplexMatrix4::identity().scale(0.25)) == 0.0);
        let singlet = make_werner(1.0).unwrap();
        let e = singlet.matrix().entries();
        assert_eq!([e[0][0].re, e[1][1].re, e[2][2].re, e[3][3].re], [0.0, 0.5, 0.5, 0.0]);
        assert_eq!(e[1][2].re, -0.5);
        assert_eq!(e[2][1].re, -0.5);
    }

    #[test]
    fn werner_half() {
        let e = *make_werner(0.5).unwrap().matrix().entries();
        let diag = [e[0][0].re, e[1][1].re, e[2][2].re, e[3][3].re];
        assert_eq!(diag, [0.125, 0.375, 0.375, 0.125]);
        assert_eq!(e[1][2].re, -0.25);
        assert_eq!(e[2][1].re, -0.25);
    }

    #[test]
    fn werner_rejects_out_of_range() {
        assert!(matches!(make_werner(1.2), Err(SteeringError::Range { .. })));
        assert!(make_werner(-0.01).is_err());
        assert!(make_werner(f64::NAN).is_err());
    }

    #[test]
    fn generalized_werner_reduces_to_werner() {
        for v in grid(0.0, 1.0, 11) {
            let gw = make_generalized_werner(v, FRAC_PI_4).unwrap();
            let w = make_werner(v).unwrap();
            assert!(gw.matrix().max_abs_diff(w.matrix()) <= 1e-15);
        }
        let noise = make_generalized_werner(0.0, 0.3).unwrap();
        assert!(noise.matrix().max_abs_diff(&ComplexMatrix4::identity().scale(0.25)) == 0.0);
    }

    #[test]
    fn generalized_werner_product_state_is_ppt_boundary() {
        let rho = make_generalized_werner(1.0, 0.0).unwrap();
        let e = rho.matrix().entries();
        assert_eq!(e[1][1].re, 1.0);
        let lmin = min_eigenvalue(&partial_transpose(&rho)).unwrap();
        assert!(lmin.abs() < 1e-15);
        assert!(make_generalized_werner(0.5, 1.6).is_err());
    }

    #[test]
    fn mems_cases() {
        let bell = make_mems(1.0).unwrap();
        assert!((bell.purity() - 1.0).abs() < 1e-14);
        let e = bell.matrix().entries();
        assert_eq!([e[0][0].re, e[0][3].re, e[3][3].re], [0.5, 0.5, 0.5]);

        let flat = make_mems(0.0).unwrap();
        let e = flat.matrix().entries();
        let third = 1.0 / 3.0;
        assert_eq!([e[0][0].re, e[1][1].re, e[2][2].re, e[3][3].re], [third, 1.0 - 2.0 * third, 0.0, third]);

        // both branches give g = 1/3 at the boundary
        assert_eq!(mems_g(2.0 / 3.0), 1.0 / 3.0);
        assert!(((2.0_f64 / 3.0) / 2.0 - 1.0 / 3.0).abs() < 1e-16);
        assert!(make_mems(1.5).is_err());
    }

    #[test]
    fn avn_pure_limits() {
        let phi_plus = make_avn(1.0, FRAC_PI_4).unwrap();
        assert!((phi_plus.purity() - 1.0).abs() < 1e-14);
        assert!((phi_plus.matrix().get(0, 3).re - 0.5).abs() < 1e-15);
        let psi_plus = make_avn(0.0, FRAC_PI_4).unwrap();
        assert!((psi_plus.purity() - 1.0).abs() < 1e-14);
        assert!((psi_plus.matrix().get(1, 2).re - 0.5).abs() < 1e-15);
        assert!(make_avn(0.5, 0.3).is_ok());
        assert!(make_avn(0.5, 0.0).is_err());
        assert!(make_avn(0.5, FRAC_PI_2).is_err());
    }

    #[test]
    fn partial_transpose_fixed_points_and_werner_spectrum() {
        let noise = make_werner(0.0).unwrap();
        assert_eq!(partial_transpose(&noise), *noise.matrix());
        let lmin = min_eigenvalue(&partial_transpose(&make_werner(1.0).unwrap())).unwrap();
        assert!((lmin + 0.5).abs() < 1e-12);
        let lmin = min_eigenvalue(&partial_transpose(&make_werner(1.0 / 3.0).unwrap())).unwrap();
        assert!(lmin.abs() < 1e-12);
        let lmin = min_eigenvalue(&partial_transpose(&make_werner(0.8).unwrap())).unwrap();
        assert!((lmin + 0.35).abs() < 1e-12);
        assert!((min_eigenvalue(noise.matrix()).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn min_eigenvalue_rejects_non_hermitian() {
        let mut m = [[0.0; 4]; 4];
        m[0][1] = 1.0;
        let m = ComplexMatrix4::from_real(m).unwrap();
        assert!(matches!(min_eigenvalue(&m), Err(SteeringError::Validation(_))));
    }

    #[test]
    fn product_state_partial_transpose_stays_psd() {
        // ρ_A ⊗ ρ_B with ρ_B carrying a complex coherence
        let a = [[0.7, 0.2], [0.2, 0.3]];
        let b = [
            [Complex64::new(0.6, 0.0), Complex64::new(0.1, 0.3)],
            [Complex64::new(0.1, -0.3), Complex64::new(0.4, 0.0)],
        ];
        let mut e = [[ZERO; 4]; 4];
        let mut et = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] = b[i & 1][j & 1] * a[i >> 1][j >> 1];
                et[i][j] = b[j & 1][i & 1] * a[i >> 1][j >> 1];
            }
        }
        let rho = DensityMatrix::new(ComplexMatrix4::new(e).unwrap()).unwrap();
        let pt = partial_transpose(&rho);
        assert!(pt.max_abs_diff(&ComplexMatrix4::new(et).unwrap()) < 1e-16);
        assert!(min_eigenvalue(&pt).unwrap() > -1e-12);
    }

    #[test]
    fn werner_correlations() {
        for v in grid(0.0, 1.0, 7) {
            let t = correlation_matrix(&make_werner(v).unwrap());
            for k in 0..3 {
                for l in 0..3 {
                    let expect = if k == l { -v } else { 0.0 };
                    assert!((t.t[k][l] - expect).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn constructors_valid_on_grids() {
        for v in grid(0.0, 1.0, 50) {
            make_werner(v).unwrap();
            for th in grid(0.0, FRAC_PI_2, 50) {
                make_generalized_werner(v, th).unwrap();
            }
            for th in grid(0.0, FRAC_PI_2, 52).skip(1).take(50) {
                make_avn(v, th).unwrap();
            }
        }
        for g in grid(0.0, 1.0, 50) {
            make_mems(g).unwrap();
        }
    }
}
