//! Dense eigenvalues of small complex Hermitian matrices.
//!
//! A Hermitian `H = X + iY` (n×n) is embedded as the real symmetric
//! `[[X, -Y], [Y, X]]` (2n×2n), whose spectrum is that of `H` with every
//! eigenvalue doubled. The real matrix is diagonalized by cyclic Jacobi
//! rotations, which converge quadratically and reach machine precision
//! for the 4×4 and 8×8 sizes used here.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a real symmetric matrix stored row-major, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..n {
            diag += a[i * n + i] * a[i * n + i];
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off <= f64::EPSILON * f64::EPSILON * diag.max(f64::MIN_POSITIVE) || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues (ascending) of an n×n complex Hermitian matrix given row-major.
///
/// Only the lower triangle is read; callers check hermiticity beforehand.
pub fn hermitian_eigenvalues(h: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(h.len(), n * n);
    let m = 2 * n;
    let mut real = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize explicitly from the lower triangle
            let z = if i >= j { h[i * n + j] } else { h[j * n + i].conj() };
            real[i * m + j] = z.re;
            real[(i + n) * m + (j + n)] = z.re;
            real[i * m + (j + n)] = -z.im;
            real[(i + n) * m + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(real, m);
    doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

/// Largest eigenvalue of a 2×2 Hermitian matrix `[[a, b], [conj(b), d]]`.
pub fn max_eigenvalue_2x2(m: [[Complex64; 2]; 2]) -> f64 {
    let flat = [m[0][0], m[0][1], m[1][0], m[1][1]];
    let eig = hermitian_eigenvalues(&flat, 2);
    eig[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_real() {
        let e = symmetric_eigenvalues(vec![3.0, 0.0, 0.0, -1.0], 2);
        assert_eq!(e, vec![-1.0, 3.0]);
    }

    #[test]
    fn pauli_y_spectrum() {
        let e = hermitian_eigenvalues(&[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)], 2);
        assert!((e[0] + 1.0).abs() < 1e-15);
        assert!((e[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_matches_closed_form() {
        // eigenvalues of [[a, b], [b*, d]] are (a+d)/2 ± sqrt(((a-d)/2)^2 + |b|^2)
        let (a, d, b) = (0.3, -1.7, c(0.4, -2.2));
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let got = max_eigenvalue_2x2([[c(a, 0.0), b], [b.conj(), c(d, 0.0)]]);
        assert!((got - (mean + rad)).abs() < 1e-14);
    }

    #[test]
    fn four_by_four_trace_and_determinant() {
        let h = [
            c(1.0, 0.0), c(0.2, 0.1), c(0.0, -0.3), c(0.5, 0.0),
            c(0.2, -0.1), c(-0.5, 0.0), c(0.7, 0.7), c(0.0, 0.0),
            c(0.0, 0.3), c(0.7, -0.7), c(2.0, 0.0), c(-0.1, 0.2),
            c(0.5, 0.0), c(0.0, 0.0), c(-0.1, -0.2), c(0.25, 0.0),
        ];
        let e = hermitian_eigenvalues(&h, 4);
        let trace: f64 = e.iter().sum();
        assert!((trace - 2.75).abs() < 1e-13);
        // sum of squared eigenvalues equals the squared Frobenius norm
        let frob: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        let sq: f64 = e.iter().map(|x| x * x).sum();
        assert!((frob - sq).abs() < 1e-12);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
    }
}
