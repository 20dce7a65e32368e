//! Dense linear-algebra support: complex spectra of real nonsymmetric
//! matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum EigError {
    #[error("eigensolver failed to converge for a {size}x{size} matrix within {max_sweeps} QR sweeps")]
    NoConvergence { size: usize, max_sweeps: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// QR sweep budget per matrix dimension before the solver gives up.
const QR_SWEEPS_PER_DIM: usize = 100;

/// All eigenvalues of a real square matrix, with algebraic multiplicity.
///
/// Delegates to a real Schur decomposition (Hessenberg reduction followed by
/// the implicitly shifted Francis QR iteration); eigenvalues are read off the
/// quasi-triangular factor. Non-convergence within the sweep budget is
/// reported as an error rather than a panic.
pub fn eig(m: &DMatrix<f64>) -> Result<Vec<Complex64>, EigError> {
    if m.nrows() != m.ncols() {
        return Err(EigError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(EigError::NonFinite);
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_sweeps = QR_SWEEPS_PER_DIM * n;
    let schur = m
        .clone()
        .try_schur(f64::EPSILON, max_sweeps)
        .ok_or(EigError::NoConvergence {
            size: n,
            max_sweeps,
        })?;
    let ev = schur.complex_eigenvalues();
    Ok(ev.iter().cloned().collect())
}

/// Spectral radius: maximum eigenvalue modulus.
pub fn spectral_radius_of(eigs: &[Complex64]) -> f64 {
    eigs.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sort complex values by (re, im) for order-insensitive comparisons.
pub fn sort_complex(mut eigs: Vec<Complex64>) -> Vec<Complex64> {
    eigs.sort_by(|a, b| {
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    });
    eigs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_spectrum() {
        let eigs = eig(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(eigs.len(), 3);
        for z in eigs {
            assert_abs_diff_eq!(z.re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rotation_matrix_has_imaginary_pair() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let eigs = sort_complex(eig(&m).unwrap());
        assert_abs_diff_eq!(eigs[0].im, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1].im, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[0].re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn companion_matrix_of_cubic() {
        // companion of p(t) = t^3 - 6 t^2 + 11 t - 6 = (t-1)(t-2)(t-3)
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[6.0, -11.0, 6.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        );
        let eigs = sort_complex(eig(&m).unwrap());
        let expect = [1.0, 2.0, 3.0];
        for (z, want) in eigs.iter().zip(expect) {
            assert_abs_diff_eq!(z.re, want, epsilon = 1e-9);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn spectrum_matches_trace_and_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 5, 9] {
            let m = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
            let eigs = eig(&m).unwrap();
            assert_eq!(eigs.len(), n);
            let sum: Complex64 = eigs.iter().sum();
            let prod: Complex64 = eigs.iter().product();
            assert_abs_diff_eq!(sum.re, m.trace(), epsilon = 1e-8);
            assert_abs_diff_eq!(sum.im, 0.0, epsilon = 1e-8);
            assert_abs_diff_eq!(prod.re, m.determinant(), epsilon = 1e-8);
            assert_abs_diff_eq!(prod.im, 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            eig(&DMatrix::from_row_slice(1, 2, &[1.0, 2.0])),
            Err(EigError::NotSquare { .. })
        ));
        assert!(matches!(
            eig(&DMatrix::from_row_slice(1, 1, &[f64::NAN])),
            Err(EigError::NonFinite)
        ));
    }
}
