use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::{Complex, DMatrix};

use super::{ensure_finite, ensure_square, ensure_symmetric, Matrix};
use crate::error::LinalgError;
use crate::tol;

/// Full multiset of eigenvalues of a real square matrix (unordered).
///
/// Backed by a real Schur decomposition; an iteration cap that is reached
/// is reported as [`LinalgError::NoConvergence`].
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex<f64>>, LinalgError> {
    ensure_square(m)?;
    ensure_finite(m)?;
    let schur = Schur::try_new(m.clone(), tol::SCHUR_EPS, tol::SCHUR_MAX_ITER)
        .ok_or(LinalgError::NoConvergence)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn min_eigenvalue_symmetric(m: &Matrix) -> Result<f64, LinalgError> {
    ensure_symmetric(m)?;
    ensure_finite(m)?;
    let eig = SymmetricEigen::try_new(super::symmetrize(m), f64::EPSILON, tol::SCHUR_MAX_ITER)
        .ok_or(LinalgError::NoConvergence)?;
    Ok(eig.eigenvalues.min())
}

/// Smallest eigenvalue of a complex Hermitian matrix.
pub fn min_eigenvalue_hermitian(m: &DMatrix<Complex<f64>>) -> Result<f64, LinalgError> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(LinalgError::Dimension("expected a square matrix".into()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let scale = m.iter().fold(1.0_f64, |acc, z| acc.max(z.norm()));
    let dev = (m - m.adjoint())
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.norm()));
    if dev > tol::HERMITIAN_REL * scale {
        return Err(LinalgError::NotHermitian(dev));
    }
    let herm = (m + m.adjoint()).map(|z| z * 0.5);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, tol::SCHUR_MAX_ITER)
        .ok_or(LinalgError::NoConvergence)?;
    Ok(eig.eigenvalues.min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re_im(mut v: Vec<Complex<f64>>) -> Vec<(f64, f64)> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v.into_iter().map(|z| (z.re, z.im)).collect()
    }

    #[test]
    fn diagonal() {
        let m = Matrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -2.0]);
        let ev = sorted_re_im(eigenvalues(&m).unwrap());
        assert!((ev[0].0 + 2.0).abs() < 1e-15 && (ev[1].0 + 1.0).abs() < 1e-15);
        assert!(ev.iter().all(|z| z.1 == 0.0));
    }

    #[test]
    fn rotation_generator() {
        let m = Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let ev = sorted_re_im(eigenvalues(&m).unwrap());
        assert!(ev[0].0.abs() < 1e-15 && (ev[0].1 + 1.0).abs() < 1e-15);
        assert!(ev[1].0.abs() < 1e-15 && (ev[1].1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn companion_matrix_roots() {
        // Monic polynomial from chosen roots, expanded with complex arithmetic.
        let roots = [
            Complex::new(-1.0, 0.0),
            Complex::new(-2.0, 0.0),
            Complex::new(0.5, 0.0),
            Complex::new(3.0, 0.0),
            Complex::new(1.0, 1.0),
            Complex::new(1.0, -1.0),
        ];
        let mut coeffs = vec![Complex::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * r;
            }
            coeffs = next;
        }
        // coeffs[0] = 1 (leading), coeffs[i] multiplies x^{6-i}
        let n = roots.len();
        let mut comp = Matrix::zeros(n, n);
        for j in 0..n {
            comp[(0, j)] = -coeffs[j + 1].re;
        }
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        let got = sorted_re_im(eigenvalues(&comp).unwrap());
        let want = sorted_re_im(roots.to_vec());
        for (g, w) in got.iter().zip(&want) {
            assert!(
                (g.0 - w.0).abs() < 1e-9 && (g.1 - w.1).abs() < 1e-9,
                "{g:?} vs {w:?}"
            );
        }
    }

    #[test]
    fn rejects_non_finite() {
        let m = Matrix::from_row_slice(2, 2, &[f64::NAN, 0.0, 0.0, 1.0]);
        assert_eq!(eigenvalues(&m), Err(LinalgError::NonFinite));
    }

    #[test]
    fn hermitian_minimum() {
        let id = DMatrix::<Complex<f64>>::identity(3, 3);
        assert!((min_eigenvalue_hermitian(&id).unwrap() - 1.0).abs() < 1e-15);

        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(2.0, 0.0),
            Complex::new(-3.0, 0.0),
        ]));
        assert!((min_eigenvalue_hermitian(&d).unwrap() + 3.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_saturates_uncertainty() {
        let margin = super::super::heisenberg_margin(&(Matrix::identity(2, 2) * 0.5)).unwrap();
        assert!(margin.abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 1.0),
                Complex::new(0.0, 1.0),
                Complex::new(1.0, 0.0),
            ],
        );
        assert!(matches!(
            min_eigenvalue_hermitian(&m),
            Err(LinalgError::NotHermitian(_))
        ));
    }
}
