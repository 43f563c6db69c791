use nalgebra::SymmetricEigen;

use super::{ensure_finite, ensure_symmetric, symmetrize, Matrix};
use crate::error::LinalgError;
use crate::tol;

/// The canonical form `Ω = ⊕ⁿ [[0, 1], [-1, 0]]` in `(x₁, y₁, …, xₙ, yₙ)` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    pub n_modes: usize,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes }
    }

    pub fn into_matrix(self) -> Matrix {
        let mut omega = Matrix::zeros(2 * self.n_modes, 2 * self.n_modes);
        for j in 0..self.n_modes {
            omega[(2 * j, 2 * j + 1)] = 1.0;
            omega[(2 * j + 1, 2 * j)] = -1.0;
        }
        omega
    }
}

/// Symplectic eigenvalues of a symmetric PSD `2n × 2n` matrix, descending.
///
/// With `R = M^{1/2}`, the symmetric matrix `-(RΩR)²` has spectrum `{ν_j²}`,
/// each value twice; pairs are matched greedily after sorting. Going through
/// symmetric eigenproblems keeps degenerate spectra (pure states) well behaved.
pub fn symplectic_eigenvalues(m: &Matrix, n_modes: usize) -> Result<Vec<f64>, LinalgError> {
    if m.nrows() != 2 * n_modes || m.ncols() != 2 * n_modes || n_modes == 0 {
        return Err(LinalgError::Dimension(format!(
            "expected {0}x{0} for {n_modes} modes, got {1}x{2}",
            2 * n_modes,
            m.nrows(),
            m.ncols()
        )));
    }
    ensure_finite(m)?;
    ensure_symmetric(m)?;

    let norm = m.norm();
    let eig = SymmetricEigen::new(symmetrize(m));
    let min_eig = eig.eigenvalues.min();
    if min_eig < -tol::PSD_REL * norm {
        return Err(LinalgError::NotPsd(min_eig));
    }
    let root = &eig.eigenvectors
        * Matrix::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()))
        * eig.eigenvectors.transpose();

    let omega = SymplecticForm::new(n_modes).into_matrix();
    let a = &root * omega * &root;
    let squared = symmetrize(&(a.transpose() * &a));
    let scale = norm * norm;

    let mut nu2: Vec<f64> = SymmetricEigen::new(squared)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nu2.sort_by(|a, b| b.total_cmp(a));

    let mut out = Vec::with_capacity(n_modes);
    for pair in nu2.chunks_exact(2) {
        if (pair[0] - pair[1]).abs() > tol::PAIRING_REL * scale {
            return Err(LinalgError::UnpairedSpectrum(format!(
                "unpaired values {:e} and {:e}",
                pair[0], pair[1]
            )));
        }
        let mean = 0.5 * (pair[0] + pair[1]);
        if mean < -tol::NEG_NU2_REL * scale {
            return Err(LinalgError::UnpairedSpectrum(format!(
                "negative ν² = {mean:e}"
            )));
        }
        out.push(mean.max(0.0).sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    #[test]
    fn form_properties() {
        let o = SymplecticForm::new(3).into_matrix();
        assert_eq!(o.transpose(), -&o);
        assert_eq!(&o * &o, -Matrix::identity(6, 6));
    }

    #[test]
    fn uncoupled_thermal_modes() {
        let m = Matrix::from_diagonal(&DVector::from_vec(vec![3.0, 3.0, 7.0, 7.0]));
        let nu = symplectic_eigenvalues(&m, 2).unwrap();
        assert!((nu[0] - 7.0).abs() < 1e-12 && (nu[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn vacuum() {
        let nu = symplectic_eigenvalues(&Matrix::identity(6, 6), 3).unwrap();
        assert!(nu.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn asymmetric_single_mode() {
        // diag(a, b) has ν = sqrt(ab)
        let m = Matrix::from_diagonal(&DVector::from_vec(vec![4.0, 0.25]));
        let nu = symplectic_eigenvalues(&m, 1).unwrap();
        assert!((nu[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let asym = Matrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(
            symplectic_eigenvalues(&asym, 1),
            Err(LinalgError::NotSymmetric(_))
        ));
        let neg = Matrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0]));
        assert!(matches!(
            symplectic_eigenvalues(&neg, 1),
            Err(LinalgError::NotPsd(_))
        ));
        assert!(matches!(
            symplectic_eigenvalues(&Matrix::identity(4, 4), 1),
            Err(LinalgError::Dimension(_))
        ));
    }
}
