//! Small dense real-matrix kernel: Lyapunov solvers, spectra, symplectic
//! eigenvalues and Schur complements.
//!
//! Quadratures are always ordered `(x₁, y₁, …, xₙ, yₙ)`.

mod eigen;
mod io;
mod lyapunov;
mod schur;
mod symplectic;

use nalgebra::{Complex, DMatrix};

pub use eigen::{eigenvalues, min_eigenvalue_hermitian, min_eigenvalue_symmetric};
pub use io::{format_cm, parse_cm, read_cm, write_cm};
pub use lyapunov::{integrate_lyapunov, lyapunov_residual, solve_lyapunov};
pub use schur::{block_condition, schur_steered};
pub use symplectic::{symplectic_eigenvalues, SymplecticForm};

use crate::error::LinalgError;
use crate::tol;

/// Dense real matrix; nalgebra's column-major storage.
pub type Matrix = DMatrix<f64>;

/// Expands mode indices into quadrature indices `[2m, 2m+1, …]`.
pub fn quadrature_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect()
}

/// Sub-matrix picking `rows` and `cols` in the given order.
pub fn select(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn ensure_finite(m: &Matrix) -> Result<(), LinalgError> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(LinalgError::NonFinite)
    }
}

pub fn ensure_square(m: &Matrix) -> Result<usize, LinalgError> {
    if m.nrows() == m.ncols() && m.nrows() > 0 {
        Ok(m.nrows())
    } else {
        Err(LinalgError::Dimension(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// Fails with `NotSymmetric` when `max |M - Mᵀ| > SYMMETRY_REL · max(1, max |M|)`.
pub fn ensure_symmetric(m: &Matrix) -> Result<(), LinalgError> {
    ensure_square(m)?;
    let asym = max_abs(&(m - m.transpose()));
    if asym > tol::SYMMETRY_REL * max_abs(m).max(1.0) {
        Err(LinalgError::NotSymmetric(asym))
    } else {
        Ok(())
    }
}

/// Smallest eigenvalue of `σ + iΩ/2` for a covariance matrix in vacuum = I/2 units.
///
/// Non-negative exactly when σ obeys the uncertainty principle.
pub fn heisenberg_margin(sigma: &Matrix) -> Result<f64, LinalgError> {
    let dim = ensure_square(sigma)?;
    if dim % 2 != 0 {
        return Err(LinalgError::Dimension(format!(
            "covariance dimension {dim} is odd"
        )));
    }
    let omega = SymplecticForm::new(dim / 2).into_matrix();
    let h = DMatrix::from_fn(dim, dim, |i, j| {
        Complex::new(sigma[(i, j)], 0.5 * omega[(i, j)])
    });
    min_eigenvalue_hermitian(&h)
}
