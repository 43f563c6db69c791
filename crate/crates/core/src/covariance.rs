use crate::error::{LinalgError, Result};
use crate::linalg::{self, Matrix};

/// Normalisation of a covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// ħ = 1 with vacuum σ = I/2; what the Lyapunov pipeline produces.
    #[default]
    VacuumHalf,
    /// Vacuum σ = I; the units the steering measure is defined in.
    VacuumUnit,
}

/// Symmetric `2n × 2n` covariance matrix in `(x₁, y₁, …, xₙ, yₙ)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    matrix: Matrix,
    convention: Convention,
}

impl CovarianceMatrix {
    /// Validates shape, finiteness and symmetry; the stored matrix is symmetrised.
    pub fn new(matrix: Matrix, convention: Convention) -> Result<Self> {
        linalg::ensure_square(&matrix)?;
        if !matrix.nrows().is_multiple_of(2) {
            return Err(LinalgError::Dimension(format!(
                "covariance dimension {} is odd",
                matrix.nrows()
            ))
            .into());
        }
        linalg::ensure_finite(&matrix)?;
        linalg::ensure_symmetric(&matrix)?;
        Ok(Self {
            matrix: linalg::symmetrize(&matrix),
            convention,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// The matrix expressed with vacuum = I.
    pub fn vacuum_unit(&self) -> Matrix {
        match self.convention {
            Convention::VacuumHalf => &self.matrix * 2.0,
            Convention::VacuumUnit => self.matrix.clone(),
        }
    }

    /// The matrix expressed with vacuum = I/2.
    pub fn vacuum_half(&self) -> Matrix {
        match self.convention {
            Convention::VacuumHalf => self.matrix.clone(),
            Convention::VacuumUnit => &self.matrix * 0.5,
        }
    }

    /// Same state re-expressed in another convention.
    pub fn to_convention(&self, convention: Convention) -> Self {
        let matrix = match convention {
            Convention::VacuumHalf => self.vacuum_half(),
            Convention::VacuumUnit => self.vacuum_unit(),
        };
        Self { matrix, convention }
    }

    /// `min eig(σ + iΩ/2)` with σ in vacuum = I/2 units; negative means unphysical.
    pub fn physicality_margin(&self) -> Result<f64> {
        Ok(linalg::heisenberg_margin(&self.vacuum_half())?)
    }

    /// Symplectic spectrum in vacuum = I units (every value ≥ 1 for a physical state).
    pub fn symplectic_spectrum(&self) -> Result<Vec<f64>> {
        Ok(linalg::symplectic_eigenvalues(
            &self.vacuum_unit(),
            self.n_modes(),
        )?)
    }

    /// Reduced state on `modes`, in the given order.
    pub fn reduce(&self, modes: &[usize]) -> Result<Self> {
        if let Some(bad) = modes.iter().find(|&&m| m >= self.n_modes()) {
            return Err(LinalgError::Dimension(format!("mode {bad} out of range")).into());
        }
        let idx = linalg::quadrature_indices(modes);
        Ok(Self {
            matrix: linalg::select(&self.matrix, &idx, &idx),
            convention: self.convention,
        })
    }
}
