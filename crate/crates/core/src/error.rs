use std::path::PathBuf;

use thiserror::Error;

/// Failures raised by the dense linear-algebra kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hurwitz-stable (max Re λ = {max_real_part:e})")]
    NotStable { max_real_part: f64 },
    #[error("Kronecker system for the Lyapunov equation is numerically singular")]
    SingularSystem,
    #[error("RK4 step too large: dt·‖K‖ = {0:e} exceeds the accuracy guard")]
    StepTooLarge(f64),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("symplectic spectrum does not pair up ({0})")]
    UnpairedSpectrum(String),
    #[error("steering-party block is singular (condition number {0:e})")]
    SingularXBlock(f64),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite entry in matrix")]
    NonFinite,
}

/// Crate-level error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("state is unphysical: min eig(σ + iΩ/2) = {margin:e}")]
    Unphysical { margin: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures that come from the numerics rather than from inputs or IO.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Linalg(LinalgError::Dimension(_)) => false,
            Error::Linalg(_) | Error::Unphysical { .. } => true,
            _ => false,
        }
    }

    /// Short machine-readable tag, used in the CSV `status` column.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Linalg(e) => match e {
                LinalgError::NotStable { .. } => "not_stable",
                LinalgError::SingularSystem => "singular_system",
                LinalgError::StepTooLarge(_) => "step_too_large",
                LinalgError::NoConvergence => "no_convergence",
                LinalgError::NotSymmetric(_) => "not_symmetric",
                LinalgError::NotPsd(_) => "not_psd",
                LinalgError::UnpairedSpectrum(_) => "unpaired_spectrum",
                LinalgError::SingularXBlock(_) => "singular_x_block",
                LinalgError::NotHermitian(_) => "not_hermitian",
                LinalgError::Dimension(_) => "dimension",
                LinalgError::NonFinite => "non_finite",
            },
            Error::InvalidParams(_) => "invalid_params",
            Error::Unphysical { .. } => "unphysical",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::UnknownPredicate(_) => "unknown_predicate",
            Error::UnknownColumn(_) => "unknown_column",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
