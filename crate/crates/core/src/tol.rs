//! Numerical tolerances used across the crate.
//!
//! Every threshold that decides an error or a classification lives here so
//! the numbers can be audited in one place.

/// Eigenvalues of a drift matrix must satisfy `Re λ < -STABILITY_EPS`.
pub const STABILITY_EPS: f64 = 1e-12;

/// Target relative residual `‖Kσ + σKᵀ + N‖_F / ‖N‖_F` of the Lyapunov solver.
pub const LYAPUNOV_REL_RESIDUAL: f64 = 1e-10;

/// Upper bound on `dt · ‖K‖_F` accepted by the RK4 integrator.
pub const RK4_MAX_STEP_NORM: f64 = 0.1;

/// Relative symmetry tolerance, measured against the largest absolute entry.
pub const SYMMETRY_REL: f64 = 1e-10;

/// Hermiticity tolerance for complex matrices (relative to the largest entry).
pub const HERMITIAN_REL: f64 = 1e-12;

/// Smallest eigenvalue accepted as PSD, relative to the spectral scale `‖M‖_F`.
pub const PSD_REL: f64 = 1e-9;

/// Paired entries of `eig(-(M^{1/2}ΩM^{1/2})²)` must agree within `PAIRING_REL · ‖M‖_F²`.
pub const PAIRING_REL: f64 = 1e-8;

/// Negative `ν²` values above `-NEG_NU2_REL · ‖M‖_F²` are clipped to zero.
pub const NEG_NU2_REL: f64 = 1e-9;

/// Condition number beyond which the steering-party block counts as singular.
pub const MAX_BLOCK_CONDITION: f64 = 1e12;

/// Physicality margin `min eig(σ + iΩ/2)` accepted as non-negative.
pub const PHYSICALITY_EPS: f64 = 1e-9;

/// Steering values at or below this (nats) count as "no steering".
pub const STEERING_ZERO: f64 = 1e-9;

/// Iteration cap for the real Schur decomposition (0 would mean unbounded).
pub const SCHUR_MAX_ITER: usize = 10_000;

/// Deflation threshold of the Schur iteration. Plain machine epsilon stalls
/// on the highly degenerate spectra of `-(ΩM)²` for pure states.
pub const SCHUR_EPS: f64 = 4.0 * f64::EPSILON;
