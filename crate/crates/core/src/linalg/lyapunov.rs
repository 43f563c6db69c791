use nalgebra::{DMatrix, DVector};

use super::{eigenvalues, ensure_finite, ensure_square, symmetrize, Matrix};
use crate::error::LinalgError;
use crate::tol;

/// `‖Kσ + σKᵀ + N‖_F`.
pub fn lyapunov_residual(k: &Matrix, n: &Matrix, sigma: &Matrix) -> f64 {
    (k * sigma + sigma * k.transpose() + n).norm()
}

/// Solves `Kσ + σKᵀ + N = 0` for a Hurwitz-stable `K`.
///
/// The equation is vectorised as `(I ⊗ K + K ⊗ I) vec σ = -vec N` and solved
/// with a dense LU factorisation; the result is symmetrised before return.
pub fn solve_lyapunov(k: &Matrix, n: &Matrix) -> Result<Matrix, LinalgError> {
    let dim = ensure_square(k)?;
    if n.nrows() != dim || n.ncols() != dim {
        return Err(LinalgError::Dimension(format!(
            "K is {dim}x{dim} but N is {}x{}",
            n.nrows(),
            n.ncols()
        )));
    }
    ensure_finite(k)?;
    ensure_finite(n)?;

    let max_re = eigenvalues(k)?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_re >= -tol::STABILITY_EPS {
        return Err(LinalgError::NotStable {
            max_real_part: max_re,
        });
    }

    let eye = DMatrix::<f64>::identity(dim, dim);
    let system = eye.kronecker(k) + k.kronecker(&eye);
    let rhs = -DVector::from_column_slice(n.as_slice());

    let lu = system.lu();
    let pivots = lu.u().diagonal();
    let (lo, hi) = pivots.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), p| {
        (lo.min(p.abs()), hi.max(p.abs()))
    });
    if !(lo > hi * f64::EPSILON) {
        return Err(LinalgError::SingularSystem);
    }
    let x = lu.solve(&rhs).ok_or(LinalgError::SingularSystem)?;
    let sigma = Matrix::from_column_slice(dim, dim, x.as_slice());
    ensure_finite(&sigma).map_err(|_| LinalgError::SingularSystem)?;
    Ok(symmetrize(&sigma))
}

/// Integrates `dσ/dt = Kσ + σKᵀ + N` from `σ(0) = 0` with classical RK4.
///
/// Independent of [`solve_lyapunov`]; used to cross-check it. The step is
/// shortened so that an integer number of steps lands exactly on `t_final`.
pub fn integrate_lyapunov(
    k: &Matrix,
    n: &Matrix,
    t_final: f64,
    dt: f64,
) -> Result<Matrix, LinalgError> {
    let dim = ensure_square(k)?;
    if n.shape() != (dim, dim) {
        return Err(LinalgError::Dimension("K and N shapes differ".into()));
    }
    if !(dt > 0.0) || !(t_final >= 0.0) {
        return Err(LinalgError::Dimension(format!(
            "need dt > 0 and t_final >= 0 (dt = {dt}, t_final = {t_final})"
        )));
    }
    let guard = dt * k.norm();
    if guard > tol::RK4_MAX_STEP_NORM {
        return Err(LinalgError::StepTooLarge(guard));
    }

    let steps = (t_final / dt).ceil() as usize;
    let mut sigma = Matrix::zeros(dim, dim);
    if steps == 0 {
        return Ok(sigma);
    }
    let h = t_final / steps as f64;
    let kt = k.transpose();
    let rhs = |s: &Matrix| k * s + s * &kt + n;

    for _ in 0..steps {
        let k1 = rhs(&sigma);
        let k2 = rhs(&(&sigma + &k1 * (0.5 * h)));
        let k3 = rhs(&(&sigma + &k2 * (0.5 * h)));
        let k4 = rhs(&(&sigma + &k3 * h));
        sigma += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(sigma)
}
