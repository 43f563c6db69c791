use super::{ensure_finite, ensure_symmetric, quadrature_indices, select, symmetrize, Matrix};
use crate::error::LinalgError;
use crate::tol;

/// 2-norm condition number of a square block (∞ when singular).
pub fn block_condition(x: &Matrix) -> f64 {
    let sv = x.clone().singular_values();
    let hi = sv.max();
    let lo = sv.min();
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

/// Schur complement `Y - Zᵀ X⁻¹ Z` of the steering party's block.
///
/// `sigma` may hold more modes than the partition names; only the modes in
/// `steering` (X) and `steered` (Y) enter, in the given order.
pub fn schur_steered(
    sigma: &Matrix,
    steering: &[usize],
    steered: &[usize],
) -> Result<Matrix, LinalgError> {
    ensure_symmetric(sigma)?;
    ensure_finite(sigma)?;
    let n_modes = sigma.nrows() / 2;
    if !sigma.nrows().is_multiple_of(2) {
        return Err(LinalgError::Dimension("odd covariance dimension".into()));
    }
    if let Some(bad) = steering.iter().chain(steered).find(|&&m| m >= n_modes) {
        return Err(LinalgError::Dimension(format!(
            "mode {bad} out of range for {n_modes} modes"
        )));
    }

    let xi = quadrature_indices(steering);
    let yi = quadrature_indices(steered);
    let y = select(sigma, &yi, &yi);
    if xi.is_empty() {
        return Ok(y);
    }
    let x = select(sigma, &xi, &xi);
    let z = select(sigma, &xi, &yi);

    let cond = block_condition(&x);
    if !(cond <= tol::MAX_BLOCK_CONDITION) {
        return Err(LinalgError::SingularXBlock(cond));
    }
    let xinv_z = x
        .lu()
        .solve(&z)
        .ok_or(LinalgError::SingularXBlock(f64::INFINITY))?;
    Ok(symmetrize(&(y - z.transpose() * xinv_z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmsv(r: f64) -> Matrix {
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        Matrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, s, 0.0, //
                0.0, c, 0.0, -s, //
                s, 0.0, c, 0.0, //
                0.0, -s, 0.0, c,
            ],
        )
    }

    #[test]
    fn uncorrelated_blocks_pass_through() {
        let mut sigma = Matrix::identity(4, 4);
        sigma[(2, 2)] = 3.0;
        sigma[(3, 3)] = 5.0;
        sigma[(2, 3)] = 1.0;
        sigma[(3, 2)] = 1.0;
        let m = schur_steered(&sigma, &[0], &[1]).unwrap();
        assert_eq!(m, select(&sigma, &[2, 3], &[2, 3]));
    }

    #[test]
    fn identity() {
        let m = schur_steered(&Matrix::identity(6, 6), &[0, 2], &[1]).unwrap();
        assert_eq!(m, Matrix::identity(2, 2));
    }

    #[test]
    fn tmsv_complement_is_scaled_identity() {
        let r: f64 = 0.5;
        let want = Matrix::identity(2, 2) / (2.0 * r).cosh();
        let m01 = schur_steered(&tmsv(r), &[0], &[1]).unwrap();
        let m10 = schur_steered(&tmsv(r), &[1], &[0]).unwrap();
        assert!((&m01 - &want).norm() < 1e-12);
        assert!((&m01 - &m10).norm() < 1e-10);
    }

    #[test]
    fn singular_block() {
        let mut sigma = Matrix::identity(4, 4);
        sigma[(0, 0)] = 0.0;
        assert!(matches!(
            schur_steered(&sigma, &[0], &[1]),
            Err(LinalgError::SingularXBlock(_))
        ));
    }

    #[test]
    fn mode_out_of_range() {
        assert!(matches!(
            schur_steered(&Matrix::identity(4, 4), &[0], &[2]),
            Err(LinalgError::Dimension(_))
        ));
    }
}
