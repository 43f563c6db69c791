#![allow(dead_code)]

use nalgebra::DMatrix;
use optosteer::linalg::{eigenvalues, Matrix};
use rand::Rng;

/// Random `dim × dim` Hurwitz matrix with spectral abscissa at most `-margin`,
/// and a random PSD source term.
pub fn random_stable_system<R: Rng + ?Sized>(
    dim: usize,
    margin: f64,
    rng: &mut R,
) -> (Matrix, Matrix) {
    let m = DMatrix::from_fn(dim, dim, |_, _| rng.random::<f64>() * 2.0 - 1.0);
    let shift = eigenvalues(&m)
        .unwrap()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let k = m - DMatrix::identity(dim, dim) * (shift + margin);
    let b = DMatrix::from_fn(dim, dim, |_, _| rng.random::<f64>() * 2.0 - 1.0);
    let n = &b * b.transpose();
    (k, n)
}

/// Frobenius norm of `a - b`.
pub fn frob_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).norm()
}

/// Random symplectic matrix on `n_modes` modes built from local squeezers,
/// phase rotations and nearest-neighbour beam splitters.
pub fn random_symplectic<R: Rng + ?Sized>(n_modes: usize, max_sq: f64, rng: &mut R) -> Matrix {
    let dim = 2 * n_modes;
    let mut s = DMatrix::identity(dim, dim);
    for _ in 0..3 {
        for j in 0..n_modes {
            let th = rng.random::<f64>() * std::f64::consts::TAU;
            let r = (rng.random::<f64>() * 2.0 - 1.0) * max_sq;
            let mut g = DMatrix::identity(dim, dim);
            let (c, sn) = (th.cos(), th.sin());
            g[(2 * j, 2 * j)] = c * (-r).exp();
            g[(2 * j, 2 * j + 1)] = -sn * r.exp();
            g[(2 * j + 1, 2 * j)] = sn * (-r).exp();
            g[(2 * j + 1, 2 * j + 1)] = c * r.exp();
            s = g * s;
        }
        for j in 0..n_modes.saturating_sub(1) {
            let th = rng.random::<f64>() * std::f64::consts::PI;
            let (c, sn) = (th.cos(), th.sin());
            let mut g = DMatrix::identity(dim, dim);
            for q in 0..2 {
                let (a, b) = (2 * j + q, 2 * j + 2 + q);
                g[(a, a)] = c;
                g[(a, b)] = sn;
                g[(b, a)] = -sn;
                g[(b, b)] = c;
            }
            s = g * s;
        }
    }
    s
}
