//! Reference Gaussian states: vacuum, thermal, two-mode squeezed vacuum,
//! direct sums and random pure states built from random symplectic maps.
//!
//! All builders return matrices in the vacuum = I/2 convention.

use rand::Rng;

use crate::covariance::{Convention, CovarianceMatrix};
use crate::linalg::Matrix;

fn wrap(m: Matrix) -> CovarianceMatrix {
    CovarianceMatrix::new(m, Convention::VacuumHalf).expect("builder produced an invalid matrix")
}

pub fn vacuum(n_modes: usize) -> CovarianceMatrix {
    wrap(Matrix::identity(2 * n_modes, 2 * n_modes) * 0.5)
}

/// Single-mode thermal state with mean occupation `n_bar`.
pub fn thermal(n_bar: f64) -> CovarianceMatrix {
    wrap(Matrix::identity(2, 2) * (n_bar + 0.5))
}

/// Two-mode squeezed vacuum: diagonal `cosh 2r / 2`, cross `± sinh 2r / 2`.
pub fn tmsv(r: f64) -> CovarianceMatrix {
    let (c, s) = (0.5 * (2.0 * r).cosh(), 0.5 * (2.0 * r).sinh());
    wrap(Matrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ],
    ))
}

/// Block-diagonal direct sum of independent states.
pub fn direct_sum(parts: &[&CovarianceMatrix]) -> CovarianceMatrix {
    let dim: usize = parts.iter().map(|p| p.matrix().nrows()).sum();
    let mut m = Matrix::zeros(dim, dim);
    let mut at = 0;
    for p in parts {
        let block = p.vacuum_half();
        let d = block.nrows();
        m.view_mut((at, at), (d, d)).copy_from(&block);
        at += d;
    }
    wrap(m)
}

/// Phase rotation of mode `j` by `theta`.
fn phase(n_modes: usize, j: usize, theta: f64) -> Matrix {
    let mut s = Matrix::identity(2 * n_modes, 2 * n_modes);
    let (c, sn) = (theta.cos(), theta.sin());
    s[(2 * j, 2 * j)] = c;
    s[(2 * j, 2 * j + 1)] = sn;
    s[(2 * j + 1, 2 * j)] = -sn;
    s[(2 * j + 1, 2 * j + 1)] = c;
    s
}

/// Beam splitter mixing modes `i` and `j` with angle `theta`.
fn beam_splitter(n_modes: usize, i: usize, j: usize, theta: f64) -> Matrix {
    let mut s = Matrix::identity(2 * n_modes, 2 * n_modes);
    let (c, sn) = (theta.cos(), theta.sin());
    for q in 0..2 {
        let (a, b) = (2 * i + q, 2 * j + q);
        s[(a, a)] = c;
        s[(a, b)] = sn;
        s[(b, a)] = -sn;
        s[(b, b)] = c;
    }
    s
}

/// Random passive (orthogonal symplectic) transformation.
fn random_passive<R: Rng + ?Sized>(n_modes: usize, rng: &mut R) -> Matrix {
    let tau = std::f64::consts::TAU;
    let mut s = Matrix::identity(2 * n_modes, 2 * n_modes);
    for _ in 0..2 {
        for j in 0..n_modes {
            s = phase(n_modes, j, rng.random::<f64>() * tau) * s;
        }
        for i in 0..n_modes {
            for j in (i + 1)..n_modes {
                s = beam_splitter(n_modes, i, j, rng.random::<f64>() * tau) * s;
            }
        }
    }
    s
}

/// Random pure `n`-mode Gaussian state `S Sᵀ / 2` with
/// `S = O · ⊕ diag(e^{-r_j}, e^{r_j})`, squeezings drawn from `[0, max_squeezing]`.
pub fn random_pure<R: Rng + ?Sized>(
    n_modes: usize,
    max_squeezing: f64,
    rng: &mut R,
) -> CovarianceMatrix {
    let mut sq = Matrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        let r = rng.random::<f64>() * max_squeezing;
        sq[(2 * j, 2 * j)] = (-r).exp();
        sq[(2 * j + 1, 2 * j + 1)] = r.exp();
    }
    let s = random_passive(n_modes, rng) * sq;
    let m = &s * s.transpose() * 0.5;
    wrap(crate::linalg::symmetrize(&m))
}

/// Random mixed 3-mode state: a random 6-mode pure state with modes 3..6 traced out.
pub fn random_tripartite<R: Rng + ?Sized>(max_squeezing: f64, rng: &mut R) -> CovarianceMatrix {
    random_pure(6, max_squeezing, rng)
        .reduce(&[0, 1, 2])
        .expect("modes in range")
}
