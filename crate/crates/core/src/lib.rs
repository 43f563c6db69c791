//! Steady-state Gaussian EPR steering in a two-cavity optomechanical system
//! fed with two-mode squeezed light.
//!
//! The pipeline is: [`model::PhysicalParams`] → drift and diffusion matrices
//! → Lyapunov steady state ([`linalg::solve_lyapunov`]) → 3-mode covariance
//! matrix → steering values, monogamy residuals and direction classes
//! ([`steering`]) → sweeps over the squeezing parameter ([`sweep`]).

pub mod config;
pub mod covariance;
pub mod error;
pub mod linalg;
pub mod model;
pub mod parallel;
pub mod plot;
pub mod states;
pub mod steering;
pub mod sweep;
pub mod tol;

pub use covariance::{Convention, CovarianceMatrix};
pub use error::{Error, LinalgError, Result};
pub use model::{steady_state_cm, Model, NoiseConvention, PhysicalParams};
pub use steering::{gaussian_steering, monogamy_report, steering_matrix, Partition, SteeringClass};
pub use sweep::{run_sweep, SweepConfig, SweepRow};
