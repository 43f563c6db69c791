//! Linearised two-cavity optomechanics in the red-sideband, rotating-wave
//! regime: laboratory parameters → drift `K`, diffusion `N`, steady-state CM.
//!
//! Mode order is (A = cavity 1, B = cavity 2, C = mechanics). Physical
//! constants are CODATA 2018.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::covariance::{Convention, CovarianceMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::tol;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054571817e-34;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380649e-23;

/// Laboratory-level inputs, SI units, angular frequencies in rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    /// Cavity length (m), shared by both cavities.
    pub l: f64,
    /// Optical decay rate κ (rad/s), shared by both cavities.
    pub kappa: f64,
    pub omega_c: f64,
    pub omega_l: f64,
    /// Input laser powers (W).
    pub power_1: f64,
    pub power_2: f64,
    /// Effective mirror mass (kg).
    pub mu: f64,
    pub omega_m: f64,
    /// Damping ratio γ_m / κ.
    pub alpha: f64,
    /// Mean thermal phonon number; takes precedence over `temperature`.
    pub n_bar: Option<f64>,
    /// Mechanical bath temperature (K).
    pub temperature: Option<f64>,
    /// Two-mode squeezing parameter of the injected light.
    pub r: f64,
}

impl Default for PhysicalParams {
    /// Two 25 mm cavities with κ = 2π·215 kHz, a 947 kHz mirror, 400 mW / 4 mW drive.
    ///
    /// The mass is 145e-9 kg; see the README for why.
    fn default() -> Self {
        Self {
            l: 25e-3,
            kappa: TAU * 215e3,
            omega_c: TAU * 5.26e14,
            omega_l: TAU * 2.82e14,
            power_1: 0.4,
            power_2: 0.004,
            mu: 145e-9,
            omega_m: TAU * 947e3,
            alpha: 0.05,
            n_bar: Some(1e-4),
            temperature: None,
            r: 0.85,
        }
    }
}

impl PhysicalParams {
    /// Checks the hard invariants and returns soft warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let positive = [
            ("l", self.l),
            ("kappa", self.kappa),
            ("omega_c", self.omega_c),
            ("omega_L", self.omega_l),
            ("mu", self.mu),
            ("omega_m", self.omega_m),
            ("alpha", self.alpha),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        let non_negative = [
            ("power_1", Some(self.power_1)),
            ("power_2", Some(self.power_2)),
            ("r", Some(self.r)),
            ("n_bar", self.n_bar),
            ("temperature", self.temperature),
        ];
        for (name, v) in non_negative {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "{name} must be >= 0, got {v}"
                    )));
                }
            }
        }
        if self.n_bar.is_none() && self.temperature.is_none() {
            return Err(Error::InvalidParams(
                "either n_bar or temperature is required".into(),
            ));
        }

        let mut warnings = Vec::new();
        if self.n_bar.is_some() && self.temperature.is_some() {
            warnings.push("both n_bar and temperature given; using n_bar".to_string());
        }
        if !self.resolved_sideband() {
            warnings.push(format!(
                "kappa/omega_m = {:.3} >= 1: outside the resolved-sideband regime, RWA model not valid",
                self.kappa / self.omega_m
            ));
        }
        Ok(warnings)
    }

    /// κ/ω_m < 1.
    pub fn resolved_sideband(&self) -> bool {
        self.kappa / self.omega_m < 1.0
    }

    /// Mean phonon number, from `n_bar` or from the Bose–Einstein occupation at `temperature`.
    pub fn occupation(&self) -> f64 {
        match (self.n_bar, self.temperature) {
            (Some(n), _) => n,
            (None, Some(t)) if t > 0.0 => 1.0 / ((HBAR * self.omega_m / (K_B * t)).exp_m1()),
            _ => 0.0,
        }
    }
}

/// Quantities derived from [`PhysicalParams`] at effective detuning Δ′ = -ω_m.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedParams {
    /// Drive strengths ε_j = √(2κ℘_j / ħω_L) (rad/s).
    pub eps_1: f64,
    pub eps_2: f64,
    /// Single-photon coupling χ = (ω_c / l) √(ħ / μω_m) (rad/s).
    pub chi: f64,
    /// Intracavity amplitudes |⟨a_j⟩| = 2ε_j / √(4ω_m² + κ²).
    pub amp_1: f64,
    pub amp_2: f64,
    /// Effective couplings χ̄_j = χ |⟨a_j⟩| (rad/s).
    pub chibar_1: f64,
    pub chibar_2: f64,
    /// Cooperativities C_j = 4χ̄_j² / (γ_m κ).
    pub coop_1: f64,
    pub coop_2: f64,
    pub gamma_m: f64,
    /// Mechanical quality factor ω_m / γ_m.
    pub quality: f64,
}

pub fn derive_params(p: &PhysicalParams) -> DerivedParams {
    let drive = |power: f64| (2.0 * p.kappa * power / (HBAR * p.omega_l)).sqrt();
    let amplitude = |eps: f64| 2.0 * eps / (4.0 * p.omega_m.powi(2) + p.kappa.powi(2)).sqrt();
    let chi = (p.omega_c / p.l) * (HBAR / (p.mu * p.omega_m)).sqrt();
    let gamma_m = p.alpha * p.kappa;

    let (eps_1, eps_2) = (drive(p.power_1), drive(p.power_2));
    let (amp_1, amp_2) = (amplitude(eps_1), amplitude(eps_2));
    let (chibar_1, chibar_2) = (chi * amp_1, chi * amp_2);
    let coop = |chibar: f64| 4.0 * chibar * chibar / (gamma_m * p.kappa);

    DerivedParams {
        eps_1,
        eps_2,
        chi,
        amp_1,
        amp_2,
        chibar_1,
        chibar_2,
        coop_1: coop(chibar_1),
        coop_2: coop(chibar_2),
        gamma_m,
        quality: p.omega_m / gamma_m,
    }
}

/// Expanded closed form `8ω_c²℘ / (γ_m μ ω_m ω_L l² [(κ/2)² + ω_m²])`.
pub fn cooperativity_closed_form(p: &PhysicalParams, power: f64) -> f64 {
    let gamma_m = p.alpha * p.kappa;
    8.0 * p.omega_c.powi(2) * power
        / (gamma_m
            * p.mu
            * p.omega_m
            * p.omega_l
            * p.l.powi(2)
            * ((p.kappa / 2.0).powi(2) + p.omega_m.powi(2)))
}

/// Drift matrix `K = [[K_κ, K_C], [-K_Cᵀ, K_α]]`.
///
/// The mechanics couples to cavity 1 with `-(κ/2)√(αC₁)` and to cavity 2 with
/// `+(κ/2)√(αC₂)` on matching quadratures.
pub fn build_drift(d: &DerivedParams, kappa: f64, alpha: f64) -> Matrix {
    let g1 = 0.5 * kappa * (alpha * d.coop_1).sqrt();
    let g2 = 0.5 * kappa * (alpha * d.coop_2).sqrt();
    let mut k = Matrix::zeros(6, 6);
    for i in 0..4 {
        k[(i, i)] = -0.5 * kappa;
    }
    for i in 4..6 {
        k[(i, i)] = -0.5 * alpha * kappa;
    }
    for q in 0..2 {
        let mech = 4 + q;
        // -K_Cᵀ block (mechanical rows)
        k[(mech, q)] = -g1;
        k[(mech, 2 + q)] = g2;
        // K_C block (optical rows)
        k[(q, mech)] = g1;
        k[(2 + q, mech)] = -g2;
    }
    k
}

/// Which optical-noise block assignment to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseConvention {
    /// cosh on the diagonal, sinh on the cross block: vacuum noise at r = 0.
    #[default]
    Physical,
    /// sinh on the diagonal, cosh on the cross block, as printed in the source model.
    PaperLiteral,
}

impl FromStr for NoiseConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "physical" => Ok(Self::Physical),
            "paper-literal" | "paper_literal" => Ok(Self::PaperLiteral),
            other => Err(Error::InvalidParams(format!(
                "unknown noise convention `{other}` (expected physical or paper-literal)"
            ))),
        }
    }
}

impl fmt::Display for NoiseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Physical => "physical",
            Self::PaperLiteral => "paper-literal",
        })
    }
}

/// Diffusion matrix `N = N_κ ⊕ N_α`.
pub fn build_noise(r: f64, n_bar: f64, kappa: f64, alpha: f64, conv: NoiseConvention) -> Matrix {
    let (cosh, sinh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let (diag, cross) = match conv {
        NoiseConvention::Physical => (cosh, sinh),
        NoiseConvention::PaperLiteral => (sinh, cosh),
    };
    let half_k = 0.5 * kappa;
    let mut n = Matrix::zeros(6, 6);
    for i in 0..4 {
        n[(i, i)] = half_k * diag;
    }
    // cross block diag(1, -1) between (x_A, x_B) and (y_A, y_B)
    n[(0, 2)] = half_k * cross;
    n[(2, 0)] = half_k * cross;
    n[(1, 3)] = -half_k * cross;
    n[(3, 1)] = -half_k * cross;
    let mech = 0.5 * alpha * kappa * (2.0 * n_bar + 1.0);
    n[(4, 4)] = mech;
    n[(5, 5)] = mech;
    n
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub max_real_part: f64,
}

pub fn check_stability(k: &Matrix) -> Result<StabilityReport> {
    let max_real_part = linalg::eigenvalues(k)?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(StabilityReport {
        stable: max_real_part < 0.0,
        max_real_part,
    })
}

/// Fully assembled linear model for one parameter set.
#[derive(Debug, Clone)]
pub struct Model {
    pub params: PhysicalParams,
    pub derived: DerivedParams,
    pub convention: NoiseConvention,
    pub drift: Matrix,
    pub noise: Matrix,
}

impl Model {
    pub fn new(params: &PhysicalParams, convention: NoiseConvention) -> Result<Self> {
        for w in params.validate()? {
            log::warn!("{w}");
        }
        let derived = derive_params(params);
        let drift = build_drift(&derived, params.kappa, params.alpha);
        let noise = build_noise(
            params.r,
            params.occupation(),
            params.kappa,
            params.alpha,
            convention,
        );
        Ok(Self {
            params: params.clone(),
            derived,
            convention,
            drift,
            noise,
        })
    }

    /// Same model with a different squeezing parameter (drift is unchanged).
    pub fn with_squeezing(&self, r: f64) -> Self {
        let mut m = self.clone();
        m.params.r = r;
        m.noise = build_noise(
            r,
            self.params.occupation(),
            self.params.kappa,
            self.params.alpha,
            self.convention,
        );
        m
    }

    /// Solves the Lyapunov equation; the physicality check only applies to the Physical convention.
    pub fn steady_state(&self) -> Result<CovarianceMatrix> {
        let sigma = linalg::solve_lyapunov(&self.drift, &self.noise)?;
        let cm = CovarianceMatrix::new(sigma, Convention::VacuumHalf)?;
        if self.convention == NoiseConvention::Physical {
            let margin = cm.physicality_margin()?;
            if margin < -tol::PHYSICALITY_EPS {
                return Err(Error::Unphysical { margin });
            }
        }
        Ok(cm)
    }

    /// Relative Lyapunov residual `‖Kσ + σKᵀ + N‖_F / ‖N‖_F` of a candidate σ.
    pub fn relative_residual(&self, sigma: &Matrix) -> f64 {
        linalg::lyapunov_residual(&self.drift, &self.noise, sigma) / self.noise.norm()
    }
}

/// Steady-state covariance matrix (vacuum = I/2) for `p`.
pub fn steady_state_cm(p: &PhysicalParams, conv: NoiseConvention) -> Result<CovarianceMatrix> {
    Model::new(p, conv)?.steady_state()
}
