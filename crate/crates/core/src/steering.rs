//! Gaussian EPR steering between arbitrary mode bipartitions, CKW-type
//! monogamy residuals and steering-direction classification.
//!
//! All values are in nats. The measure is evaluated in vacuum = I units:
//! `G^{X→Y} = max(0, -Σ_{ν̄_j < 1} ln ν̄_j)` where `ν̄_j` are the symplectic
//! eigenvalues of the Schur complement of the X block.

use std::fmt;

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tol;

/// Ordered pair of disjoint mode sets: `steering` (X) steers `steered` (Y).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    steering: Vec<usize>,
    steered: Vec<usize>,
}

impl Partition {
    pub fn new(steering: impl Into<Vec<usize>>, steered: impl Into<Vec<usize>>) -> Result<Self> {
        let (steering, steered) = (steering.into(), steered.into());
        if steering.is_empty() || steered.is_empty() {
            return Err(Error::InvalidPartition(
                "both parties must be non-empty".into(),
            ));
        }
        let mut all: Vec<usize> = steering.iter().chain(&steered).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parties {steering:?} and {steered:?} overlap or repeat a mode"
            )));
        }
        Ok(Self { steering, steered })
    }

    pub fn steering(&self) -> &[usize] {
        &self.steering
    }

    pub fn steered(&self) -> &[usize] {
        &self.steered
    }

    /// The opposite direction Y → X.
    pub fn reversed(&self) -> Self {
        Self {
            steering: self.steered.clone(),
            steered: self.steering.clone(),
        }
    }

    fn check_against(&self, n_modes: usize) -> Result<()> {
        match self
            .steering
            .iter()
            .chain(&self.steered)
            .find(|&&m| m >= n_modes)
        {
            Some(m) => Err(Error::InvalidPartition(format!(
                "mode {m} out of range for a {n_modes}-mode state"
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |ms: &[usize]| ms.iter().map(|&m| mode_label(m)).collect::<String>();
        write!(f, "{}->{}", name(&self.steering), name(&self.steered))
    }
}

/// `A`, `B`, `C`, … for mode indices 0, 1, 2, …; `m<i>` past `Z`.
pub fn mode_label(m: usize) -> String {
    if m < 26 {
        char::from(b'A' + m as u8).to_string()
    } else {
        format!("m{m}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteeringValue {
    pub value: f64,
    pub direction: Partition,
    /// Symplectic eigenvalues of the steered party's Schur complement (vacuum = 1).
    pub nu_bar: Vec<f64>,
}

/// `max(0, -Σ_{ν < 1} ln ν)`.
pub fn measure_from_spectrum(nu_bar: &[f64]) -> f64 {
    let s: f64 = nu_bar.iter().filter(|&&v| v < 1.0).map(|v| -v.ln()).sum();
    s.max(0.0)
}

/// `G^{X→Y}` after checking that `cm` obeys the uncertainty principle.
pub fn gaussian_steering(cm: &CovarianceMatrix, part: &Partition) -> Result<SteeringValue> {
    let margin = cm.physicality_margin()?;
    if margin < -tol::PHYSICALITY_EPS {
        return Err(Error::Unphysical { margin });
    }
    gaussian_steering_unchecked(cm, part)
}

/// `G^{X→Y}` without the physicality precondition.
pub fn gaussian_steering_unchecked(
    cm: &CovarianceMatrix,
    part: &Partition,
) -> Result<SteeringValue> {
    part.check_against(cm.n_modes())?;
    let sigma = cm.vacuum_unit();
    let m = linalg::schur_steered(&sigma, part.steering(), part.steered())?;
    let nu_bar = linalg::symplectic_eigenvalues(&m, part.steered().len())?;
    Ok(SteeringValue {
        value: measure_from_spectrum(&nu_bar),
        direction: part.clone(),
        nu_bar,
    })
}

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;

/// The twelve directed steering quantities of a 3-mode state, in CSV column order.
pub const DIRECTIONS: [(&str, &[usize], &[usize]); 12] = [
    ("g_a_b", &[A], &[B]),
    ("g_b_a", &[B], &[A]),
    ("g_a_c", &[A], &[C]),
    ("g_c_a", &[C], &[A]),
    ("g_b_c", &[B], &[C]),
    ("g_c_b", &[C], &[B]),
    ("g_ab_c", &[A, B], &[C]),
    ("g_c_ab", &[C], &[A, B]),
    ("g_ac_b", &[A, C], &[B]),
    ("g_b_ac", &[B], &[A, C]),
    ("g_bc_a", &[B, C], &[A]),
    ("g_a_bc", &[A], &[B, C]),
];

/// All twelve directed values `G^{i→j}`, `G^{(ij)→k}`, `G^{k→(ij)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringMatrix {
    pub values: [f64; 12],
}

impl SteeringMatrix {
    /// Value for a direction, with each party given as a sorted mode list.
    pub fn get(&self, steering: &[usize], steered: &[usize]) -> Option<f64> {
        DIRECTIONS
            .iter()
            .position(|(_, x, y)| *x == steering && *y == steered)
            .map(|i| self.values[i])
    }

    pub fn by_name(&self, name: &str) -> Option<f64> {
        DIRECTIONS
            .iter()
            .position(|(n, _, _)| *n == name)
            .map(|i| self.values[i])
    }

    /// `G^{i→j}` for single modes.
    pub fn single(&self, i: usize, j: usize) -> f64 {
        self.get(&[i], &[j]).expect("distinct modes below 3")
    }

    /// `G^{(ij)→k}` where `{i, j, k} = {A, B, C}`.
    pub fn collective_to(&self, k: usize) -> f64 {
        let (i, j) = others(k);
        self.get(&[i, j], &[k]).expect("k below 3")
    }

    /// `G^{k→(ij)}`.
    pub fn collective_from(&self, k: usize) -> f64 {
        let (i, j) = others(k);
        self.get(&[k], &[i, j]).expect("k below 3")
    }
}

/// The two modes other than `k`, ascending.
pub fn others(k: usize) -> (usize, usize) {
    match k {
        A => (B, C),
        B => (A, C),
        C => (A, B),
        _ => panic!("mode {k} is not part of a tripartite state"),
    }
}

fn require_three(cm: &CovarianceMatrix) -> Result<()> {
    if cm.n_modes() == 3 {
        Ok(())
    } else {
        Err(Error::InvalidPartition(format!(
            "expected a 3-mode state, got {} modes",
            cm.n_modes()
        )))
    }
}

fn check_physical(cm: &CovarianceMatrix) -> Result<()> {
    let margin = cm.physicality_margin()?;
    if margin < -tol::PHYSICALITY_EPS {
        Err(Error::Unphysical { margin })
    } else {
        Ok(())
    }
}

pub fn steering_matrix(cm: &CovarianceMatrix) -> Result<SteeringMatrix> {
    check_physical(cm)?;
    steering_matrix_unchecked(cm)
}

pub fn steering_matrix_unchecked(cm: &CovarianceMatrix) -> Result<SteeringMatrix> {
    require_three(cm)?;
    let mut values = [0.0; 12];
    for (slot, (_, x, y)) in values.iter_mut().zip(DIRECTIONS.iter()) {
        let part = Partition::new(x.to_vec(), y.to_vec())?;
        *slot = gaussian_steering_unchecked(cm, &part)?.value;
    }
    Ok(SteeringMatrix { values })
}

/// Monogamy residuals of a tripartite state; index 0, 1, 2 = mode A, B, C.
#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyReport {
    pub steering: SteeringMatrix,
    /// `G^{(ij)→k} - G^{i→k} - G^{j→k}`.
    pub collective_to: [f64; 3],
    /// `G^{k→(ij)} - G^{k→i} - G^{k→j}`.
    pub to_collective: [f64; 3],
    /// All six collective values exceed the zero threshold.
    pub genuine_tripartite: bool,
}

impl MonogamyReport {
    pub fn from_matrix(g: SteeringMatrix) -> Self {
        let mut collective_to = [0.0; 3];
        let mut to_collective = [0.0; 3];
        for k in 0..3 {
            let (i, j) = others(k);
            collective_to[k] = g.collective_to(k) - g.single(i, k) - g.single(j, k);
            to_collective[k] = g.collective_from(k) - g.single(k, i) - g.single(k, j);
        }
        let genuine_tripartite = (0..3).all(|k| {
            g.collective_to(k) > tol::STEERING_ZERO && g.collective_from(k) > tol::STEERING_ZERO
        });
        Self {
            steering: g,
            collective_to,
            to_collective,
            genuine_tripartite,
        }
    }

    /// Residuals below `-STEERING_ZERO`, as human-readable descriptions.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 0..3 {
            let (i, j) = others(k);
            let (li, lj, lk) = (mode_label(i), mode_label(j), mode_label(k));
            if self.collective_to[k] < -tol::STEERING_ZERO {
                out.push(format!(
                    "G^({li}{lj})->{lk} residual {:e}",
                    self.collective_to[k]
                ));
            }
            if self.to_collective[k] < -tol::STEERING_ZERO {
                out.push(format!(
                    "G^{lk}->({li}{lj}) residual {:e}",
                    self.to_collective[k]
                ));
            }
        }
        out
    }

    pub fn min_residual(&self) -> f64 {
        self.collective_to
            .iter()
            .chain(&self.to_collective)
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn monogamy_report(cm: &CovarianceMatrix) -> Result<MonogamyReport> {
    Ok(MonogamyReport::from_matrix(steering_matrix(cm)?))
}

/// Residuals of the CKW-type inequalities for an m-mode state with single-mode parties.
///
/// Entry `k` is `(G^{rest→k} - Σ_j G^{j→k}, G^{k→rest} - Σ_j G^{k→j})`.
pub fn monogamy_residuals(cm: &CovarianceMatrix) -> Result<Vec<(f64, f64)>> {
    check_physical(cm)?;
    let n = cm.n_modes();
    if n < 2 {
        return Err(Error::InvalidPartition("need at least two modes".into()));
    }
    let g = |x: Vec<usize>, y: Vec<usize>| -> Result<f64> {
        Ok(gaussian_steering_unchecked(cm, &Partition::new(x, y)?)?.value)
    };
    (0..n)
        .map(|k| {
            let rest: Vec<usize> = (0..n).filter(|&j| j != k).collect();
            let mut into = g(rest.clone(), vec![k])?;
            let mut from = g(vec![k], rest.clone())?;
            for &j in &rest {
                into -= g(vec![j], vec![k])?;
                from -= g(vec![k], vec![j])?;
            }
            Ok((into, from))
        })
        .collect()
}

/// For each steered mode `k`, whether at most one of `G^{i→k}`, `G^{j→k}` is non-zero.
pub fn joint_exclusion_check(cm: &CovarianceMatrix) -> Result<[bool; 3]> {
    let g = steering_matrix(cm)?;
    Ok(joint_exclusion_from_matrix(&g))
}

pub fn joint_exclusion_from_matrix(g: &SteeringMatrix) -> [bool; 3] {
    std::array::from_fn(|k| {
        let (i, j) = others(k);
        g.single(i, k).min(g.single(j, k)) <= tol::STEERING_ZERO
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SteeringClass {
    TwoWay,
    OneWayXtoY,
    OneWayYtoX,
    NoWay,
}

impl SteeringClass {
    pub fn from_values(x_to_y: f64, y_to_x: f64) -> Self {
        match (x_to_y > tol::STEERING_ZERO, y_to_x > tol::STEERING_ZERO) {
            (true, true) => Self::TwoWay,
            (true, false) => Self::OneWayXtoY,
            (false, true) => Self::OneWayYtoX,
            (false, false) => Self::NoWay,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::TwoWay => "two_way",
            Self::OneWayXtoY => "one_way_xy",
            Self::OneWayYtoX => "one_way_yx",
            Self::NoWay => "no_way",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [
            Self::TwoWay,
            Self::OneWayXtoY,
            Self::OneWayYtoX,
            Self::NoWay,
        ]
        .into_iter()
        .find(|c| c.label() == s)
    }

    pub fn is_one_way(self) -> bool {
        matches!(self, Self::OneWayXtoY | Self::OneWayYtoX)
    }
}

impl fmt::Display for SteeringClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify(cm: &CovarianceMatrix, part: &Partition) -> Result<SteeringClass> {
    let xy = gaussian_steering(cm, part)?.value;
    let yx = gaussian_steering(cm, &part.reversed())?.value;
    Ok(SteeringClass::from_values(xy, yx))
}
