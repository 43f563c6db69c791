//! Squeezing-parameter sweeps, steering windows and the sweep CSV format.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Model, NoiseConvention, PhysicalParams};
use crate::parallel::{map_ordered, Execution};
use crate::steering::{
    steering_matrix, steering_matrix_unchecked, MonogamyReport, SteeringClass, SteeringMatrix,
    DIRECTIONS,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Model parameters; `r` is overridden by the grid.
    pub physical: PhysicalParams,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub noise_convention: NoiseConvention,
    pub output_path: PathBuf,
}

impl Default for SweepConfig {
    /// r ∈ [0, 2] on 401 points.
    fn default() -> Self {
        Self {
            physical: PhysicalParams::default(),
            r_min: 0.0,
            r_max: 2.0,
            steps: 401,
            noise_convention: NoiseConvention::Physical,
            output_path: PathBuf::from("sweep.csv"),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min >= 0.0 && self.r_max > self.r_min && self.r_max.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "need 0 <= r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        self.physical.validate().map(|_| ())
    }

    /// Uniform grid; the last point is exactly `r_max`.
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.r_max - self.r_min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.r_max
                } else {
                    self.r_min + i as f64 * h
                }
            })
            .collect()
    }
}

/// The four bipartitions whose steering direction is classified per row.
pub const CLASS_COLUMNS: [&str; 4] = ["class_ab", "class_ab_c", "class_ac_b", "class_bc_a"];

/// (X→Y, Y→X) steering columns for each entry of [`CLASS_COLUMNS`].
const CLASS_PAIRS: [(usize, usize); 4] = [(0, 1), (6, 7), (8, 9), (10, 11)];

pub const RESIDUAL_COLUMNS: [&str; 6] = [
    "res_col_a",
    "res_col_b",
    "res_col_c",
    "res_dist_a",
    "res_dist_b",
    "res_dist_c",
];

/// Full CSV header, in order.
pub fn columns() -> Vec<&'static str> {
    let mut cols = vec!["r"];
    cols.extend(DIRECTIONS.iter().map(|(n, _, _)| *n));
    cols.extend(RESIDUAL_COLUMNS);
    cols.push("genuine");
    cols.extend(CLASS_COLUMNS);
    cols.push("status");
    cols
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    /// Steering values in [`DIRECTIONS`] order (nats).
    pub steering: [f64; 12],
    /// Residuals in [`RESIDUAL_COLUMNS`] order (nats).
    pub residuals: [f64; 6],
    pub genuine: bool,
    /// Classes in [`CLASS_COLUMNS`] order.
    pub classes: [SteeringClass; 4],
    /// `"ok"` or the error kind that stopped this grid point.
    pub status: String,
}

impl SweepRow {
    pub fn from_steering(r: f64, g: SteeringMatrix) -> Self {
        let rep = MonogamyReport::from_matrix(g);
        let mut residuals = [0.0; 6];
        residuals[..3].copy_from_slice(&rep.collective_to);
        residuals[3..].copy_from_slice(&rep.to_collective);
        let classes =
            CLASS_PAIRS.map(|(xy, yx)| SteeringClass::from_values(g.values[xy], g.values[yx]));
        Self {
            r,
            steering: g.values,
            residuals,
            genuine: rep.genuine_tripartite,
            classes,
            status: "ok".into(),
        }
    }

    pub fn failed(r: f64, err: &Error) -> Self {
        Self {
            r,
            steering: [f64::NAN; 12],
            residuals: [f64::NAN; 6],
            genuine: false,
            classes: [SteeringClass::NoWay; 4],
            status: err.kind().into(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    /// Numeric column by name (`r`, steering, residual or `genuine`).
    pub fn value(&self, column: &str) -> Option<f64> {
        if column == "r" {
            return Some(self.r);
        }
        if column == "genuine" {
            return Some(if self.genuine { 1.0 } else { 0.0 });
        }
        if let Some(i) = DIRECTIONS.iter().position(|(n, _, _)| *n == column) {
            return Some(self.steering[i]);
        }
        RESIDUAL_COLUMNS
            .iter()
            .position(|n| *n == column)
            .map(|i| self.residuals[i])
    }

    pub fn class(&self, column: &str) -> Option<SteeringClass> {
        CLASS_COLUMNS
            .iter()
            .position(|n| *n == column)
            .map(|i| self.classes[i])
    }
}

/// Evaluates one grid point.
pub fn evaluate_point(model: &Model, r: f64) -> Result<SweepRow> {
    let cm = model.with_squeezing(r).steady_state()?;
    let g = match model.convention {
        NoiseConvention::Physical => steering_matrix(&cm)?,
        NoiseConvention::PaperLiteral => steering_matrix_unchecked(&cm)?,
    };
    Ok(SweepRow::from_steering(r, g))
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    run_sweep_with(cfg, Execution::default())
}

/// Rows come back in ascending-r order and are identical for every execution mode.
pub fn run_sweep_with(cfg: &SweepConfig, exec: Execution) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let model = Model::new(&cfg.physical, cfg.noise_convention)?;
    let grid = cfg.grid();
    Ok(map_ordered(&grid, exec, |&r| {
        evaluate_point(&model, r).unwrap_or_else(|e| {
            log::warn!("r = {r}: {e}");
            SweepRow::failed(r, &e)
        })
    }))
}

/// Row predicates for [`find_windows`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    GenuineTripartite,
    OneWay(String),
    TwoWay(String),
    NoWay(String),
    Positive(String),
}

fn class_column(arg: &str) -> Result<String> {
    let name = if arg.starts_with("class_") {
        arg.to_string()
    } else {
        format!("class_{arg}")
    };
    if CLASS_COLUMNS.contains(&name.as_str()) {
        Ok(name)
    } else {
        Err(Error::UnknownColumn(arg.to_string()))
    }
}

impl FromStr for Predicate {
    type Err = Error;

    /// `genuine_tripartite`, `one_way(ab_c)`, `two_way(ab)`, `no_way(bc_a)`,
    /// `positive(g_a_b)`; `name:arg` is accepted as well.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = if let Some(open) = s.find('(') {
            let arg = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownPredicate(s.to_string()))?;
            (&s[..open], Some(arg.trim()))
        } else if let Some((n, a)) = s.split_once(':') {
            (n, Some(a.trim()))
        } else {
            (s, None)
        };
        match (name.trim(), arg) {
            ("genuine_tripartite" | "genuine", None) => Ok(Self::GenuineTripartite),
            ("one_way", Some(a)) => Ok(Self::OneWay(class_column(a)?)),
            ("two_way", Some(a)) => Ok(Self::TwoWay(class_column(a)?)),
            ("no_way", Some(a)) => Ok(Self::NoWay(class_column(a)?)),
            ("positive", Some(a)) => {
                let known = columns().contains(&a) && a != "status" && !a.starts_with("class_");
                if known {
                    Ok(Self::Positive(a.to_string()))
                } else {
                    Err(Error::UnknownColumn(a.to_string()))
                }
            }
            _ => Err(Error::UnknownPredicate(s.to_string())),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = |c: &str| c.trim_start_matches("class_").to_string();
        match self {
            Self::GenuineTripartite => write!(f, "genuine_tripartite"),
            Self::OneWay(c) => write!(f, "one_way({})", short(c)),
            Self::TwoWay(c) => write!(f, "two_way({})", short(c)),
            Self::NoWay(c) => write!(f, "no_way({})", short(c)),
            Self::Positive(c) => write!(f, "positive({c})"),
        }
    }
}

impl Predicate {
    /// Failed rows never satisfy a predicate.
    pub fn holds(&self, row: &SweepRow) -> Result<bool> {
        if !row.is_ok() {
            return Ok(false);
        }
        let class = |c: &str| {
            row.class(c)
                .ok_or_else(|| Error::UnknownColumn(c.to_string()))
        };
        Ok(match self {
            Self::GenuineTripartite => row.genuine,
            Self::OneWay(c) => class(c)?.is_one_way(),
            Self::TwoWay(c) => class(c)? == SteeringClass::TwoWay,
            Self::NoWay(c) => class(c)? == SteeringClass::NoWay,
            Self::Positive(c) => {
                let v = row
                    .value(c)
                    .ok_or_else(|| Error::UnknownColumn(c.clone()))?;
                v > crate::tol::STEERING_ZERO
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub quantity: String,
    /// Closed `[r_lo, r_hi]` grid intervals, sorted and disjoint.
    pub intervals: Vec<(f64, f64)>,
}

/// Maximal runs of consecutive rows on which `predicate` holds.
pub fn find_windows(rows: &[SweepRow], predicate: &Predicate) -> Result<Window> {
    if rows.is_empty() {
        return Err(Error::InvalidParams("no sweep rows".into()));
    }
    if rows.windows(2).any(|w| !(w[0].r < w[1].r)) {
        return Err(Error::InvalidParams("rows are not sorted by r".into()));
    }
    let mut intervals = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = rows[0].r;
    for row in rows {
        if predicate.holds(row)? {
            start.get_or_insert(row.r);
            last = row.r;
        } else if let Some(lo) = start.take() {
            intervals.push((lo, last));
        }
    }
    if let Some(lo) = start {
        intervals.push((lo, last));
    }
    Ok(Window {
        quantity: predicate.to_string(),
        intervals,
    })
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV text: header plus one LF-terminated line per row, 17 significant digits.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let mut out = columns().join(",");
    out.push('\n');
    for row in rows {
        let mut fields = vec![num(row.r)];
        fields.extend(row.steering.iter().map(|&v| num(v)));
        fields.extend(row.residuals.iter().map(|&v| num(v)));
        fields.push(if row.genuine { "1" } else { "0" }.into());
        fields.extend(row.classes.iter().map(|c| c.label().to_string()));
        fields.push(row.status.clone());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    fs::write(path, format_csv(rows)).map_err(|e| Error::io(path, e))
}

pub fn parse_csv(text: &str, origin: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    let want = columns().join(",");
    match lines.next() {
        Some((_, header)) if header.trim_end() == want => {}
        _ => return Err(Error::parse(origin, 1, "unexpected CSV header")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.trim_end().split(',').collect();
        if f.len() != 25 {
            return Err(Error::parse(
                origin,
                no,
                format!("expected 25 fields, found {}", f.len()),
            ));
        }
        let float = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::parse(origin, no, format!("bad number `{s}`")))
        };
        let mut steering = [0.0; 12];
        for (k, slot) in steering.iter_mut().enumerate() {
            *slot = float(f[1 + k])?;
        }
        let mut residuals = [0.0; 6];
        for (k, slot) in residuals.iter_mut().enumerate() {
            *slot = float(f[13 + k])?;
        }
        let genuine = match f[19] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::parse(
                    origin,
                    no,
                    format!("bad genuine flag `{other}`"),
                ))
            }
        };
        let mut classes = [SteeringClass::NoWay; 4];
        for (k, slot) in classes.iter_mut().enumerate() {
            *slot = SteeringClass::from_label(f[20 + k])
                .ok_or_else(|| Error::parse(origin, no, format!("bad class `{}`", f[20 + k])))?;
        }
        rows.push(SweepRow {
            r: float(f[0])?,
            steering,
            residuals,
            genuine,
            classes,
            status: f[24].to_string(),
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, &path.display().to_string())
}
