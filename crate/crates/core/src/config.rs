//! Flat `key = value` configuration files.
//!
//! Keys: `l, kappa, omega_c, omega_L, power_1, power_2, mu, omega_m, alpha,
//! n_bar, temperature, r, noise_convention`. Values are SI (angular frequencies
//! in rad/s). Missing keys keep their defaults; `#` starts a comment line.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{NoiseConvention, PhysicalParams};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub params: PhysicalParams,
    pub noise_convention: NoiseConvention,
}

pub fn parse_config(text: &str, origin: &str) -> Result<Config> {
    let mut cfg = Config::default();
    let mut saw_n_bar = false;
    let mut saw_temperature = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(origin, line_no, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());

        if key == "noise_convention" {
            cfg.noise_convention = value
                .parse()
                .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
            continue;
        }
        let v: f64 = value
            .parse()
            .map_err(|_| Error::parse(origin, line_no, format!("bad number `{value}`")))?;
        let p = &mut cfg.params;
        match key {
            "l" => p.l = v,
            "kappa" => p.kappa = v,
            "omega_c" => p.omega_c = v,
            "omega_L" => p.omega_l = v,
            "power_1" => p.power_1 = v,
            "power_2" => p.power_2 = v,
            "mu" => p.mu = v,
            "omega_m" => p.omega_m = v,
            "alpha" => p.alpha = v,
            "r" => p.r = v,
            "n_bar" => {
                p.n_bar = Some(v);
                saw_n_bar = true;
            }
            "temperature" => {
                p.temperature = Some(v);
                saw_temperature = true;
            }
            other => {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("unknown key `{other}`"),
                ));
            }
        }
    }
    if saw_temperature && !saw_n_bar {
        cfg.params.n_bar = None;
    }
    cfg.params
        .validate()
        .map_err(|e| Error::parse(origin, 0, e.to_string()))?;
    Ok(cfg)
}

pub fn read_config(path: &Path) -> Result<Config> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}
