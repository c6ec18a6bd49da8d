//! Hardware parameter files: `key = value` in SI units, one per line,
//! `#` comments and blank lines allowed. Unknown keys and malformed values
//! are reported with their line number.

use anyhow::{anyhow, Result};

use sdc_core::hardware::HardwareParams;

pub fn parse_params(text: &str) -> Result<HardwareParams> {
    let mut hp = HardwareParams::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {line_no}: expected `key = value`, got `{raw}`"))?;
        let key = key.trim();
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| anyhow!("line {line_no}: `{}` is not a number", value.trim()))?;
        match key {
            "quality_factor" => hp.quality_factor = value,
            "coil_volume" => hp.coil_volume = value,
            "resistance" => hp.resistance = value,
            "omega_i" => hp.omega_i = value,
            "temperature" => hp.temperature = value,
            "bandwidth" => hp.bandwidth = value,
            "mu0" => hp.mu0 = value,
            "gamma_i" => hp.gamma_i = value,
            other => return Err(anyhow!("line {line_no}: unknown key `{other}`")),
        }
    }
    Ok(hp)
}
