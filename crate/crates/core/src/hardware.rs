//! Spectrometer sensitivity: induced signal amplitude, Nyquist noise of the
//! receiving circuit, and the smallest ensemble that clears a target
//! signal-to-noise ratio.

use crate::constants::{BOLTZMANN, HBAR, MU_0, PROTON_GAMMA};
use crate::error::{Error, Result};

/// Receiver and sample parameters, all in SI units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HardwareParams {
    /// Quality factor of the resonance coil.
    pub quality_factor: f64,
    /// Coil volume, m³.
    pub coil_volume: f64,
    /// Circuit resistance, Ω.
    pub resistance: f64,
    /// Larmor angular frequency of spin I, rad/s.
    pub omega_i: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// Amplifier bandwidth, Hz.
    pub bandwidth: f64,
    /// Vacuum permeability, H/m.
    pub mu0: f64,
    /// Gyromagnetic ratio of spin I, rad s⁻¹ T⁻¹.
    pub gamma_i: f64,
}

/// Bench defaults: protons at 10 T in a 1 cm³, Q = 10³ coil read out over a
/// 50 Ω circuit with 10 kHz bandwidth at room temperature. These are
/// plausible working values, not measured ones.
impl Default for HardwareParams {
    fn default() -> Self {
        Self {
            quality_factor: 1e3,
            coil_volume: 1e-6,
            resistance: 50.0,
            omega_i: PROTON_GAMMA * 10.0,
            temperature: 300.0,
            bandwidth: 1e4,
            mu0: MU_0,
            gamma_i: PROTON_GAMMA,
        }
    }
}

impl HardwareParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("quality_factor", self.quality_factor),
            ("coil_volume", self.coil_volume),
            ("resistance", self.resistance),
            ("omega_i", self.omega_i),
            ("temperature", self.temperature),
            ("bandwidth", self.bandwidth),
            ("mu0", self.mu0),
            ("gamma_i", self.gamma_i),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPhysical(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Signal amplitude of a single molecule at unit polarization:
/// (1/4)·√((Q/V)·μ₀·R·ω_I)·ħ·γ_I volts.
fn per_molecule_unit_signal(hp: &HardwareParams) -> f64 {
    0.25 * ((hp.quality_factor / hp.coil_volume) * hp.mu0 * hp.resistance * hp.omega_i).sqrt()
        * HBAR
        * hp.gamma_i
}

/// Induced signal amplitude V_S = (1/4)·√((Q/V)·μ₀·R·ω_I)·ħ·γ_I·n·ε.
///
/// Linearity in n is exact: the n-molecule amplitude is the single-molecule
/// amplitude scaled by n.
pub fn signal_amplitude(hp: &HardwareParams, n: u64, eps: f64) -> Result<f64> {
    hp.validate()?;
    if !eps.is_finite() || eps.abs() > 1.0 {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            min: -1.0,
            max: 1.0,
        });
    }
    Ok(per_molecule_unit_signal(hp) * eps * n as f64)
}

/// Nyquist noise amplitude V_N = √(4 k_B T R Δν).
pub fn noise_amplitude(hp: &HardwareParams) -> Result<f64> {
    hp.validate()?;
    Ok((4.0 * BOLTZMANN * hp.temperature * hp.resistance * hp.bandwidth).sqrt())
}

/// Signal-to-noise ratio of an n-molecule ensemble; exactly n times the
/// single-molecule ratio by construction.
pub fn snr(hp: &HardwareParams, n: u64, eps: f64) -> Result<f64> {
    Ok(n as f64 * snr_single(hp, eps)?)
}

fn snr_single(hp: &HardwareParams, eps: f64) -> Result<f64> {
    let signal = signal_amplitude(hp, 1, eps)?;
    let noise = noise_amplitude(hp)?;
    Ok(signal / noise)
}

/// Smallest n whose SNR reaches `snr_target`.
///
/// Closed-form ceiling, then adjusted so that n_min clears the target under
/// the same floating-point comparison a caller would make and n_min − 1
/// does not.
pub fn min_molecules(hp: &HardwareParams, eps: f64, snr_target: f64) -> Result<u64> {
    hp.validate()?;
    if !eps.is_finite() || eps <= 0.0 || eps > 1.0 {
        return Err(Error::NonPhysical(format!(
            "polarization must be in (0, 1] for a detectability bound, got {eps}"
        )));
    }
    if !snr_target.is_finite() || snr_target <= 0.0 {
        return Err(Error::NonPhysical(format!(
            "snr target must be strictly positive, got {snr_target}"
        )));
    }

    let single = snr_single(hp, eps)?;
    let ratio = snr_target / single;
    if ratio >= 1.8e19 {
        return Err(Error::NonPhysical(format!(
            "required molecule count {ratio:.3e} exceeds the supported range"
        )));
    }

    let mut n = (ratio.ceil() as u64).max(1);
    while n as f64 * single < snr_target {
        n += 1;
    }
    while n > 1 && (n - 1) as f64 * single >= snr_target {
        n -= 1;
    }
    Ok(n)
}
