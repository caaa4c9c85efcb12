//! Physical constants and conversions for the meV / fs / K unit system.

use crate::{Error, Result};

/// Reduced Planck constant in meV·fs.
pub const HBAR: f64 = 658.211_956_9;

/// Boltzmann constant in meV/K.
pub const K_BOLTZMANN: f64 = 0.086_173_332_62;

/// Energy of one wavenumber (hc · 1 cm⁻¹) in meV.
pub const WAVENUMBER_TO_MEV: f64 = 0.123_984_198_4;

/// The constants as a value, for code that wants to pass them around or
/// record them in output metadata.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub k_boltzmann: f64,
    pub wavenumber_to_mev: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        k_boltzmann: K_BOLTZMANN,
        wavenumber_to_mev: WAVENUMBER_TO_MEV,
    };
}

pub fn mev_from_wavenumber(wavenumber: f64) -> f64 {
    wavenumber * WAVENUMBER_TO_MEV
}

pub fn wavenumber_from_mev(energy_mev: f64) -> f64 {
    energy_mev / WAVENUMBER_TO_MEV
}

/// k_B·T in meV.
pub fn thermal_energy(temperature: f64) -> Result<f64> {
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::invalid(
            "temperature",
            format!("must be finite and >= 0 K (got {temperature})"),
        ));
    }
    Ok(K_BOLTZMANN * temperature)
}

/// Inverse thermal energy β = 1/(k_B T) in meV⁻¹. Requires T > 0.
pub fn beta(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::invalid(
            "temperature",
            format!("must be > 0 K (got {temperature})"),
        ));
    }
    Ok(1.0 / thermal_energy(temperature)?)
}

/// Angular frequency (fs⁻¹) of an energy gap given in meV.
pub fn angular_frequency(energy_mev: f64) -> f64 {
    energy_mev / HBAR
}
