//! SI reporting layer.
//!
//! All simulation code runs in natural units (k_B = 1, hbar = 1). Joules
//! only appear here, at output boundaries, using the exact SI values of the
//! defining constants.

use crate::error::{Error, Result};
use crate::info;
use crate::math;

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Reduced Planck constant, J*s (exact h / 2 pi to f64 precision).
pub const HBAR: f64 = 1.054571817e-34;

/// Szilard bound k_B T ln 2 in joules for a temperature in kelvin.
pub fn szilard_bound_joules(temp_kelvin: f64) -> Result<f64> {
    if !(temp_kelvin > 0.0) {
        return Err(Error::domain("temperature must be positive"));
    }
    Ok(BOLTZMANN * temp_kelvin * math::LN_2)
}

/// Landauer erasure bound `k_B T ln2 H[p]` in joules.
pub fn landauer_cost_joules(p: f64, temp_kelvin: f64) -> Result<f64> {
    let h = info::shannon_entropy_bits(p)?;
    Ok(szilard_bound_joules(temp_kelvin)? * h)
}

/// Energy of one photon at frequency `freq_hz` (cycles per second): hbar * 2 pi f.
pub fn photon_energy_joules(freq_hz: f64) -> f64 {
    HBAR * 2.0 * core::f64::consts::PI * freq_hz
}
