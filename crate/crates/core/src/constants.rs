//! Defined physical constants in the unit system used by the engine.

use std::f64::consts::PI;

/// Boltzmann constant [eV/K].
pub const BOLTZMANN_EV_PER_K: f64 = 8.617333262e-5;
/// ħc [eV·nm].
pub const HBAR_C_EV_NM: f64 = 197.3269804;
/// Joules per electron-volt.
pub const JOULE_PER_EV: f64 = 1.602176634e-19;

/// Riemann zeta function at 3 (Apéry's constant).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Constants bundled as a value, for callers that want to report them.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PhysicalConstants {
    pub boltzmann: f64,
    pub hbar_c: f64,
    pub ev_to_joule: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        boltzmann: BOLTZMANN_EV_PER_K,
        hbar_c: HBAR_C_EV_NM,
        ev_to_joule: JOULE_PER_EV,
    };
}

/// k_B T in eV.
pub fn thermal_energy_ev(temperature: f64) -> f64 {
    BOLTZMANN_EV_PER_K * temperature
}

/// k_B T in J.
pub fn thermal_energy_joule(temperature: f64) -> f64 {
    thermal_energy_ev(temperature) * JOULE_PER_EV
}

/// Spacing of the Matsubara frequencies, 2π k_B T (as ħξ₁, in eV).
pub fn matsubara_spacing_ev(temperature: f64) -> f64 {
    2.0 * PI * thermal_energy_ev(temperature)
}
