//! Lifshitz free energy and pressure of a film (medium 2) on a thick plate
//! (medium 1) with vacuum (medium 3) above the film.
//!
//! Each Matsubara term is integrated in y = 2a·k⁽²⁾, the normal wave number
//! in the film scaled by twice the thickness. With this substitution
//! k⊥ dk⊥ = y dy / (4a²), so
//!
//! ```text
//! F = k_BT/(2π) · 1/(4a²) · Σ'_l ∫ y Σ_α ln(1 - R_α e^{-y}) dy
//! P = -k_BT/π   · 1/(8a³) · Σ'_l ∫ y² Σ_α R_α e^{-y} / (1 - R_α e^{-y}) dy
//! ```
//!
//! with R_α = r_α⁽²³⁾ r_α⁽²¹⁾ and y running from 2a·k⁽²⁾(k⊥ = 0).
//! For Drude-type models the l = 0 term is the closed form
//! ∫ y ln(1 + r_D e^{-y}) dy = -Li₃(-r_D).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{matsubara_spacing_ev, thermal_energy_joule, HBAR_C_EV_NM};
use crate::materials::{DrudeParameters, Material};
use crate::permittivity::{ModelVariant, PermittivityModel};
use crate::polylog::li3;
use crate::quadrature::{integrate_with_breakpoints, CompensatedSum, Tolerance};
use crate::{Error, Result};

/// Thinnest film accepted without an explicit override [nm].
pub const MIN_THICKNESS_NM: f64 = 10.0;
/// Hard cap on the number of Matsubara terms.
pub const L_MAX_HARD: usize = 20_000;
/// A term is negligible below this fraction of the summed magnitudes.
pub const TERM_TOLERANCE: f64 = 1e-9;
/// Bound on the geometric estimate of the discarded tail.
pub const TAIL_TOLERANCE: f64 = 1e-10;

const QUAD_TOLERANCE: f64 = 1e-10;
const MAX_PANELS: usize = 500;
const CHUNK: usize = 32;
// Offsets from y_min; e^{-45} is far below double precision of the peak.
const Y_BREAKS: [f64; 6] = [0.0, 0.5, 2.0, 6.0, 15.0, 45.0];

/// Film-on-plate configuration with one permittivity variant for both metals.
#[derive(Debug, Clone)]
pub struct FilmSystem {
    film: Material,
    plate: Material,
    variant: ModelVariant,
    thickness: f64,
    temperature: f64,
    allow_thin: bool,
    film_model: PermittivityModel,
    plate_model: PermittivityModel,
}

impl FilmSystem {
    /// `thickness` in nm, `temperature` in K.
    pub fn new(
        film: Material,
        plate: Material,
        variant: ModelVariant,
        thickness: f64,
        temperature: f64,
    ) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {temperature} K"
            )));
        }
        let film_model = PermittivityModel::for_material(variant, &film)?;
        let plate_model = PermittivityModel::for_material(variant, &plate)?;
        let system = Self {
            film,
            plate,
            variant,
            thickness,
            temperature,
            allow_thin: false,
            film_model,
            plate_model,
        };
        system.check_thickness(thickness)?;
        Ok(system)
    }

    /// Lifts the 10 nm lower bound on the film thickness.
    pub fn allowing_thin_films(mut self) -> Self {
        self.allow_thin = true;
        self
    }

    fn check_thickness(&self, a: f64) -> Result<()> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("thickness must be positive, got {a} nm")));
        }
        if a < MIN_THICKNESS_NM && !self.allow_thin {
            return Err(Error::Domain(format!(
                "thickness {a} nm is below {MIN_THICKNESS_NM} nm, where anisotropy of thin layers matters"
            )));
        }
        Ok(())
    }

    /// Same metals, model and temperature at another thickness. The
    /// permittivity caches are shared with `self`.
    pub fn with_thickness(&self, a: f64) -> Result<Self> {
        self.check_thickness(a)?;
        Ok(Self {
            thickness: a,
            ..self.clone()
        })
    }

    pub fn with_film_drude(&self, drude: DrudeParameters) -> Result<Self> {
        let film = Material::new(self.film.name.clone(), drude);
        let film = match self.film.table() {
            Some(t) => film.with_table(t.as_ref().clone()),
            None => film,
        };
        let film_model = PermittivityModel::for_material(self.variant, &film)?;
        Ok(Self {
            film,
            film_model,
            ..self.clone()
        })
    }

    pub fn film(&self) -> &Material {
        &self.film
    }

    pub fn plate(&self) -> &Material {
        &self.plate
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }
}

/// Matsubara frequencies ξ_l = 2π k_B T l / ħ, carried as ħξ_l in eV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatsubaraGrid {
    pub temperature: f64,
    pub xi: Vec<f64>,
    pub l_max: usize,
}

impl MatsubaraGrid {
    pub fn new(temperature: f64, l_max: usize) -> Self {
        let spacing = matsubara_spacing_ev(temperature);
        Self {
            temperature,
            xi: (0..=l_max).map(|l| l as f64 * spacing).collect(),
            l_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interface {
    /// Film / plate, (2,1).
    FilmPlate,
    /// Film / vacuum, (2,3).
    FilmVacuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
}

/// Wave-number data of one Matsubara term. Index 0 is the plate, 1 the
/// film, 2 the vacuum.
#[derive(Debug, Clone, Copy)]
enum Mode {
    /// Drude-type l = 0: only TM reflects, with r⁽²³⁾ = -1 and r⁽²¹⁾ = r_D.
    StaticDrude { r_d: f64 },
    /// `q_sq[n]` is ε⁽ⁿ⁾ξ²/c² [nm⁻²]; `eps_ratio` holds ε⁽¹⁾/ε⁽²⁾ and ε⁽³⁾/ε⁽²⁾.
    Dynamic { q_sq: [f64; 3], eps_ratio: [f64; 2] },
}

#[derive(Debug, Clone, Copy)]
struct Coefficients {
    tm21: f64,
    tm23: f64,
    te21: f64,
    te23: f64,
}

fn fresnel(q_sq: &[f64; 3], eps_ratio: &[f64; 2], k_perp_sq: f64) -> Coefficients {
    debug_assert!(k_perp_sq >= 0.0);
    let k: [f64; 3] = std::array::from_fn(|n| (k_perp_sq + q_sq[n]).sqrt());
    // A zero ratio is the static perfect-reflector limit, r = -1 even at k = 0.
    let tm = |ratio: f64, kn: f64| {
        if ratio == 0.0 {
            -1.0
        } else {
            (ratio * k[1] - kn) / (ratio * k[1] + kn)
        }
    };
    // (k2 - kn)/(k2 + kn) written without the cancellation in the numerator.
    let te = |n: usize| (q_sq[1] - q_sq[n]) / ((k[1] + k[n]) * (k[1] + k[n]));
    Coefficients {
        tm21: tm(eps_ratio[0], k[0]),
        tm23: tm(eps_ratio[1], k[2]),
        te21: te(0),
        te23: te(2),
    }
}

/// r_D = (ω₁²γ₂ − ω₂²γ₁)/(ω₁²γ₂ + ω₂²γ₁), plate 1, film 2.
pub fn drude_static_reflection(plate: &DrudeParameters, film: &DrudeParameters) -> Result<f64> {
    let w1 = plate.plasma_frequency.powi(2);
    let w2 = film.plasma_frequency.powi(2);
    let num = w1 * film.relaxation_frequency - w2 * plate.relaxation_frequency;
    let den = w1 * film.relaxation_frequency + w2 * plate.relaxation_frequency;
    if den > 0.0 {
        Ok(num / den)
    } else {
        Err(Error::Model(
            "zero-frequency Drude reflection undefined when both relaxation frequencies vanish".into(),
        ))
    }
}

impl FilmSystem {
    fn xi(&self, l: usize) -> f64 {
        l as f64 * matsubara_spacing_ev(self.temperature)
    }

    fn mode(&self, l: usize) -> Result<Mode> {
        let plate = self.plate_model.drude();
        let film = self.film_model.drude();
        if l == 0 {
            if self.variant.is_drude() {
                return Ok(Mode::StaticDrude {
                    r_d: drude_static_reflection(plate, film)?,
                });
            }
            // ε ξ² → ω_p² as ξ → 0 for both plasma-type variants.
            let w1 = plate.plasma_frequency.powi(2);
            let w2 = film.plasma_frequency.powi(2);
            let c2 = HBAR_C_EV_NM * HBAR_C_EV_NM;
            return Ok(Mode::Dynamic {
                q_sq: [w1 / c2, w2 / c2, 0.0],
                eps_ratio: [w1 / w2, 0.0],
            });
        }
        let xi = self.xi(l);
        let e1 = self.plate_model.eval(xi)?;
        let e2 = self.film_model.eval(xi)?;
        let q = xi / HBAR_C_EV_NM;
        let q2 = q * q;
        Ok(Mode::Dynamic {
            q_sq: [e1 * q2, e2 * q2, q2],
            eps_ratio: [e1 / e2, 1.0 / e2],
        })
    }
}

/// TM and TE reflection coefficients at Matsubara index `l ≥ 1` and
/// transverse wave number `k_perp` [nm⁻¹].
pub fn reflection(
    interface: Interface,
    l: usize,
    k_perp: f64,
    system: &FilmSystem,
) -> Result<ReflectionPair> {
    if l == 0 {
        return Err(Error::Domain(
            "l = 0 reflection is given by zero_freq_coefficients".into(),
        ));
    }
    if !(k_perp >= 0.0 && k_perp.is_finite()) {
        return Err(Error::Domain(format!("k_perp must be non-negative, got {k_perp}")));
    }
    let Mode::Dynamic { q_sq, eps_ratio } = system.mode(l)? else {
        unreachable!("l ≥ 1 is always dynamic");
    };
    let c = fresnel(&q_sq, &eps_ratio, k_perp * k_perp);
    Ok(match interface {
        Interface::FilmPlate => ReflectionPair {
            r_tm: c.tm21,
            r_te: c.te21,
        },
        Interface::FilmVacuum => ReflectionPair {
            r_tm: c.tm23,
            r_te: c.te23,
        },
    })
}

/// Zero-frequency reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ZeroFrequencyCoefficients {
    /// k⊥-independent; r_tm⁽²³⁾ = −1 and both TE coefficients vanish.
    Drude { r_d: f64 },
    /// k⊥-dependent closed forms in the two plasma frequencies [eV].
    Plasma { plate_wp: f64, film_wp: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroFrequencyReflection {
    pub r_tm_21: f64,
    pub r_tm_23: f64,
    pub r_te_21: f64,
    pub r_te_23: f64,
}

impl ZeroFrequencyCoefficients {
    pub fn at(&self, k_perp: f64) -> ZeroFrequencyReflection {
        match *self {
            ZeroFrequencyCoefficients::Drude { r_d } => ZeroFrequencyReflection {
                r_tm_21: r_d,
                r_tm_23: -1.0,
                r_te_21: 0.0,
                r_te_23: 0.0,
            },
            ZeroFrequencyCoefficients::Plasma { plate_wp, film_wp } => {
                let ck = HBAR_C_EV_NM * k_perp;
                let ck2 = ck * ck;
                let w1 = plate_wp * plate_wp;
                let w2 = film_wp * film_wp;
                let s1 = (ck2 + w1).sqrt();
                let s2 = (ck2 + w2).sqrt();
                let tm_den = w1 * s2 + w2 * s1;
                ZeroFrequencyReflection {
                    r_tm_21: (w1 - w2) * (ck2 * (w1 + w2) + w1 * w2) / (tm_den * tm_den),
                    r_tm_23: -1.0,
                    r_te_21: (w2 - w1) / ((s2 + s1) * (s2 + s1)),
                    r_te_23: w2 / ((s2 + ck) * (s2 + ck)),
                }
            }
        }
    }
}

pub fn zero_freq_coefficients(system: &FilmSystem) -> Result<ZeroFrequencyCoefficients> {
    let plate = system.plate_model.drude();
    let film = system.film_model.drude();
    if system.variant.is_drude() {
        Ok(ZeroFrequencyCoefficients::Drude {
            r_d: drude_static_reflection(plate, film)?,
        })
    } else {
        Ok(ZeroFrequencyCoefficients::Plasma {
            plate_wp: plate.plasma_frequency,
            film_wp: film.plasma_frequency,
        })
    }
}

/// y-integrals of one Matsubara term (before the primed-sum weight).
#[derive(Debug, Clone, Copy, Default)]
struct Term {
    energy: f64,
    pressure: f64,
    panels: usize,
}

fn integrate_mode(mode: Mode, a: f64) -> Result<Term> {
    let (y_min, reflectivity): (f64, Box<dyn Fn(f64) -> [f64; 2] + Sync>) = match mode {
        Mode::StaticDrude { r_d } => (0.0, Box::new(move |_| [-r_d, 0.0])),
        Mode::Dynamic { q_sq, eps_ratio } => {
            let q_film = q_sq[1].sqrt();
            let two_a = 2.0 * a;
            let reflect = move |y: f64| {
                let k_film = y / two_a;
                // k⊥² = k⁽²⁾² − q⁽²⁾², factored to keep it non-negative.
                let k_perp_sq = ((k_film - q_film) * (k_film + q_film)).max(0.0);
                let c = fresnel(&q_sq, &eps_ratio, k_perp_sq);
                [c.tm21 * c.tm23, c.te21 * c.te23]
            };
            (two_a * q_film, Box::new(reflect))
        }
    };
    let breaks: Vec<f64> = Y_BREAKS.iter().map(|d| y_min + d).collect();
    let decay = (-y_min).exp();
    let energy_scale = (1.0 + y_min) * decay;
    let pressure_scale = (y_min * y_min + 2.0 * y_min + 2.0) * decay;

    let energy = integrate_with_breakpoints(
        |y| {
            let e = (-y).exp();
            let [tm, te] = reflectivity(y);
            y * ((-tm * e).ln_1p() + (-te * e).ln_1p())
        },
        &breaks,
        Tolerance {
            abs: QUAD_TOLERANCE * energy_scale,
            rel: QUAD_TOLERANCE,
        },
        MAX_PANELS,
    )?;
    let pressure = integrate_with_breakpoints(
        |y| {
            let e = (-y).exp();
            let [tm, te] = reflectivity(y);
            y * y * (tm * e / (1.0 - tm * e) + te * e / (1.0 - te * e))
        },
        &breaks,
        Tolerance {
            abs: QUAD_TOLERANCE * pressure_scale,
            rel: QUAD_TOLERANCE,
        },
        MAX_PANELS,
    )?;
    Ok(Term {
        energy: energy.value,
        pressure: pressure.value,
        panels: energy.panels + pressure.panels,
    })
}

fn static_drude_closed_form(r_d: f64) -> Term {
    let li = li3(-r_d);
    Term {
        energy: -li,
        pressure: 2.0 * li,
        panels: 0,
    }
}

/// y-integral sums → J/m² and Pa.
fn to_physical(system: &FilmSystem, energy_sum: f64, pressure_sum: f64) -> (f64, f64) {
    let kt = thermal_energy_joule(system.temperature);
    let a = system.thickness;
    let free_energy = kt / (2.0 * PI) / (4.0 * a * a) * energy_sum * 1e18;
    let pressure = -kt / PI / (8.0 * a * a * a) * pressure_sum * 1e27;
    (free_energy, pressure)
}

/// Free energy, pressure and truncation diagnostics at one thickness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasimirResult {
    pub thickness: f64,
    /// J/m²
    pub free_energy: f64,
    /// Pa; negative is attractive.
    pub pressure: f64,
    /// Highest Matsubara index included.
    pub l_max: usize,
    /// Quadrature panels summed over all terms.
    pub panels: usize,
}

/// Runs the Matsubara sum. Terms are evaluated in parallel in fixed-size
/// chunks and reduced in ascending l, so the result does not depend on the
/// thread count.
///
/// The sum stops once three consecutive terms are each below
/// [`TERM_TOLERANCE`] of the summed term magnitudes and the geometric tail
/// estimate from the last two terms is below [`TAIL_TOLERANCE`] of it.
pub fn compute(system: &FilmSystem) -> Result<CasimirResult> {
    compute_with(system, TERM_TOLERANCE, TAIL_TOLERANCE, None)
}

fn compute_with(
    system: &FilmSystem,
    term_tol: f64,
    tail_tol: f64,
    fixed_l_max: Option<usize>,
) -> Result<CasimirResult> {
    let a = system.thickness;
    let zero = match system.mode(0)? {
        Mode::StaticDrude { r_d } => static_drude_closed_form(r_d),
        mode => integrate_mode(mode, a)?,
    };
    let mut energy = CompensatedSum::default();
    let mut pressure = CompensatedSum::default();
    energy.add(0.5 * zero.energy);
    pressure.add(0.5 * zero.pressure);
    let mut energy_scale = 0.5 * zero.energy.abs();
    let mut pressure_scale = 0.5 * zero.pressure.abs();
    let mut panels = zero.panels;
    let mut previous = Term::default();
    let mut quiet = 0;
    let mut next_l = 1;
    let l_cap = fixed_l_max.unwrap_or(L_MAX_HARD);

    while next_l <= l_cap {
        let end = (next_l + CHUNK).min(l_cap + 1);
        let terms: Vec<Result<Term>> = (next_l..end)
            .into_par_iter()
            .map(|l| integrate_mode(system.mode(l)?, a))
            .collect();
        for (l, term) in (next_l..end).zip(terms) {
            let term = term?;
            energy.add(term.energy);
            pressure.add(term.pressure);
            energy_scale += term.energy.abs();
            pressure_scale += term.pressure.abs();
            panels += term.panels;

            if fixed_l_max.is_none() {
                let small = term.energy.abs() <= term_tol * energy_scale
                    && term.pressure.abs() <= term_tol * pressure_scale;
                quiet = if small { quiet + 1 } else { 0 };
                let tail_ok = geometric_tail(previous.energy, term.energy) <= tail_tol * energy_scale
                    && geometric_tail(previous.pressure, term.pressure) <= tail_tol * pressure_scale;
                if quiet >= 3 && tail_ok {
                    let (free_energy, pressure) = to_physical(system, energy.value(), pressure.value());
                    return Ok(CasimirResult {
                        thickness: a,
                        free_energy,
                        pressure,
                        l_max: l,
                        panels,
                    });
                }
            }
            previous = term;
        }
        next_l = end;
    }
    if let Some(l_max) = fixed_l_max {
        let (free_energy, pressure) = to_physical(system, energy.value(), pressure.value());
        return Ok(CasimirResult {
            thickness: a,
            free_energy,
            pressure,
            l_max,
            panels,
        });
    }
    Err(Error::Convergence {
        thickness: a,
        terms: L_MAX_HARD,
        last_term: previous.energy,
        running_total: energy.value(),
    })
}

/// Estimated sum of the terms after `last`, assuming geometric decay.
fn geometric_tail(before: f64, last: f64) -> f64 {
    if last == 0.0 {
        return 0.0;
    }
    let ratio = (last / before).abs();
    if before == 0.0 || ratio >= 1.0 || !ratio.is_finite() {
        return f64::INFINITY;
    }
    last.abs() * ratio / (1.0 - ratio)
}

/// Same sum truncated at exactly `l_max` (no convergence test).
pub fn compute_truncated(system: &FilmSystem, l_max: usize) -> Result<CasimirResult> {
    compute_with(system, TERM_TOLERANCE, TAIL_TOLERANCE, Some(l_max))
}

/// Casimir free energy per unit area [J/m²].
pub fn free_energy(system: &FilmSystem) -> Result<f64> {
    compute(system).map(|r| r.free_energy)
}

/// Casimir pressure on the film [Pa].
pub fn pressure(system: &FilmSystem) -> Result<f64> {
    compute(system).map(|r| r.pressure)
}

/// The l = 0 contribution (with its ½ weight) from numerical quadrature,
/// as (J/m², Pa). For Drude-type models this is the integral that the
/// polylogarithm closed form evaluates exactly.
pub fn zero_frequency_term_numeric(system: &FilmSystem) -> Result<(f64, f64)> {
    let t = integrate_mode(system.mode(0)?, system.thickness)?;
    Ok(to_physical(system, 0.5 * t.energy, 0.5 * t.pressure))
}

fn classical_r_d(system: &FilmSystem) -> Result<f64> {
    if !system.variant.is_drude() {
        return Err(Error::Model(format!(
            "{} has no classical limit: the zero-frequency term depends on ħ",
            system.variant
        )));
    }
    drude_static_reflection(system.plate_model.drude(), system.film_model.drude())
}

/// −k_BT Li₃(−r_D) / (16π a²) [J/m²]; Drude-type models only.
pub fn classical_free_energy(system: &FilmSystem) -> Result<f64> {
    let r_d = classical_r_d(system)?;
    let a = system.thickness;
    Ok(-thermal_energy_joule(system.temperature) * li3(-r_d) / (16.0 * PI * a * a) * 1e18)
}

/// −k_BT Li₃(−r_D) / (8π a³) [Pa]; Drude-type models only.
pub fn classical_pressure(system: &FilmSystem) -> Result<f64> {
    let r_d = classical_r_d(system)?;
    let a = system.thickness;
    Ok(-thermal_energy_joule(system.temperature) * li3(-r_d) / (8.0 * PI * a * a * a) * 1e27)
}

/// Free energy and pressure with the film plasma frequency multiplied by
/// `scale`. Large scales approach the ideal-metal film.
pub fn ideal_metal_limit(system: &FilmSystem, scale: f64) -> Result<(f64, f64)> {
    if system.variant.is_data() {
        return Err(Error::Model(
            "optical-data permittivities cannot be rescaled to the ideal-metal limit".into(),
        ));
    }
    if !(scale >= 1.0 && scale.is_finite()) {
        return Err(Error::Domain(format!("scale must be at least 1, got {scale}")));
    }
    let drude = system.film.drude;
    let scaled = system.with_film_drude(DrudeParameters {
        plasma_frequency: drude.plasma_frequency * scale,
        ..drude
    })?;
    let r = compute(&scaled)?;
    Ok((r.free_energy, r.pressure))
}
