//! Dielectric permittivity at imaginary frequency ε(iξ).
//!
//! Simple models use the Drude and plasma formulas directly. Data models
//! evaluate the dispersion relation
//!
//! ```text
//! ε(iξ) - 1 = (2/π) ∫₀^∞ ω Im ε(ω) / (ω² + ξ²) dω
//! ```
//!
//! from a tabulated Im ε = 2nk, with the trapezoidal rule in ln ω on the
//! table's own grid. Below the lowest tabulated energy the integrand is
//! continued with the Drude Im ε (data-Drude) or set to zero after the Drude
//! part has been removed (data-plasma, which then adds ω_p²/ξ² back
//! explicitly). Above the highest energy Im ε is continued as ω⁻³, matched at
//! the last point.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::materials::{DrudeParameters, Material, SpectralTable};
use crate::quadrature::{integrate, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelVariant {
    SimpleDrude,
    SimplePlasma,
    DataDrude,
    DataPlasma,
}

impl ModelVariant {
    pub const ALL: [ModelVariant; 4] = [
        ModelVariant::SimpleDrude,
        ModelVariant::SimplePlasma,
        ModelVariant::DataDrude,
        ModelVariant::DataPlasma,
    ];

    /// Drude-type variants have dissipation and a classical limit.
    pub fn is_drude(self) -> bool {
        matches!(self, ModelVariant::SimpleDrude | ModelVariant::DataDrude)
    }

    pub fn is_data(self) -> bool {
        matches!(self, ModelVariant::DataDrude | ModelVariant::DataPlasma)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelVariant::SimpleDrude => "simple-drude",
            ModelVariant::SimplePlasma => "simple-plasma",
            ModelVariant::DataDrude => "data-drude",
            ModelVariant::DataPlasma => "data-plasma",
        }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        ModelVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == key)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown model variant `{s}` (expected simple-drude, simple-plasma, data-drude or data-plasma)"
                ))
            })
    }
}

fn check_frequency(xi: f64) -> Result<()> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "imaginary frequency must be positive and finite, got {xi}"
        )))
    }
}

/// 1 + ω_p² / (ξ(ξ + γ)).
pub fn eval_simple_drude(p: &DrudeParameters, xi: f64) -> Result<f64> {
    check_frequency(xi)?;
    let wp = p.plasma_frequency;
    Ok(1.0 + wp * wp / (xi * (xi + p.relaxation_frequency)))
}

/// 1 + ω_p² / ξ².
pub fn eval_simple_plasma(p: &DrudeParameters, xi: f64) -> Result<f64> {
    check_frequency(xi)?;
    let wp = p.plasma_frequency;
    Ok(1.0 + wp * wp / (xi * xi))
}

/// How the dispersion integral treats the free-electron part of the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KkBranch {
    /// Table only, zero below the lowest tabulated energy.
    Raw,
    /// Table continued below its lowest energy by the Drude Im ε.
    DrudeExtended(DrudeParameters),
    /// Drude Im ε subtracted from the table, zero below its lowest energy.
    Subtracted(DrudeParameters),
}

/// Precomputed integrand of the dispersion relation for one table and branch.
#[derive(Debug, Clone)]
struct KkIntegrand {
    energies: Vec<f64>,
    log_energies: Vec<f64>,
    im_eps: Vec<f64>,
    low_end: Option<DrudeParameters>,
}

impl KkIntegrand {
    fn new(table: &SpectralTable, branch: KkBranch) -> Self {
        let rows = table.rows();
        let energies: Vec<f64> = rows.iter().map(|r| r.energy).collect();
        let log_energies = energies.iter().map(|e| e.ln()).collect();
        let (im_eps, low_end) = match branch {
            KkBranch::Raw => (rows.iter().map(|r| r.im_eps()).collect(), None),
            KkBranch::DrudeExtended(p) => (rows.iter().map(|r| r.im_eps()).collect(), Some(p)),
            KkBranch::Subtracted(p) => {
                let mut clamped = 0usize;
                let im: Vec<f64> = rows
                    .iter()
                    .map(|r| {
                        let drude = p.im_eps_real_axis(r.energy);
                        let core = r.im_eps() - drude;
                        if core < 0.0 {
                            // Deficits at rounding level are not data problems.
                            if -core > 1e-12 * drude {
                                clamped += 1;
                            }
                            0.0
                        } else {
                            core
                        }
                    })
                    .collect();
                if clamped > 0 {
                    log::warn!(
                        "{}: Im ε below the Drude term at {clamped} of {} grid points, clamped to 0",
                        table.source_label(),
                        rows.len()
                    );
                }
                (im, None)
            }
        };
        Self {
            energies,
            log_energies,
            im_eps,
            low_end,
        }
    }

    /// The dispersion integral (2/π)∫ω Im ε/(ω²+ξ²) dω.
    fn eval(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let g = |i: usize| {
            let w = self.energies[i];
            w * w * self.im_eps[i] / (w * w + xi2)
        };
        let mut grid = 0.0;
        let mut prev = g(0);
        for i in 1..self.energies.len() {
            let next = g(i);
            grid += 0.5 * (self.log_energies[i] - self.log_energies[i - 1]) * (prev + next);
            prev = next;
        }
        let low = self
            .low_end
            .map_or(0.0, |p| drude_below(&p, self.energies[0], xi));
        let last = self.energies.len() - 1;
        let high = power_law_tail(self.energies[last], self.im_eps[last], xi);
        (grid + low + high) / FRAC_PI_2
    }
}

/// ∫₀^{ω₀} ω · Im ε_Drude(ω) / (ω² + ξ²) dω.
fn drude_below(p: &DrudeParameters, cutoff: f64, xi: f64) -> f64 {
    let wp2 = p.plasma_frequency * p.plasma_frequency;
    let g = p.relaxation_frequency;
    let d = xi * xi - g * g;
    if d.abs() > 1e-3 * g * g {
        // Partial fractions; at γ = 0 this reduces to (π/2) ω_p² / ξ².
        wp2 * ((cutoff / g).atan() - g / xi * (cutoff / xi).atan()) / d
    } else {
        let integrand = |w: f64| g / ((w * w + g * g) * (w * w + xi * xi));
        let tol = Tolerance {
            abs: 0.0,
            rel: 1e-13,
        };
        let r = integrate(integrand, 0.0, cutoff, tol, 2000)
            .expect("smooth bounded integrand converges");
        wp2 * r.value
    }
}

/// ∫_{ω_N}^∞ ω · Im_N (ω_N/ω)³ / (ω² + ξ²) dω.
fn power_law_tail(top: f64, im_top: f64, xi: f64) -> f64 {
    im_top * tail_shape(xi / top)
}

/// ω_N³ ∫_{ω_N}^∞ dω/(ω²(ω²+ξ²)) = (1 - atan(t)/t) / t² with t = ξ/ω_N.
fn tail_shape(t: f64) -> f64 {
    if t < 1e-2 {
        tail_shape_series(t)
    } else {
        (1.0 - t.atan() / t) / (t * t)
    }
}

fn tail_shape_series(t: f64) -> f64 {
    let t2 = t * t;
    1.0 / 3.0 - t2 / 5.0 + t2 * t2 / 7.0 - t2 * t2 * t2 / 9.0
}

/// Dispersion-relation term for `table` at imaginary frequency `xi`.
///
/// With [`KkBranch::Subtracted`], grid points where the table's Im ε falls
/// below the Drude term are clamped to zero and a warning is logged.
pub fn eval_kk_core(table: Option<&SpectralTable>, xi: f64, branch: KkBranch) -> Result<f64> {
    check_frequency(xi)?;
    let table = table.ok_or_else(|| {
        Error::Config("optical-data evaluation requires a spectral table".into())
    })?;
    Ok(KkIntegrand::new(table, branch).eval(xi))
}

/// One of the four permittivity variants bound to a material's parameters.
///
/// Clones share the data-model cache, which maps the exact bit pattern of ξ
/// to ε(iξ).
#[derive(Clone)]
pub struct PermittivityModel {
    variant: ModelVariant,
    drude: DrudeParameters,
    kk: Option<Arc<KkIntegrand>>,
    cache: Arc<RwLock<HashMap<u64, f64>>>,
}

impl fmt::Debug for PermittivityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermittivityModel")
            .field("variant", &self.variant)
            .field("drude", &self.drude)
            .field("table_rows", &self.kk.as_ref().map(|k| k.energies.len()))
            .finish()
    }
}

impl PermittivityModel {
    pub fn new(variant: ModelVariant, drude: DrudeParameters, table: Option<&SpectralTable>) -> Result<Self> {
        let kk = match variant {
            ModelVariant::SimpleDrude | ModelVariant::SimplePlasma => None,
            ModelVariant::DataDrude | ModelVariant::DataPlasma => {
                let table = table.ok_or_else(|| {
                    Error::Config(format!("variant {variant} requires an optical data table"))
                })?;
                let branch = if variant == ModelVariant::DataDrude {
                    KkBranch::DrudeExtended(drude)
                } else {
                    KkBranch::Subtracted(drude)
                };
                Some(Arc::new(KkIntegrand::new(table, branch)))
            }
        };
        Ok(Self {
            variant,
            drude,
            kk,
            cache: Arc::default(),
        })
    }

    pub fn for_material(variant: ModelVariant, material: &Material) -> Result<Self> {
        Self::new(variant, material.drude, material.table().map(|t| t.as_ref()))
            .map_err(|e| match e {
                Error::Config(msg) => Error::Config(format!("{}: {msg}", material.name)),
                other => other,
            })
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn drude(&self) -> &DrudeParameters {
        &self.drude
    }

    /// ε(iξ) for ξ > 0 [eV].
    pub fn eval(&self, xi: f64) -> Result<f64> {
        match self.variant {
            ModelVariant::SimpleDrude => eval_simple_drude(&self.drude, xi),
            ModelVariant::SimplePlasma => eval_simple_plasma(&self.drude, xi),
            ModelVariant::DataDrude | ModelVariant::DataPlasma => {
                check_frequency(xi)?;
                let key = xi.to_bits();
                if let Some(&v) = self.cache.read().expect("cache lock").get(&key) {
                    return Ok(v);
                }
                let kk = self.kk.as_ref().expect("data variant carries a table");
                let mut value = 1.0 + kk.eval(xi);
                if self.variant == ModelVariant::DataPlasma {
                    let wp = self.drude.plasma_frequency;
                    value += wp * wp / (xi * xi);
                }
                self.cache.write().expect("cache lock").insert(key, value);
                Ok(value)
            }
        }
    }

    pub fn cached_points(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}
