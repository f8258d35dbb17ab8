//! Casimir free energy and pressure of a thin metal film deposited on a thick
//! metallic plate, with vacuum above the film.
//!
//! The engine evaluates the Lifshitz formula at imaginary Matsubara
//! frequencies with Drude-model, plasma-model and optical-data permittivities.
//! Frequencies are carried in eV and lengths in nm throughout; results are
//! converted to J/m² and Pa only at the output boundary.

pub mod analysis;
pub mod constants;
mod error;
pub mod lifshitz;
pub mod materials;
pub mod permittivity;
pub mod polylog;
pub mod quadrature;

pub use error::{Error, Result};
pub use lifshitz::{CasimirResult, FilmSystem};
pub use materials::{builtin_material, DrudeParameters, Material, SpectralTable};
pub use permittivity::{ModelVariant, PermittivityModel};
