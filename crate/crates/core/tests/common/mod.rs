#![allow(dead_code)]

pub mod brute_force;

use casimir_film::ModelVariant;

/// Frozen from `oracle/brute_force.out`: (variant, film, plate, a [nm], F [J/m²], P [Pa]).
pub const PINNED: [(ModelVariant, &str, &str, f64, f64, f64); 6] = [
    (ModelVariant::SimpleDrude, "Ag", "Cu", 50.0, -1.07265309141828e-8, -0.974995517972241),
    (ModelVariant::SimplePlasma, "Ag", "Cu", 50.0, -6.08076870591596e-9, -0.77750056057934),
    (ModelVariant::SimpleDrude, "Au", "Al", 100.0, 1.28562370670195e-9, 0.031128512692331),
    (ModelVariant::SimplePlasma, "Au", "Al", 100.0, 5.7517246050696e-11, 0.0060705824874303),
    (ModelVariant::SimpleDrude, "Au", "Ag", 30.0, 7.6924864785568e-8, 10.1380822831799),
    (ModelVariant::SimplePlasma, "Ag", "Au", 30.0, -5.76081792822685e-8, -8.66298926826848),
];

pub fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}
