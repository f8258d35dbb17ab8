mod common;

use casimir_film::materials::{synthetic_drude_table, SpectralRow};
use casimir_film::permittivity::{eval_kk_core, eval_simple_drude, KkBranch};
use casimir_film::{builtin_material, lifshitz, Error, FilmSystem, Material, ModelVariant, PermittivityModel, SpectralTable};
use common::rel;

fn synthetic(name: &str, lo: f64) -> Material {
    let m = builtin_material(name).unwrap();
    let t = synthetic_drude_table(&m.drude, lo, 1e4, 400, format!("synthetic {name}")).unwrap();
    m.with_table(t)
}

#[test]
fn data_drude_round_trip_over_matsubara_range() {
    let au = synthetic("Au", 0.125);
    let model = PermittivityModel::for_material(ModelVariant::DataDrude, &au).unwrap();
    for i in 0..=60 {
        let xi = 0.162 * (100.0f64 / 0.162).powf(i as f64 / 60.0);
        let simple = eval_simple_drude(&au.drude, xi).unwrap();
        assert!(rel(model.eval(xi).unwrap(), simple) < 5e-3, "xi={xi}");
    }
}

#[test]
fn subtracting_the_generating_drude_term_leaves_nothing() {
    let au = synthetic("Au", 0.125);
    let table = au.table().unwrap();
    for xi in [0.162, 1.0, 10.0, 100.0] {
        let core = eval_kk_core(Some(table), xi, KkBranch::Subtracted(au.drude)).unwrap();
        let scale = eval_simple_drude(&au.drude, xi).unwrap() - 1.0;
        assert!(core.abs() < 5e-3 * scale, "xi={xi}: {core}");
    }
}

#[test]
fn zero_loss_table_has_zero_core() {
    let rows = (0..20).map(|i| SpectralRow { energy: 0.5 + i as f64, n: 1.3, k: 0.0 }).collect();
    let table = SpectralTable::new(rows, "lossless").unwrap();
    for xi in [0.01, 1.0, 1e3] {
        assert_eq!(eval_kk_core(Some(&table), xi, KkBranch::Raw).unwrap(), 0.0);
    }
    assert!(matches!(eval_kk_core(None, 1.0, KkBranch::Raw), Err(Error::Config(_))));
}

#[test]
fn data_variant_needs_tables() {
    let r = FilmSystem::new(
        builtin_material("Au").unwrap(),
        synthetic("Ag", 0.125),
        ModelVariant::DataDrude,
        50.0,
        300.0,
    );
    assert!(matches!(r, Err(Error::Config(_))), "{r:?}");
}

#[test]
fn synthetic_tables_reproduce_simple_models() {
    let (ag, cu) = (synthetic("Ag", 0.125), synthetic("Cu", 0.13));
    for (data, simple) in [
        (ModelVariant::DataDrude, ModelVariant::SimpleDrude),
        (ModelVariant::DataPlasma, ModelVariant::SimplePlasma),
    ] {
        for a in [15.0, 50.0, 100.0] {
            let f = |v| lifshitz::free_energy(&FilmSystem::new(ag.clone(), cu.clone(), v, a, 300.0).unwrap()).unwrap();
            assert!(rel(f(data), f(simple)) < 1e-4, "{data} {a}");
        }
    }
}

#[test]
fn data_plasma_keeps_the_free_electron_pole() {
    let au = synthetic("Au", 0.125);
    let model = PermittivityModel::for_material(ModelVariant::DataPlasma, &au).unwrap();
    for xi in [1e-3, 1e-4] {
        let eps = model.eval(xi).unwrap();
        assert!(rel(eps * xi * xi, 81.0) < 1e-2, "{xi}: {eps}");
    }
}

#[test]
fn data_variants_cannot_be_rescaled() {
    let s = FilmSystem::new(synthetic("Au", 0.125), synthetic("Cu", 0.13), ModelVariant::DataDrude, 100.0, 300.0).unwrap();
    assert!(matches!(lifshitz::ideal_metal_limit(&s, 100.0), Err(Error::Model(_))));
}
