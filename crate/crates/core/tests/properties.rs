use std::sync::OnceLock;

use casimir_film::lifshitz::{self, Interface};
use casimir_film::materials::{synthetic_drude_table, SpectralRow};
use casimir_film::permittivity::{eval_kk_core, eval_simple_drude, eval_simple_plasma, KkBranch};
use casimir_film::{builtin_material, DrudeParameters, FilmSystem, ModelVariant, PermittivityModel, SpectralTable};
use proptest::prelude::*;

fn gold_table() -> &'static SpectralTable {
    static TABLE: OnceLock<SpectralTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let au = builtin_material("Au").unwrap().drude;
        synthetic_drude_table(&au, 0.125, 1e4, 400, "synthetic Au").unwrap()
    })
}

fn drude() -> impl Strategy<Value = DrudeParameters> {
    (1.0..20.0f64, 0.0..0.2f64).prop_map(|(wp, g)| DrudeParameters::new(wp, g).unwrap())
}

fn metal_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["Au", "Ag", "Cu", "Al"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_models_decrease_with_frequency(p in drude(), lo in -2.0..3.0f64, step in 1e-3..1.0f64) {
        let (x1, x2) = (10f64.powf(lo), 10f64.powf(lo + step));
        prop_assert!(eval_simple_drude(&p, x2).unwrap() < eval_simple_drude(&p, x1).unwrap());
        prop_assert!(eval_simple_plasma(&p, x2).unwrap() < eval_simple_plasma(&p, x1).unwrap());
    }

    #[test]
    fn plasma_never_below_drude(p in drude(), xi in 1e-3..1e3f64) {
        let d = eval_simple_drude(&p, xi).unwrap();
        let pl = eval_simple_plasma(&p, xi).unwrap();
        prop_assert!(pl >= d);
        prop_assert_eq!(pl == d, p.relaxation_frequency == 0.0);
        prop_assert!(d > 1.0);
    }

    #[test]
    fn every_variant_tends_to_one(variant in prop::sample::select(ModelVariant::ALL.to_vec())) {
        let au = builtin_material("Au").unwrap().drude;
        let table = variant.is_data().then(gold_table);
        let model = PermittivityModel::new(variant, au, table).unwrap();
        let eps = model.eval(1e6).unwrap();
        prop_assert!((eps - 1.0).abs() < 1e-6, "{}", eps);
    }

    #[test]
    fn kk_core_nonnegative_for_nonnegative_loss(
        seed in prop::collection::vec((0.0..5.0f64, 0.0..5.0f64), 12..40),
        xi in 1e-2..1e3f64,
    ) {
        let rows = seed
            .iter()
            .enumerate()
            .map(|(i, &(n, k))| SpectralRow { energy: 0.1 * 1.4f64.powi(i as i32), n, k })
            .collect();
        let table = SpectralTable::new(rows, "random").unwrap();
        prop_assert!(eval_kk_core(Some(&table), xi, KkBranch::Raw).unwrap() >= 0.0);
    }

    #[test]
    fn table_text_round_trip(
        seed in prop::collection::vec((1e-3..2.0f64, 0.0..50.0f64, 0.0..50.0f64), 10..60),
    ) {
        let mut energy = 0.01;
        let rows: Vec<SpectralRow> = seed
            .iter()
            .map(|&(de, n, k)| {
                energy += de;
                SpectralRow { energy, n, k }
            })
            .collect();
        let table = SpectralTable::new(rows, "random").unwrap();
        let back = SpectralTable::parse(&table.to_text(), "random").unwrap();
        prop_assert_eq!(table.rows().len(), back.rows().len());
        for (a, b) in table.rows().iter().zip(back.rows()) {
            prop_assert_eq!(a.energy.to_bits(), b.energy.to_bits());
            prop_assert_eq!(a.n.to_bits(), b.n.to_bits());
            prop_assert_eq!(a.k.to_bits(), b.k.to_bits());
            prop_assert!(a.im_eps() >= 0.0);
        }
    }

    #[test]
    fn builtin_lookup_is_pure(name in metal_name(), upper in any::<bool>()) {
        let query = if upper { name.to_uppercase() } else { name.to_lowercase() };
        prop_assert_eq!(builtin_material(&query).unwrap(), builtin_material(name).unwrap());
    }

    #[test]
    fn reflection_bounded(
        film in metal_name(),
        plate in metal_name(),
        plasma in any::<bool>(),
        l in 1usize..3000,
        k in 0.0..5.0f64,
    ) {
        let v = if plasma { ModelVariant::SimplePlasma } else { ModelVariant::SimpleDrude };
        let s = FilmSystem::new(builtin_material(film).unwrap(), builtin_material(plate).unwrap(), v, 50.0, 300.0).unwrap();
        for iface in [Interface::FilmPlate, Interface::FilmVacuum] {
            let r = lifshitz::reflection(iface, l, k, &s).unwrap();
            prop_assert!(r.r_tm.abs() <= 1.0 && r.r_te.abs() <= 1.0, "{:?}", r);
        }
        let z = lifshitz::zero_freq_coefficients(&s).unwrap().at(k);
        for r in [z.r_tm_21, z.r_tm_23, z.r_te_21, z.r_te_23] {
            prop_assert!(r.is_finite() && r.abs() <= 1.0);
        }
    }

    #[test]
    fn results_finite(
        film in metal_name(),
        plate in metal_name(),
        v in prop::sample::select(vec![ModelVariant::SimpleDrude, ModelVariant::SimplePlasma]),
        a in 10.0..400.0f64,
    ) {
        let s = FilmSystem::new(builtin_material(film).unwrap(), builtin_material(plate).unwrap(), v, a, 300.0).unwrap();
        let r = lifshitz::compute(&s).unwrap();
        prop_assert!(r.free_energy.is_finite() && r.pressure.is_finite());
    }
}
