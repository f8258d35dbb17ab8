mod common;

use casimir_film::constants::{thermal_energy_joule, ZETA_3};
use casimir_film::lifshitz::{self, drude_static_reflection};
use casimir_film::{builtin_material, FilmSystem, ModelVariant};
use common::rel;

const PAIRS: [(&str, &str); 4] = [("Ag", "Cu"), ("Au", "Cu"), ("Au", "Al"), ("Ag", "Al")];
const SIMPLE: [ModelVariant; 2] = [ModelVariant::SimpleDrude, ModelVariant::SimplePlasma];

fn system(film: &str, plate: &str, v: ModelVariant, a: f64) -> FilmSystem {
    FilmSystem::new(builtin_material(film).unwrap(), builtin_material(plate).unwrap(), v, a, 300.0).unwrap()
}

#[test]
fn numeric_zero_frequency_term_equals_polylog() {
    for (film, plate) in PAIRS {
        for a in [20.0, 50.0, 100.0, 200.0] {
            let s = system(film, plate, ModelVariant::SimpleDrude, a);
            let (f0, p0) = lifshitz::zero_frequency_term_numeric(&s).unwrap();
            let fc = lifshitz::classical_free_energy(&s).unwrap();
            let pc = lifshitz::classical_pressure(&s).unwrap();
            assert!(rel(f0, fc) < 1e-8, "{film}/{plate} {a}: {f0} vs {fc}");
            assert!(rel(p0, pc) < 1e-8, "{film}/{plate} {a}: {p0} vs {pc}");
        }
    }
}

#[test]
fn doubling_the_cutoff_changes_nothing() {
    let cases = [
        ("Ag", "Cu", ModelVariant::SimpleDrude, 50.0),
        ("Au", "Al", ModelVariant::SimplePlasma, 100.0),
        ("Au", "Cu", ModelVariant::SimplePlasma, 10.0),
        ("Au", "Ag", ModelVariant::SimpleDrude, 200.0),
        ("Al", "Ag", ModelVariant::SimplePlasma, 180.0),
    ];
    for (film, plate, v, a) in cases {
        let s = system(film, plate, v, a);
        let r = lifshitz::compute(&s).unwrap();
        let doubled = lifshitz::compute_truncated(&s, 2 * r.l_max).unwrap();
        assert_eq!(doubled.l_max, 2 * r.l_max);
        assert!(
            rel(doubled.free_energy, r.free_energy) < 1e-9,
            "{film}/{plate} {v} {a}: {} vs {}",
            doubled.free_energy,
            r.free_energy
        );
    }
}

#[test]
fn pressure_is_minus_the_energy_derivative() {
    let h = 0.01;
    for (film, plate) in [("Ag", "Cu"), ("Au", "Al")] {
        for v in SIMPLE {
            for a in [30.0, 60.0, 120.0] {
                let f = |x| lifshitz::free_energy(&system(film, plate, v, x)).unwrap();
                let fd = (f(a - h) - f(a + h)) / (2.0 * h * 1e-9);
                let p = lifshitz::pressure(&system(film, plate, v, a)).unwrap();
                assert!(rel(fd, p) < 1e-4, "{film}/{plate} {v} {a}: {fd} vs {p}");
            }
        }
    }
}

#[test]
fn sign_structure_of_simple_models() {
    for v in SIMPLE {
        for a in (20..=200).step_by(10).map(f64::from) {
            for (film, plate, negative) in
                [("Ag", "Cu", true), ("Au", "Cu", true), ("Au", "Al", false), ("Ag", "Al", false)]
            {
                let f = lifshitz::free_energy(&system(film, plate, v, a)).unwrap();
                assert_eq!(f < 0.0, negative, "{film}/{plate} {v} {a}: {f}");
                assert!(f != 0.0);
            }
        }
    }
}

#[test]
fn drude_approaches_classical_limit() {
    for (film, plate) in PAIRS.into_iter().chain([("Au", "Ag"), ("Ag", "Au")]) {
        for (a, bound) in [(150.0, 0.01), (200.0, 0.001)] {
            let s = system(film, plate, ModelVariant::SimpleDrude, a);
            let dev = rel(lifshitz::free_energy(&s).unwrap(), lifshitz::classical_free_energy(&s).unwrap());
            assert!(dev < bound, "{film}/{plate} {a}: {dev}");
        }
    }
}

#[test]
fn silver_on_copper_pressure_at_150nm_is_classical() {
    let s = system("Ag", "Cu", ModelVariant::SimpleDrude, 150.0);
    assert!(rel(lifshitz::pressure(&s).unwrap(), lifshitz::classical_pressure(&s).unwrap()) < 0.01);
}

#[test]
fn plasma_has_no_classical_limit() {
    for (film, plate) in PAIRS {
        let ratios: Vec<f64> = [50.0, 100.0, 150.0, 200.0]
            .iter()
            .map(|&a| {
                let f = lifshitz::free_energy(&system(film, plate, ModelVariant::SimplePlasma, a)).unwrap();
                let c = lifshitz::classical_free_energy(&system(film, plate, ModelVariant::SimpleDrude, a)).unwrap();
                (f / c).abs()
            })
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{film}/{plate}: {ratios:?}");
    }
}

#[test]
fn ideal_metal_film() {
    let a = 100.0;
    let kt = thermal_energy_joule(300.0);
    let f_ideal = -kt * ZETA_3 / (16.0 * std::f64::consts::PI * (a * 1e-9f64).powi(2));
    let p_ideal = -kt * ZETA_3 / (8.0 * std::f64::consts::PI * (a * 1e-9f64).powi(3));
    assert!(rel(f_ideal, -9.905e-9) < 1e-3);
    assert!(rel(p_ideal, -0.1981) < 1e-3);

    let (f, p) = lifshitz::ideal_metal_limit(&system("Au", "Cu", ModelVariant::SimpleDrude, a), 100.0).unwrap();
    assert!(rel(f, f_ideal) < 0.01, "{f}");
    assert!(rel(p, p_ideal) < 0.01, "{p}");
    let (f, _) = lifshitz::ideal_metal_limit(&system("Au", "Cu", ModelVariant::SimplePlasma, a), 100.0).unwrap();
    assert!(f.abs() < 1e-3 * f_ideal.abs(), "{f}");
}

#[test]
fn large_thickness_sign_follows_static_reflection() {
    for (film, plate) in [("Au", "Ag"), ("Ag", "Au"), ("Ag", "Cu"), ("Au", "Al")] {
        let s = system(film, plate, ModelVariant::SimpleDrude, 100.0);
        let r_d = drude_static_reflection(&s.plate().drude, &s.film().drude).unwrap();
        let f = lifshitz::free_energy(&s).unwrap();
        assert_eq!(f > 0.0, r_d > 0.0, "{film}/{plate}");
    }
}

#[test]
fn same_metal_film_and_plate_has_no_energy() {
    // r⁽²¹⁾ vanishes, and every term carries the product r⁽²³⁾r⁽²¹⁾.
    for v in SIMPLE {
        let r = lifshitz::compute(&system("Au", "Au", v, 40.0)).unwrap();
        assert_eq!(r.free_energy, 0.0);
        assert_eq!(r.pressure, 0.0);
    }
}

#[test]
fn identical_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| lifshitz::compute(&system("Ag", "Au", ModelVariant::SimplePlasma, 12.0)).unwrap())
    };
    let one = run(1);
    for threads in [2, 3, 8] {
        let other = run(threads);
        assert_eq!(one.free_energy.to_bits(), other.free_energy.to_bits());
        assert_eq!(one.pressure.to_bits(), other.pressure.to_bits());
        assert_eq!(one.l_max, other.l_max);
    }
}
