use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::Context;
use casimir_film::analysis::{RatioReport, SweepResult};
use casimir_film::{CasimirResult, FilmSystem};

pub const CSV_HEADER: &str = "thickness_nm,free_energy_J_per_m2,pressure_Pa,variant,film,plate,temperature_K,l_max\n";

/// Twelve significant digits in scientific notation.
pub fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".into(), sci)
}

pub fn push_row(out: &mut String, system: &FilmSystem, r: &CasimirResult) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        sci(r.thickness),
        sci(r.free_energy),
        sci(r.pressure),
        system.variant(),
        system.film().name,
        system.plate().name,
        sci(system.temperature()),
        r.l_max
    );
}

pub fn push_sweep(out: &mut String, s: &SweepResult) {
    for i in 0..s.thicknesses.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            sci(s.thicknesses[i]),
            sci(s.free_energy[i]),
            sci(s.pressure[i]),
            s.variant,
            s.film,
            s.plate,
            sci(s.temperature),
            s.diagnostics[i].l_max
        );
    }
}

pub fn ratio_csv(report: &RatioReport) -> String {
    let mut out = String::from(
        "thickness_nm,film,plate,temperature_K,F_simple_drude,F_simple_plasma,F_data_drude,F_data_plasma,\
         simple_drude_over_plasma,data_drude_over_plasma,drude_simple_over_data,plasma_simple_over_data\n",
    );
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            sci(row.thickness),
            report.film,
            report.plate,
            sci(report.temperature),
            sci(row.simple_drude),
            sci(row.simple_plasma),
            opt(row.data_drude),
            opt(row.data_plasma),
            sci(row.simple_drude_over_plasma),
            opt(row.data_drude_over_plasma),
            opt(row.drude_simple_over_data),
            opt(row.plasma_simple_over_data)
        );
    }
    out
}

/// Writes to the file, or stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
