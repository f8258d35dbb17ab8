//! Built-in metal parameters and tabulated optical data.
//!
//! Drude parameters are room-temperature values. Optical tables are plain text
//! files with one `energy_eV n k` row per line; `#` starts a comment line.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::{Error, Result};

/// Minimum number of rows a table needs to carry a dispersion integral.
pub const MIN_TABLE_ROWS: usize = 10;

/// Free-electron parameters of a metal, both in eV.
///
/// A zero relaxation frequency describes the dissipationless plasma model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrudeParameters {
    pub plasma_frequency: f64,
    pub relaxation_frequency: f64,
}

impl DrudeParameters {
    pub fn new(plasma_frequency: f64, relaxation_frequency: f64) -> Result<Self> {
        if !(plasma_frequency > 0.0 && plasma_frequency.is_finite()) {
            return Err(Error::Domain(format!(
                "plasma frequency must be positive, got {plasma_frequency}"
            )));
        }
        if !(relaxation_frequency >= 0.0 && relaxation_frequency.is_finite()) {
            return Err(Error::Domain(format!(
                "relaxation frequency must be non-negative, got {relaxation_frequency}"
            )));
        }
        Ok(Self {
            plasma_frequency,
            relaxation_frequency,
        })
    }

    /// Imaginary part of the Drude permittivity on the real frequency axis.
    pub fn im_eps_real_axis(&self, omega: f64) -> f64 {
        let wp = self.plasma_frequency;
        let g = self.relaxation_frequency;
        wp * wp * g / (omega * (omega * omega + g * g))
    }

    /// Real part of the Drude permittivity on the real frequency axis.
    pub fn re_eps_real_axis(&self, omega: f64) -> f64 {
        let wp = self.plasma_frequency;
        let g = self.relaxation_frequency;
        1.0 - wp * wp / (omega * omega + g * g)
    }
}

/// One row of an optical table: photon energy [eV] and complex index n + ik.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralRow {
    pub energy: f64,
    pub n: f64,
    pub k: f64,
}

impl SpectralRow {
    /// Im ε = 2nk.
    pub fn im_eps(&self) -> f64 {
        2.0 * self.n * self.k
    }
}

/// Validated optical data on a strictly ascending energy grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralTable {
    rows: Vec<SpectralRow>,
    source_label: String,
}

impl SpectralTable {
    /// Validates rows without reordering them. `lines` gives the source line
    /// of each row for error messages; pass `None` to number rows from 1.
    fn validated(
        rows: Vec<SpectralRow>,
        source_label: String,
        lines: Option<&[usize]>,
    ) -> Result<Self> {
        let line_of = |i: usize| lines.map_or(i + 1, |l| l[i]);
        for (i, row) in rows.iter().enumerate() {
            if !(row.energy > 0.0 && row.energy.is_finite()) {
                return Err(Error::Grid {
                    line: line_of(i),
                    message: format!("photon energy must be positive, got {}", row.energy),
                });
            }
            if !(row.n >= 0.0 && row.n.is_finite() && row.k >= 0.0 && row.k.is_finite()) {
                return Err(Error::Parse {
                    line: line_of(i),
                    message: format!("n and k must be non-negative, got n={} k={}", row.n, row.k),
                });
            }
        }
        if rows.len() < MIN_TABLE_ROWS {
            return Err(Error::InsufficientData {
                rows: rows.len(),
                required: MIN_TABLE_ROWS,
            });
        }
        for (i, pair) in rows.windows(2).enumerate() {
            if pair[1].energy <= pair[0].energy {
                return Err(Error::Grid {
                    line: line_of(i + 1),
                    message: format!(
                        "energies must be strictly ascending ({} after {})",
                        pair[1].energy, pair[0].energy
                    ),
                });
            }
        }
        Ok(Self { rows, source_label })
    }

    pub fn new(rows: Vec<SpectralRow>, source_label: impl Into<String>) -> Result<Self> {
        Self::validated(rows, source_label.into(), None)
    }

    /// Parses the text format. Blank lines and lines starting with `#` are
    /// skipped; every other line must hold exactly three numbers.
    pub fn parse(text: &str, source_label: impl Into<String>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 3 columns (energy_eV n k), found {}", fields.len()),
                });
            }
            let mut values = [0.0; 3];
            for (slot, field) in values.iter_mut().zip(&fields) {
                *slot = field.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("`{field}`: {e}"),
                })?;
            }
            rows.push(SpectralRow {
                energy: values[0],
                n: values[1],
                k: values[2],
            });
            lines.push(line_no);
        }
        Self::validated(rows, source_label.into(), Some(&lines))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.display().to_string())
    }

    /// Serializes in the same format `parse` reads. Values are written in
    /// shortest round-trip form, so reloading reproduces every row exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.source_label);
        let _ = writeln!(out, "# energy_eV n k");
        for r in &self.rows {
            let _ = writeln!(out, "{:e} {:e} {:e}", r.energy, r.n, r.k);
        }
        out
    }

    pub fn rows(&self) -> &[SpectralRow] {
        &self.rows
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn low_cutoff(&self) -> f64 {
        self.rows[0].energy
    }

    pub fn high_cutoff(&self) -> f64 {
        self.rows[self.rows.len() - 1].energy
    }
}

/// Loads and validates an optical data file.
pub fn load_spectral_table(path: impl AsRef<Path>) -> Result<SpectralTable> {
    SpectralTable::load(path)
}

/// Builds a table of n, k from the Drude permittivity on a log-spaced grid.
/// Used as test data where measured tables are not available.
pub fn synthetic_drude_table(
    drude: &DrudeParameters,
    energy_lo: f64,
    energy_hi: f64,
    rows: usize,
    source_label: impl Into<String>,
) -> Result<SpectralTable> {
    if !(energy_lo > 0.0 && energy_hi > energy_lo) || rows < 2 {
        return Err(Error::Domain(format!(
            "bad synthetic grid [{energy_lo}, {energy_hi}] with {rows} rows"
        )));
    }
    let step = (energy_hi / energy_lo).ln() / (rows - 1) as f64;
    let data = (0..rows)
        .map(|i| {
            let energy = if i == rows - 1 {
                energy_hi
            } else {
                energy_lo * (step * i as f64).exp()
            };
            let (n, k) = complex_index(
                drude.re_eps_real_axis(energy),
                drude.im_eps_real_axis(energy),
            );
            SpectralRow { energy, n, k }
        })
        .collect();
    SpectralTable::new(data, source_label)
}

/// n + ik = sqrt(re + i·im) for im ≥ 0, avoiding cancellation when re < 0.
fn complex_index(re: f64, im: f64) -> (f64, f64) {
    let modulus = re.hypot(im);
    if re >= 0.0 {
        let n = ((modulus + re) / 2.0).sqrt();
        (n, if n > 0.0 { im / (2.0 * n) } else { 0.0 })
    } else {
        let k = ((modulus - re) / 2.0).sqrt();
        (if k > 0.0 { im / (2.0 * k) } else { 0.0 }, k)
    }
}

/// A named metal with its Drude parameters and optional optical table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Material {
    pub name: String,
    pub drude: DrudeParameters,
    #[serde(skip)]
    table: Option<Arc<SpectralTable>>,
}

impl Material {
    pub fn new(name: impl Into<String>, drude: DrudeParameters) -> Self {
        Self {
            name: name.into(),
            drude,
            table: None,
        }
    }

    pub fn with_table(mut self, table: SpectralTable) -> Self {
        self.table = Some(Arc::new(table));
        self
    }

    pub fn table(&self) -> Option<&Arc<SpectralTable>> {
        self.table.as_ref()
    }

    /// (lowest, highest) tabulated photon energy, if a table is attached.
    pub fn data_range(&self) -> Option<(f64, f64)> {
        self.table
            .as_ref()
            .map(|t| (t.low_cutoff(), t.high_cutoff()))
    }
}

const BUILTIN: [(&str, f64, f64); 4] = [
    ("Au", 9.0, 0.035),
    ("Ag", 9.66, 0.0315),
    ("Cu", 8.6, 0.0325),
    ("Al", 11.34, 0.041),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(name, _, _)| *name)
}

/// Looks up a built-in metal by case-insensitive name.
pub fn builtin_material(name: &str) -> Result<Material> {
    BUILTIN
        .iter()
        .find(|(n, _, _)| n.eq_ignore_ascii_case(name.trim()))
        .map(|&(n, wp, g)| {
            Material::new(
                n,
                DrudeParameters {
                    plasma_frequency: wp,
                    relaxation_frequency: g,
                },
            )
        })
        .ok_or_else(|| Error::UnknownMaterial {
            name: name.to_string(),
            available: builtin_names().collect::<Vec<_>>().join(", "),
        })
}

pub fn builtin_materials() -> Vec<Material> {
    builtin_names()
        .map(|n| builtin_material(n).expect("built-in name"))
        .collect()
}
