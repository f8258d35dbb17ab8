use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use casimir_film::analysis::Spacing;
use casimir_film::materials::load_spectral_table;
use casimir_film::{builtin_material, FilmSystem, Material, ModelVariant};
use serde::Deserialize;

use crate::args::{DataArgs, OutputArgs, RangeArgs, SystemArgs};
use crate::Usage;

pub const DATA_DIR_VAR: &str = "CASIMIR_DATA_DIR";
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

/// Either one variant name, a comma list, or a TOML array.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VariantList {
    One(String),
    Many(Vec<String>),
}

/// Thickness as a number or an array of numbers.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Thicknesses {
    One(f64),
    Many(Vec<f64>),
}

/// Values read from `--config`. Keys are the flag names.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub film: Option<String>,
    pub plate: Option<String>,
    pub variant: Option<VariantList>,
    pub film_data: Option<PathBuf>,
    pub plate_data: Option<PathBuf>,
    /// Metal name to table path.
    pub data: Option<BTreeMap<String, PathBuf>>,
    pub temperature: Option<f64>,
    pub allow_thin: Option<bool>,
    pub a: Option<Thicknesses>,
    pub a_min: Option<f64>,
    pub a_max: Option<f64>,
    pub n_points: Option<usize>,
    pub spacing: Option<String>,
    pub tol: Option<f64>,
    pub threshold: Option<f64>,
    pub output: Option<PathBuf>,
    pub emit_plot: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Usage(format!("bad config {}: {e}", path.display())).into())
    }

    pub fn thicknesses(&self) -> Vec<f64> {
        match &self.a {
            Some(Thicknesses::One(a)) => vec![*a],
            Some(Thicknesses::Many(v)) => v.clone(),
            None => Vec::new(),
        }
    }
}

/// Table paths by lower-case metal name: config first, flags override.
pub fn data_map(flags: &DataArgs, config: &ConfigFile) -> anyhow::Result<BTreeMap<String, PathBuf>> {
    let mut map: BTreeMap<String, PathBuf> = config
        .data
        .iter()
        .flatten()
        .map(|(k, v)| (k.to_lowercase(), v.clone()))
        .collect();
    for entry in &flags.data {
        let (name, path) = entry
            .split_once('=')
            .ok_or_else(|| Usage(format!("--data expects NAME=PATH, got `{entry}`")))?;
        map.insert(name.trim().to_lowercase(), PathBuf::from(path.trim()));
    }
    Ok(map)
}

fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_VAR).map(PathBuf::from)
}

/// Relative paths that do not exist are retried under the data directory.
fn locate(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = data_dir() {
            let candidate = dir.join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

/// Built-in metal with a table attached from, in order: the explicit path,
/// the `--data` map, or `<CASIMIR_DATA_DIR>/<name>.txt`.
pub fn resolve_material(
    name: &str,
    explicit: Option<&Path>,
    data: &BTreeMap<String, PathBuf>,
    need_table: bool,
) -> anyhow::Result<Material> {
    let material = builtin_material(name)?;
    let key = material.name.to_lowercase();
    let path = explicit
        .map(locate)
        .or_else(|| data.get(&key).map(|p| locate(p)))
        .or_else(|| data_dir().map(|d| d.join(format!("{key}.txt"))).filter(|p| p.exists()));
    match path {
        Some(path) => {
            let table = load_spectral_table(&path)
                .with_context(|| format!("loading optical table for {} from {}", material.name, path.display()))?;
            Ok(material.with_table(table))
        }
        None if need_table => Err(Usage(format!(
            "data variants need an optical table for {0}: pass --film-data/--plate-data, --data {0}=PATH, or set {DATA_DIR_VAR}",
            material.name
        ))
        .into()),
        None => Ok(material),
    }
}

pub fn parse_variants(flag: Option<&str>, config: Option<&VariantList>) -> anyhow::Result<Vec<ModelVariant>> {
    let names: Vec<String> = match (flag, config) {
        (Some(s), _) => s.split(',').map(str::to_owned).collect(),
        (None, Some(VariantList::One(s))) => s.split(',').map(str::to_owned).collect(),
        (None, Some(VariantList::Many(v))) => v.clone(),
        (None, None) => vec![ModelVariant::SimpleDrude.to_string()],
    };
    let mut out = Vec::new();
    for name in names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let v: ModelVariant = name.parse().map_err(|e| Usage(format!("{e}")))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Usage("--variant is empty".into()).into());
    }
    Ok(out)
}

/// A film/plate pair with one system template per requested variant.
pub struct Run {
    pub film: Material,
    pub plate: Material,
    pub temperature: f64,
    pub allow_thin: bool,
    pub templates: Vec<FilmSystem>,
}

fn required<'a>(flag: &'a Option<String>, config: &'a Option<String>, name: &str) -> anyhow::Result<&'a str> {
    flag.as_deref()
        .or(config.as_deref())
        .ok_or_else(|| Usage(format!("--{name} is required (or `{name}` in the config file)")).into())
}

pub fn temperature(flag: Option<f64>, config: &ConfigFile) -> anyhow::Result<f64> {
    let t = flag.or(config.temperature).unwrap_or(DEFAULT_TEMPERATURE);
    if !(t > 0.0 && t.is_finite()) {
        return Err(Usage(format!("temperature must be positive, got {t}")).into());
    }
    Ok(t)
}

/// Builds the run. `start` is a placeholder thickness for the templates.
pub fn build_run(flags: &SystemArgs, config: &ConfigFile, start: f64, tables_optional: bool) -> anyhow::Result<Run> {
    let film = required(&flags.film, &config.film, "film")?;
    let plate = required(&flags.plate, &config.plate, "plate")?;
    let variants = parse_variants(flags.variant.as_deref(), config.variant.as_ref())?;
    let need = !tables_optional && variants.iter().any(|v| v.is_data());
    let data = data_map(&flags.data, config)?;
    let film_data = flags.film_data.as_ref().or(config.film_data.as_ref());
    let plate_data = flags.plate_data.as_ref().or(config.plate_data.as_ref());
    let film = resolve_material(film, film_data.map(|p| p.as_path()), &data, need)?;
    let plate = resolve_material(plate, plate_data.map(|p| p.as_path()), &data, need)?;
    let temperature = temperature(flags.temperature, config)?;
    let allow_thin = flags.allow_thin || config.allow_thin.unwrap_or(false);
    let templates = if tables_optional {
        Vec::new()
    } else {
        variants
            .iter()
            .map(|&v| {
                let s = FilmSystem::new(film.clone(), plate.clone(), v, start, temperature)?;
                Ok(if allow_thin { s.allowing_thin_films() } else { s })
            })
            .collect::<anyhow::Result<_>>()?
    };
    Ok(Run {
        film,
        plate,
        temperature,
        allow_thin,
        templates,
    })
}

pub fn range(flags: &RangeArgs, config: &ConfigFile, default: (f64, f64)) -> anyhow::Result<(f64, f64)> {
    let lo = flags.a_min.or(config.a_min).unwrap_or(default.0);
    let hi = flags.a_max.or(config.a_max).unwrap_or(default.1);
    if !(lo < hi) {
        return Err(Usage(format!("--a-min ({lo}) must be below --a-max ({hi})")).into());
    }
    Ok((lo, hi))
}

pub fn spacing(flag: Option<&str>, config: &ConfigFile) -> anyhow::Result<Spacing> {
    flag.or(config.spacing.as_deref())
        .unwrap_or("linear")
        .parse()
        .map_err(|e| Usage(format!("{e}")).into())
}

pub struct Output {
    pub path: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

pub fn output(flags: &OutputArgs, config: &ConfigFile, stem: &str) -> Output {
    let path = flags.output.clone().or_else(|| config.output.clone());
    let plot = (flags.emit_plot || config.emit_plot.unwrap_or(false)).then(|| match &path {
        Some(p) => p.with_extension("svg"),
        None => PathBuf::from(format!("{stem}.svg")),
    });
    Output { path, plot }
}
