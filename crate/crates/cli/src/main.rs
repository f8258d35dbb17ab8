mod args;
mod config;
mod output;
mod plot;

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::Context;
use casimir_film::analysis::{self, Spacing, SweepResult};
use casimir_film::materials::synthetic_drude_table;
use casimir_film::{builtin_material, lifshitz, Error, FilmSystem};
use clap::Parser;

use args::{Cli, Command};
use config::{ConfigFile, Run};
use output::{sci, write_output};

/// Bad invocation: exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

const EXIT_COMPUTE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return EXIT_USAGE;
        }
        if let Some(Error::Config(_) | Error::UnknownMaterial { .. }) = cause.downcast_ref::<Error>() {
            return EXIT_USAGE;
        }
    }
    EXIT_COMPUTE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Materials(a) => materials(&a, &config),
        Command::Compute(a) => compute(&a, &config),
        Command::Sweep(a) => sweep(&a, &config),
        Command::SignChange(a) => sign_change(&a, &config),
        Command::Extremum(a) => extremum(&a, &config),
        Command::Onset(a) => onset(&a, &config),
        Command::Ratios(a) => ratios(&a, &config),
        Command::Check(a) => check(&a, &config),
        Command::SynthTable(a) => synth_table(&a),
    }
}

fn materials(args: &args::MaterialsArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let data = config::data_map(&args.data, config)?;
    let metals = casimir_film::materials::builtin_names()
        .map(|name| config::resolve_material(name, None, &data, false))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut out = String::new();
    if args.json {
        #[derive(serde::Serialize)]
        struct Row<'a> {
            name: &'a str,
            plasma_frequency_ev: f64,
            relaxation_frequency_ev: f64,
            table: Option<&'a str>,
            data_low_cutoff_ev: Option<f64>,
            data_high_cutoff_ev: Option<f64>,
        }
        let rows: Vec<Row> = metals
            .iter()
            .map(|m| Row {
                name: &m.name,
                plasma_frequency_ev: m.drude.plasma_frequency,
                relaxation_frequency_ev: m.drude.relaxation_frequency,
                table: m.table().map(|t| t.source_label()),
                data_low_cutoff_ev: m.data_range().map(|r| r.0),
                data_high_cutoff_ev: m.data_range().map(|r| r.1),
            })
            .collect();
        out = serde_json::to_string_pretty(&rows)?;
        out.push('\n');
    } else {
        writeln!(out, "{:<5} {:>10} {:>10}  table", "name", "wp [eV]", "gamma [eV]")?;
        for m in &metals {
            let table = match (m.table(), m.data_range()) {
                (Some(t), Some((lo, hi))) => format!("{} ({lo}-{hi} eV)", t.source_label()),
                _ => "none".into(),
            };
            writeln!(
                out,
                "{:<5} {:>10} {:>10}  {table}",
                m.name, m.drude.plasma_frequency, m.drude.relaxation_frequency
            )?;
        }
    }
    write_output(None, &out)
}

fn compute(args: &args::ComputeArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let mut thicknesses = args.a.clone();
    if thicknesses.is_empty() {
        thicknesses = config.thicknesses();
    }
    if thicknesses.is_empty() {
        return Err(Usage("--a is required (or `a` in the config file)".into()).into());
    }
    let run = config::build_run(&args.system, config, thicknesses[0].max(lifshitz::MIN_THICKNESS_NM), false)?;
    let mut out = String::from(output::CSV_HEADER);
    for template in &run.templates {
        for &a in &thicknesses {
            let system = template.with_thickness(a).with_context(|| format!("thickness {a} nm"))?;
            let r = lifshitz::compute(&system).with_context(|| format!("{} at {a} nm", template.variant()))?;
            output::push_row(&mut out, &system, &r);
        }
    }
    write_output(args.output.as_deref().or(config.output.as_deref()), &out)
}

fn sweeps(run: &Run, grid: &[f64]) -> anyhow::Result<Vec<SweepResult>> {
    run.templates
        .iter()
        .map(|t| analysis::sweep_thicknesses(t, grid).with_context(|| format!("{} sweep", t.variant())))
        .collect()
}

fn sweep_csv(results: &[SweepResult]) -> String {
    let mut out = String::from(output::CSV_HEADER);
    for r in results {
        output::push_sweep(&mut out, r);
    }
    out
}

fn maybe_plot(out: &config::Output, title: &str, curves: impl FnOnce() -> anyhow::Result<Vec<SweepResult>>) -> anyhow::Result<()> {
    if let Some(path) = &out.plot {
        plot::render(path, title, &curves()?)?;
        log::info!("wrote {}", path.display());
    }
    Ok(())
}

fn title(run: &Run) -> String {
    format!("{} film on {} plate, T = {} K", run.film.name, run.plate.name, run.temperature)
}

fn sweep(args: &args::SweepArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let (lo, hi) = config::range(&args.range, config, (20.0, 200.0))?;
    let n = args.n_points.or(config.n_points).unwrap_or(19);
    let spacing = config::spacing(args.spacing.as_deref(), config)?;
    let grid = analysis::thickness_grid(lo, hi, n, spacing).map_err(|e| Usage(e.to_string()))?;
    let run = config::build_run(&args.system, config, lo.max(lifshitz::MIN_THICKNESS_NM), false)?;
    let results = sweeps(&run, &grid)?;
    let out = config::output(&args.out, config, "sweep");
    write_output(out.path.as_deref(), &sweep_csv(&results))?;
    maybe_plot(&out, &title(&run), || Ok(results))
}

/// Curves for the plot of an analysis command over its search range.
fn range_curves(run: &Run, lo: f64, hi: f64) -> anyhow::Result<Vec<SweepResult>> {
    sweeps(run, &analysis::thickness_grid(lo, hi, 60, Spacing::Linear)?)
}

fn sign_change(args: &args::SignChangeArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let (lo, hi) = config::range(&args.range, config, (10.0, 40.0))?;
    let tol = args.tol.or(config.tol).unwrap_or(analysis::SIGN_CHANGE_TOLERANCE);
    let run = config::build_run(&args.system, config, lo.max(lifshitz::MIN_THICKNESS_NM), false)?;
    let mut out = String::from("variant,film,plate,temperature_K,crossing_nm,bracket_lo_nm,bracket_hi_nm,sign_below,sign_above\n");
    let mut missing = Vec::new();
    for t in &run.templates {
        match analysis::find_sign_change(t, lo, hi, tol) {
            Ok(r) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.variant,
                run.film.name,
                run.plate.name,
                sci(run.temperature),
                sci(r.crossing_thickness),
                sci(r.bracket_lo),
                sci(r.bracket_hi),
                r.sign_below,
                r.sign_above
            )?,
            Err(e @ Error::NoCrossing { .. }) => missing.push(format!("{}: {e}", t.variant())),
            Err(e) => return Err(e).with_context(|| format!("{} sign change", t.variant())),
        }
    }
    let o = config::output(&args.out, config, "sign_change");
    write_output(o.path.as_deref(), &out)?;
    maybe_plot(&o, &title(&run), || range_curves(&run, lo, hi))?;
    if missing.is_empty() {
        Ok(())
    } else {
        Err(anyhow::anyhow!(missing.join("; ")))
    }
}

fn extremum(args: &args::RangeCommandArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let (lo, hi) = config::range(&args.range, config, (12.0, 35.0))?;
    let run = config::build_run(&args.system, config, lo.max(lifshitz::MIN_THICKNESS_NM), false)?;
    let mut out = String::from("variant,film,plate,temperature_K,thickness_nm,free_energy_J_per_m2,kind\n");
    for t in &run.templates {
        let e = analysis::find_extremum(t, lo, hi).with_context(|| format!("{} extremum", t.variant()))?;
        let kind = match e.kind {
            analysis::ExtremumKind::Maximum => "maximum",
            analysis::ExtremumKind::Minimum => "minimum",
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{kind}",
            t.variant(),
            run.film.name,
            run.plate.name,
            sci(run.temperature),
            sci(e.thickness),
            sci(e.value)
        )?;
    }
    let o = config::output(&args.out, config, "extremum");
    write_output(o.path.as_deref(), &out)?;
    maybe_plot(&o, &title(&run), || range_curves(&run, lo, hi))
}

fn onset(args: &args::OnsetArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let (lo, hi) = config::range(&args.range, config, (lifshitz::MIN_THICKNESS_NM, 300.0))?;
    let threshold = args.threshold.or(config.threshold).unwrap_or(0.01);
    let run = config::build_run(&args.system, config, lo.max(lifshitz::MIN_THICKNESS_NM), false)?;
    let mut out = String::from("variant,film,plate,temperature_K,threshold,onset_nm\n");
    for t in &run.templates {
        let a = analysis::classical_onset(t, threshold, lo, hi).with_context(|| format!("{} onset", t.variant()))?;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            t.variant(),
            run.film.name,
            run.plate.name,
            sci(run.temperature),
            sci(threshold),
            sci(a)
        )?;
    }
    let o = config::output(&args.out, config, "onset");
    write_output(o.path.as_deref(), &out)?;
    maybe_plot(&o, &title(&run), || range_curves(&run, lo, hi))
}

fn ratios(args: &args::RatiosArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let mut thicknesses = args.a.clone();
    if thicknesses.is_empty() {
        thicknesses = config.thicknesses();
    }
    if thicknesses.is_empty() {
        thicknesses = vec![50.0, 100.0];
    }
    let run = config::build_run(&args.system, config, lifshitz::MIN_THICKNESS_NM, true)?;
    let report = analysis::model_ratio_report(&run.film, &run.plate, &thicknesses, run.temperature)?;
    if report.data_missing {
        eprintln!(
            "note: no optical tables for {}/{}; only simple-model ratios are reported",
            report.film, report.plate
        );
    }
    let o = config::output(&args.out, config, "ratios");
    write_output(o.path.as_deref(), &output::ratio_csv(&report))?;
    maybe_plot(&o, &title(&run), || {
        let variants: &[_] = if report.data_missing {
            &casimir_film::ModelVariant::ALL[..2]
        } else {
            &casimir_film::ModelVariant::ALL
        };
        let mut grid = thicknesses.clone();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        variants
            .iter()
            .map(|&v| {
                let mut t = FilmSystem::new(run.film.clone(), run.plate.clone(), v, grid[0], run.temperature)?;
                if run.allow_thin {
                    t = t.allowing_thin_films();
                }
                Ok(analysis::sweep_thicknesses(&t, &grid)?)
            })
            .collect()
    })
}

fn check(args: &args::CheckArgs, config: &ConfigFile) -> anyhow::Result<()> {
    let data = config::data_map(&args.data, config)?;
    let temperature = config::temperature(args.temperature, config)?;
    let metals = casimir_film::materials::builtin_names()
        .map(|name| config::resolve_material(name, None, &data, false))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let lines = analysis::published_checks(&metals, temperature)?;
    let mut out = String::new();
    for line in &lines {
        writeln!(out, "{line}")?;
    }
    write_output(args.output.as_deref().or(config.output.as_deref()), &out)
}

fn synth_table(args: &args::SynthArgs) -> anyhow::Result<()> {
    let m = builtin_material(&args.material)?;
    let label = format!("synthetic Drude {} (wp={} eV, gamma={} eV)", m.name, m.drude.plasma_frequency, m.drude.relaxation_frequency);
    let table = synthetic_drude_table(&m.drude, args.e_min, args.e_max, args.rows, label.clone())
        .map_err(|e| Usage(e.to_string()))?;
    let mut out = String::from("# SYNTHETIC optical table, not measured data.\n");
    out.push_str(&table.to_text());
    write_output(args.output.as_deref(), &out)
}
