use std::path::Path;

use anyhow::anyhow;
use casimir_film::analysis::SweepResult;
use plotters::prelude::*;

fn bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

fn label(c: &SweepResult) -> String {
    format!("{}/{} {}", c.film, c.plate, c.variant)
}

/// Two panels: |F| on a log axis and P on a linear axis, one line per
/// curve. Simple-model curves are dashed, optical-data curves solid.
pub fn render(path: &Path, title: &str, curves: &[SweepResult]) -> anyhow::Result<()> {
    let err = |e: &dyn std::fmt::Display| anyhow!("plot {}: {e}", path.display());
    let (x_lo, x_hi) = bounds(curves.iter().flat_map(|c| c.thicknesses.iter().copied()))
        .ok_or_else(|| anyhow!("nothing to plot"))?;

    let root = SVGBackend::new(path, (1200, 480)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| err(&e))?;
    let root = root.titled(title, ("sans-serif", 22)).map_err(|e| err(&e))?;
    let (left, right) = root.split_horizontally(600);

    let (f_lo, f_hi) = bounds(curves.iter().flat_map(|c| c.free_energy.iter().map(|f| f.abs())).filter(|f| *f > 0.0))
        .unwrap_or((1e-20, 1e-19));
    let mut chart = ChartBuilder::on(&left)
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(80)
        .build_cartesian_2d(x_lo..x_hi, (f_lo * 0.8..f_hi * 1.25).log_scale())
        .map_err(|e| err(&e))?;
    chart
        .configure_mesh()
        .x_desc("a [nm]")
        .y_desc("|F| [J/m²]")
        .y_label_formatter(&|y| format!("{y:.0e}"))
        .draw()
        .map_err(|e| err(&e))?;
    for (i, c) in curves.iter().enumerate() {
        let color = Palette99::pick(i).to_rgba();
        let points: Vec<(f64, f64)> = c
            .thicknesses
            .iter()
            .zip(&c.free_energy)
            .map(|(&a, &f)| (a, f.abs()))
            .filter(|&(_, f)| f > 0.0)
            .collect();
        let style = color.stroke_width(2);
        let series = if c.variant.is_data() {
            chart.draw_series(LineSeries::new(points, style))
        } else {
            chart.draw_series(DashedLineSeries::new(points, 8, 5, style))
        };
        series
            .map_err(|e| err(&e))?
            .label(label(c))
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.85))
        .border_style(BLACK)
        .draw()
        .map_err(|e| err(&e))?;

    let (p_lo, p_hi) = bounds(curves.iter().flat_map(|c| c.pressure.iter().copied())).unwrap_or((-1.0, 1.0));
    let pad = 0.05 * (p_hi - p_lo).max(p_hi.abs().max(p_lo.abs()) * 1e-3).max(f64::MIN_POSITIVE);
    let mut chart = ChartBuilder::on(&right)
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(80)
        .build_cartesian_2d(x_lo..x_hi, (p_lo - pad)..(p_hi + pad))
        .map_err(|e| err(&e))?;
    chart
        .configure_mesh()
        .x_desc("a [nm]")
        .y_desc("P [Pa]")
        .y_label_formatter(&|y| format!("{y:.2e}"))
        .draw()
        .map_err(|e| err(&e))?;
    for (i, c) in curves.iter().enumerate() {
        let color = Palette99::pick(i).to_rgba();
        let points: Vec<(f64, f64)> = c.thicknesses.iter().copied().zip(c.pressure.iter().copied()).collect();
        let style = color.stroke_width(2);
        let series = if c.variant.is_data() {
            chart.draw_series(LineSeries::new(points, style))
        } else {
            chart.draw_series(DashedLineSeries::new(points, 8, 5, style))
        };
        series
            .map_err(|e| err(&e))?
            .label(label(c))
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.85))
        .border_style(BLACK)
        .draw()
        .map_err(|e| err(&e))?;
    root.present().map_err(|e| err(&e))?;
    Ok(())
}
