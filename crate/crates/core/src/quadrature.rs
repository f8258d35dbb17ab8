//! Adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
//!
//! Panels are refined by bisecting the one with the largest error estimate;
//! ties go to the lowest index, so the panel sequence is fully deterministic.

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over consecutive panels delimited by `breakpoints`
/// (at least two, ascending) until the summed error estimate is below
/// `max(tol.abs, tol.rel·|value|)`.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
    max_panels: usize,
) -> Result<Integral> {
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut panels: Vec<Panel> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    if panels.is_empty() {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    loop {
        let (value, error) = totals(&panels);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature { value, error });
        }
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Integral {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::Quadrature { value, error });
        }
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.error > panels[best].error { i } else { best });
        let Panel { lo, hi, .. } = panels[worst];
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval cannot be split further in f64.
            return Err(Error::Quadrature { value, error });
        }
        panels[worst] = gauss_kronrod(&f, lo, mid);
        panels.insert(worst + 1, gauss_kronrod(&f, mid, hi));
    }
}

pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
    max_panels: usize,
) -> Result<Integral> {
    integrate_with_breakpoints(f, &[lo, hi], tol, max_panels)
}

fn totals(panels: &[Panel]) -> (f64, f64) {
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
