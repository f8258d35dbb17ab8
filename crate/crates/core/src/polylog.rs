//! Trilogarithm Li₃(x) on the real interval [-1, 1].

use std::f64::consts::PI;

use crate::constants::ZETA_3;

const ZETA_2: f64 = PI * PI / 6.0;

/// Li₃(x) = Σ_{k≥1} x^k / k³ for x ∈ [-1, 1]; NaN outside.
pub fn li3(x: f64) -> f64 {
    if !(-1.0..=1.0).contains(&x) {
        return f64::NAN;
    }
    if x == 1.0 {
        ZETA_3
    } else if x.abs() <= 0.5 {
        power_series(x)
    } else if x > 0.0 {
        near_one(x)
    } else {
        // Li₃(x) + Li₃(-x) = Li₃(x²)/4, with x² and -x both in (0.25, 1].
        li3(x * x) / 4.0 - li3(-x)
    }
}

fn power_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = x;
    for k in 1..200 {
        let kf = k as f64;
        let term = power / (kf * kf * kf);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        power *= x;
    }
    sum
}

// ζ(3-k) for k = 3..=16 (zero at even negative arguments).
const ZETA_NEGATIVE: [f64; 14] = [
    -0.5,
    -1.0 / 12.0,
    0.0,
    1.0 / 120.0,
    0.0,
    -1.0 / 252.0,
    0.0,
    1.0 / 240.0,
    0.0,
    -1.0 / 132.0,
    0.0,
    691.0 / 32760.0,
    0.0,
    -1.0 / 12.0,
];

/// Expansion in μ = ln x about x = 1, valid for x ∈ (0.5, 1).
fn near_one(x: f64) -> f64 {
    let mu = x.ln();
    let mut sum = ZETA_3 + ZETA_2 * mu + 0.5 * mu * mu * (1.5 - (-mu).ln());
    let mut power = mu * mu;
    let mut factorial = 2.0;
    for (i, z) in ZETA_NEGATIVE.iter().enumerate() {
        let k = (i + 3) as f64;
        power *= mu;
        factorial *= k;
        sum += z * power / factorial;
    }
    sum
}
