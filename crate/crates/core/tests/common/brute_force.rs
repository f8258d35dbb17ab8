//! Fixed-grid evaluation of the Lifshitz sums directly in k⊥, written
//! without any of the crate's code: Gauss-Legendre panels of fixed width,
//! a hard Matsubara cutoff, and Kahan summation.

use std::f64::consts::PI;

const KB: f64 = 8.617333262e-5;
const HBAR_C: f64 = 197.3269804;
const EV: f64 = 1.602176634e-19;
const PANELS: usize = 60;
const ORDER: usize = 16;
/// Terms and k⊥ range stop where the exponential factor drops below e^-46.
const DECAY: f64 = 46.0;

#[derive(Clone, Copy)]
pub struct Metal {
    pub wp: f64,
    pub gamma: f64,
}

fn gauss_legendre() -> ([f64; ORDER], [f64; ORDER]) {
    let mut x = [0.0; ORDER];
    let mut w = [0.0; ORDER];
    for i in 0..ORDER {
        let mut z = (PI * (i as f64 + 0.75) / (ORDER as f64 + 0.5)).cos();
        loop {
            let (mut p0, mut p1) = (1.0, z);
            for n in 2..=ORDER {
                let p2 = ((2 * n - 1) as f64 * z * p1 - (n - 1) as f64 * p0) / n as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = ORDER as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
    }
    (x, w)
}

struct Kahan(f64, f64);

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.1;
        let t = self.0 + y;
        self.1 = (t - self.0) - y;
        self.0 = t;
    }
}

/// Returns (F [J/m²], P [Pa]) for `film` of thickness `a` nm on `plate`.
pub fn evaluate(film: Metal, plate: Metal, plasma: bool, a: f64, t: f64) -> (f64, f64) {
    let (gx, gw) = gauss_legendre();
    let kt = KB * t;
    let step = 2.0 * PI * kt;
    let (mut f_sum, mut p_sum) = (Kahan(0.0, 0.0), Kahan(0.0, 0.0));
    let mut l = 0usize;
    loop {
        let xi = step * l as f64;
        if 2.0 * a * xi / HBAR_C > DECAY {
            break;
        }
        let weight = if l == 0 { 0.5 } else { 1.0 };
        // (ε ξ²/c² for plate, film, vacuum; ε_plate/ε_film; ε_vac/ε_film)
        let (q1, q2, q3, e1, e3) = if l == 0 {
            if plasma {
                let (p1, p2) = ((plate.wp / HBAR_C).powi(2), (film.wp / HBAR_C).powi(2));
                (p1, p2, 0.0, (plate.wp / film.wp).powi(2), 0.0)
            } else {
                (0.0, 0.0, 0.0, f64::NAN, 0.0)
            }
        } else {
            let eps = |m: Metal| {
                let g = if plasma { 0.0 } else { m.gamma };
                1.0 + m.wp * m.wp / (xi * (xi + g))
            };
            let (eps1, eps2) = (eps(plate), eps(film));
            let x2 = (xi / HBAR_C).powi(2);
            (eps1 * x2, eps2 * x2, x2, eps1 / eps2, 1.0 / eps2)
        };
        let kmax = ((DECAY / (2.0 * a) + q2.sqrt()).powi(2) - q2).sqrt();
        let width = kmax / PANELS as f64;
        let (mut ft, mut pt) = (0.0, 0.0);
        for panel in 0..PANELS {
            for j in 0..ORDER {
                let k = width * (panel as f64 + 0.5 * (gx[j] + 1.0));
                let w = 0.5 * width * gw[j];
                let k1 = (k * k + q1).sqrt();
                let k2 = (k * k + q2).sqrt();
                let k3 = (k * k + q3).sqrt();
                let e = (-2.0 * a * k2).exp();
                let products = if l == 0 && !plasma {
                    let r_d = (plate.wp.powi(2) * film.gamma - film.wp.powi(2) * plate.gamma)
                        / (plate.wp.powi(2) * film.gamma + film.wp.powi(2) * plate.gamma);
                    [-r_d, 0.0]
                } else {
                    let tm = |ratio: f64, kn: f64| {
                        if ratio == 0.0 {
                            -1.0
                        } else {
                            (ratio * k2 - kn) / (ratio * k2 + kn)
                        }
                    };
                    let te = |kn: f64| (k2 - kn) / (k2 + kn);
                    [tm(e1, k1) * tm(e3, k3), te(k1) * te(k3)]
                };
                for r in products {
                    ft += w * k * (1.0 - r * e).ln();
                    pt += w * k * k2 * r * e / (1.0 - r * e);
                }
            }
        }
        f_sum.add(weight * ft);
        p_sum.add(weight * pt);
        l += 1;
    }
    let kt_j = kt * EV;
    (kt_j / (2.0 * PI) * f_sum.0 * 1e18, -kt_j / PI * p_sum.0 * 1e27)
}
