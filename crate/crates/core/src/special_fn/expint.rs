//! Exponential integral `E₁(z) = ∫_z^∞ e^{-v}/v dv`.
//!
//! Power series below |z| = 1, Lentz continued fraction above.

use num_complex::Complex64;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 10_000;

fn e1_series(z: Complex64) -> Complex64 {
    // E₁(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k·k!)
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..MAX_ITER {
        term *= -z / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_continued_fraction(z: Complex64) -> Result<Complex64> {
    // E₁(z) = e^{-z} / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...)))
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (d * an + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < f64::EPSILON {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NoConvergence(format!("E1 continued fraction at z = {z}")))
}

/// `E₁(x)` for real `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("E1 requires x > 0, got {x}")));
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    let z = Complex64::new(x, 0.0);
    let v = if x <= 1.0 { e1_series(z) } else { e1_continued_fraction(z)? };
    Ok(v.re)
}

/// `E₁(z)` for complex `z` with `Re(z) > 0` (principal branch).
pub fn exp_integral_e1_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::domain(format!("complex E1 requires finite z with Re(z) > 0, got {z}")));
    }
    if z.norm() <= 1.0 {
        Ok(e1_series(z))
    } else {
        e1_continued_fraction(z)
    }
}
