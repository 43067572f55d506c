//! Riemann zeta on `Re(s) > 0` through the Dirichlet eta function.
//!
//! `η(s) = Σ (-1)^k/(k+1)^s` is accelerated with the Borwein/Cohen–Villegas–
//! Zagier weights
//!
//! ```text
//! d_k = n Σ_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)
//! η(s) ≈ (1/d_n) Σ_{k<n} (-1)^k (d_n - d_k) / (k+1)^s
//! ```
//!
//! and `ζ(s) = η(s) / (1 - 2^{1-s})`. The derivative is taken term by term.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::check_point;
use crate::error::{Error, Result};

pub const DEFAULT_ZETA_TERMS: usize = 64;

/// `|ζ(s)|` below this is treated as a zero.
pub const ZERO_GUARD: f64 = 1e-10;

const PREFACTOR_GUARD: f64 = 1e-12;

fn borwein_weights(n: usize) -> Vec<f64> {
    // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), term_0 = 1
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let nf = n as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    d
}

/// `η(s)` and `η'(s)`.
fn eta_and_derivative(s: Complex64, terms: usize) -> (Complex64, Complex64) {
    let d = borwein_weights(terms);
    let dn = d[terms];
    let mut eta = Complex64::new(0.0, 0.0);
    let mut deta = Complex64::new(0.0, 0.0);
    for k in 0..terms {
        let ln_k1 = ((k + 1) as f64).ln();
        let pow = (-s * ln_k1).exp();
        let w = (dn - d[k]) / dn;
        let w = if k % 2 == 0 { w } else { -w };
        eta += pow * w;
        deta -= pow * (w * ln_k1);
    }
    (eta, deta)
}

/// `1 - 2^{1-s}`, the factor relating η and ζ.
pub fn eta_prefactor(s: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * LN_2).exp()
}

fn check_zeta_domain(s: Complex64, terms: usize) -> Result<Complex64> {
    check_point(s)?;
    if terms == 0 {
        return Err(Error::domain("zeta needs at least one series term"));
    }
    if (s - 1.0).norm() < PREFACTOR_GUARD {
        return Err(Error::Pole(format!("zeta has a simple pole at s = 1 (got {s})")));
    }
    if s.re <= 0.0 {
        return Err(Error::domain(format!("zeta requires Re(s) > 0, got {s}")));
    }
    let pre = eta_prefactor(s);
    if pre.norm() < PREFACTOR_GUARD {
        return Err(Error::NearSingular { re: s.re, im: s.im, magnitude: pre.norm() });
    }
    Ok(pre)
}

/// Riemann ζ(s) for `Re(s) > 0`, `s ≠ 1`. Accuracy is governed by
/// [`zeta_error_bound`].
pub fn zeta(s: Complex64, terms: usize) -> Result<Complex64> {
    let pre = check_zeta_domain(s, terms)?;
    let (eta, _) = eta_and_derivative(s, terms);
    Ok(eta / pre)
}

/// ζ'(s)/ζ(s) from the term-wise derivative of the eta series.
pub fn zeta_log_deriv(s: Complex64, terms: usize) -> Result<Complex64> {
    let pre = check_zeta_domain(s, terms)?;
    let (eta, deta) = eta_and_derivative(s, terms);
    let z = eta / pre;
    if z.norm() < ZERO_GUARD {
        return Err(Error::NearZero(format!("|zeta({s})| = {:e} below {ZERO_GUARD:e}", z.norm())));
    }
    // d/ds (1 - 2^{1-s}) = 2^{1-s} ln 2
    let dpre = (Complex64::new(1.0, 0.0) - pre) * LN_2;
    Ok(deta / eta - dpre / pre)
}

/// Bound on `|ζ(s) - zeta(s, terms)|`:
/// `3 (1 + 2|t|) e^{π|t|/2} / ((3+√8)^n |Γ(s)| |1 - 2^{1-s}|)`.
pub fn zeta_error_bound(s: Complex64, terms: usize) -> Result<f64> {
    let pre = check_zeta_domain(s, terms)?;
    let t = s.im.abs();
    let ln_bound = 3.0f64.ln() + (1.0 + 2.0 * t).ln() + PI * t / 2.0
        - terms as f64 * (3.0 + 8.0f64.sqrt()).ln()
        - ln_gamma(s).re
        - pre.norm().ln();
    Ok(ln_bound.exp())
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` (principal branch of the real part is what callers use) for `Re(z) > 0`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) = Γ(z+1)/z
        return ln_gamma(z + 1.0) - z.ln();
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}
