//! How well `li⁻¹(n)` tracks the `n`-th prime, and the series built on that
//! gap: error tables, a log-log exponent fit, the comparison between
//! `Σ p_n^{-s}` and `Σ li⁻¹(n)^{-s}`, and sum-versus-integral checks.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::report::{csv_f64, IdentityReport, SeriesResult};
use crate::special_fn::{
    check_point, exp_integral_e1, integrate, integrate_to_infinity, li_inverse, li_inverse_tol, ComplexPoint,
    QuadratureConfig,
};

/// Exponent used for `scaled_err`.
pub const SCALE_EXPONENT: f64 = 0.52;
/// Default `ε` for the comparison exponent `σ + 1/2 - ε`.
pub const DEFAULT_EPSILON: f64 = 0.05;
/// Fewest rows accepted by the exponent fit.
pub const MIN_FIT_ROWS: usize = 10;
/// Step for the central difference in [`integral_identity_check`].
pub const DERIVATIVE_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub n: u64,
    pub p_n: u64,
    pub li_inv: f64,
    /// `|li_inv - p_n|`.
    pub abs_err: f64,
    /// `abs_err / n^0.52`.
    pub scaled_err: f64,
}

impl ErrorRow {
    pub fn csv(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.p_n, csv_f64(self.li_inv), csv_f64(self.abs_err), csv_f64(self.scaled_err))
    }
}

fn li_inv_n(n: u64) -> Result<f64> {
    let y = n as f64;
    li_inverse(y, li_inverse_tol(y))
}

fn check_rows(n_min: u64, n_max: u64, table: &PrimeTable) -> Result<()> {
    if n_min == 0 || n_max < n_min {
        return Err(Error::domain(format!("row range must satisfy 1 <= n_min <= n_max (got {n_min}..{n_max})")));
    }
    if n_max > table.count() {
        return Err(Error::InsufficientTable { needed: n_max, available: table.count(), limit: table.limit() });
    }
    Ok(())
}

/// Rows for `n ∈ [n_min, n_max]`, in order. Rows are computed in parallel.
pub fn error_rows(n_min: u64, n_max: u64, table: &PrimeTable) -> Result<Vec<ErrorRow>> {
    check_rows(n_min, n_max, table)?;
    let primes: Vec<u64> = table.primes().skip((n_min - 1) as usize).take((n_max - n_min + 1) as usize).collect();
    primes
        .into_par_iter()
        .enumerate()
        .map(|(i, p_n)| {
            let n = n_min + i as u64;
            let li_inv = li_inv_n(n)?;
            let abs_err = (li_inv - p_n as f64).abs();
            Ok(ErrorRow { n, p_n, li_inv, abs_err, scaled_err: abs_err / (n as f64).powf(SCALE_EXPONENT) })
        })
        .collect()
}

/// One row per `n ∈ [1, n_max]`.
pub fn approx_error_table(n_max: u64, table: &PrimeTable) -> Result<Vec<ErrorRow>> {
    error_rows(1, n_max, table)
}

/// Least-squares slope of `ln abs_err` against `ln n`. Points with a zero or
/// non-finite error are skipped.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(n, e)| n > 0.0 && e > 0.0 && e.is_finite() && n.is_finite())
        .map(|&(n, e)| (n.ln(), e.ln()))
        .collect();
    if usable.len() < MIN_FIT_ROWS {
        return Err(Error::DegenerateFit { usable: usable.len(), required: MIN_FIT_ROWS });
    }
    let m = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / m;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, y) in &usable {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit { usable: 1, required: MIN_FIT_ROWS });
    }
    Ok(sxy / sxx)
}

/// Fitted exponent `α` in `|li⁻¹(n) - p_n| ≈ C n^α` over `[n_min, n_max]`.
pub fn exponent_fit(n_min: u64, n_max: u64, table: &PrimeTable) -> Result<f64> {
    if n_min < 10 || n_max <= n_min {
        return Err(Error::domain(format!("exponent fit needs n_max > n_min >= 10 (got {n_min}..{n_max})")));
    }
    let rows = error_rows(n_min, n_max, table)?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.abs_err)).collect();
    fit_exponent(&pts)
}

/// `Σ p_n^{-s}` against `Σ li⁻¹(n)^{-s}` with the majorant
/// `Σ |s| |1 - p_n/L_n| p_n^{-σ} + Σ |s| |1 - L_n/p_n| L_n^{-σ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub report: IdentityReport,
    pub majorant: f64,
}

pub fn comparison_series(s: ComplexPoint, n_max: u64, table: &PrimeTable) -> Result<ComparisonReport> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("comparison series requires Re(s) > 1, got {s}")));
    }
    let rows = approx_error_table(n_max, table)?;
    let (mut lhs, mut rhs) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut majorant = 0.0;
    let ns = s.norm();
    for r in &rows {
        let p = r.p_n as f64;
        let l = r.li_inv;
        lhs += (-s * p.ln()).exp();
        rhs += (-s * l.ln()).exp();
        majorant += ns * (1.0 - p / l).abs() * p.powf(-s.re) + ns * (1.0 - l / p).abs() * l.powf(-s.re);
    }
    Ok(ComparisonReport { report: IdentityReport::new(s, lhs, rhs, n_max, n_max, majorant), majorant })
}

/// Partial sums of `Σ |L_n - p_n| / L_n^{σ+1}` and `Σ |L_n - p_n| / p_n^{σ+1}`.
///
/// Each tail is estimated by comparison with `C Σ_{n>N} n^{-a}`,
/// `a = σ + 1/2 - ε`, where `C` is the largest `term_n · n^a` seen. The
/// series counts as converged when `a > 1`, that is when this comparison
/// tail is finite.
pub fn error_series_partial(
    sigma: f64,
    epsilon: f64,
    n_max: u64,
    table: &PrimeTable,
) -> Result<(SeriesResult<f64>, SeriesResult<f64>)> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::domain(format!("error series requires sigma > 0, got {sigma}")));
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::domain(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    let rows = approx_error_table(n_max, table)?;
    let a = sigma + 0.5 - epsilon;
    let series = |den: &dyn Fn(&ErrorRow) -> f64| {
        let (mut sum, mut c) = (0.0, 0.0f64);
        for r in &rows {
            let term = r.abs_err / den(r).powf(sigma + 1.0);
            sum += term;
            c = c.max(term * (r.n as f64).powf(a));
        }
        let nn = n_max as f64;
        let (tail, converged) = if a > 1.0 { (c * nn.powf(1.0 - a) / (a - 1.0), true) } else { (f64::INFINITY, false) };
        SeriesResult { value: sum, terms_used: n_max, tail_estimate: tail, converged }
    };
    Ok((series(&|r| r.li_inv), series(&|r| r.p_n as f64)))
}

/// `Σ_{n<=N} L_n^{-s}` against `∫_1^{N+1} L(t)^{-s} dt` with the interval
/// bound `Σ_n ½ |s| ln L(n+1) · L(n)^{-σ-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumIntegralReport {
    pub report: IdentityReport,
    pub bound: f64,
}

/// `∫_{L(a)}^{L(b)} u^{-s} / ln u du`, which is `∫_a^b L(t)^{-s} dt` after
/// substituting `u = L(t)`.
fn li_inv_power_integral(s: Complex64, la: f64, lb: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let panels = ((lb / la).ln().ceil() as usize).max(1) + (s.im.abs() * (lb / la).ln()).ceil() as usize;
    integrate(|u: f64| (-s * u.ln()).exp() / u.ln(), la, lb, panels.min(4096), cfg)
}

pub fn integral_vs_sum(s: ComplexPoint, n_max: u64, cfg: &QuadratureConfig) -> Result<SumIntegralReport> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("sum-vs-integral requires Re(s) > 1, got {s}")));
    }
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let l: Vec<f64> = (1..=n_max + 1).into_par_iter().map(li_inv_n).collect::<Result<_>>()?;
    let ns = s.norm();
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    for i in 0..n_max as usize {
        lhs += (-s * l[i].ln()).exp();
        bound += 0.5 * ns * l[i + 1].ln() * l[i].powf(-s.re - 1.0);
    }
    let rhs = li_inv_power_integral(s, l[0], l[n_max as usize], cfg)?;
    Ok(SumIntegralReport { report: IdentityReport::new(s, lhs, rhs, n_max, n_max, bound), bound })
}

/// `(|L(n)^{-s} - ∫_n^{n+1} L(t)^{-s} dt|, ½ |s| ln L(n+1) L(n)^{-σ-1})` for
/// one unit interval.
pub fn interval_difference(s: ComplexPoint, n: u64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    check_point(s)?;
    if n == 0 || s.re <= 0.0 {
        return Err(Error::domain(format!("interval check needs n >= 1 and Re(s) > 0 (got n = {n}, s = {s})")));
    }
    let (a, b) = (li_inv_n(n)?, li_inv_n(n + 1)?);
    let integral = li_inv_power_integral(s, a, b, cfg)?;
    let diff = ((-s * a.ln()).exp() - integral).norm();
    Ok((diff, 0.5 * s.norm() * b.ln() * a.powf(-s.re - 1.0)))
}

/// `∫_2^∞ u^{-s}/ln u du` by quadrature against `E₁((s-1) ln 2)`, and its
/// central-difference derivative against `-2^{1-s}/(s-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralIdentityReport {
    pub s: f64,
    pub value: f64,
    pub e1: f64,
    pub value_residual: f64,
    pub derivative: f64,
    pub closed_derivative: f64,
    pub derivative_residual: f64,
}

impl IntegralIdentityReport {
    pub fn value_report(&self) -> IdentityReport {
        IdentityReport::new(Complex64::new(self.s, 0.0), self.value.into(), self.e1.into(), 0, 0, 0.0)
    }

    pub fn derivative_report(&self) -> IdentityReport {
        IdentityReport::new(Complex64::new(self.s, 0.0), self.derivative.into(), self.closed_derivative.into(), 0, 0, 0.0)
    }
}

/// `∫_2^∞ u^{-s}/ln u du`, integrated as `∫_{ln 2}^∞ e^{(1-s)v}/v dv`.
pub fn log_power_integral(s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::domain(format!("integral requires s > 1, got {s}")));
    }
    integrate_to_infinity(|v: f64| ((1.0 - s) * v).exp() / v, std::f64::consts::LN_2, cfg)
}

pub fn integral_identity_check(s: f64, cfg: &QuadratureConfig) -> Result<IntegralIdentityReport> {
    if !(s > 1.0 + DERIVATIVE_STEP && s.is_finite()) {
        return Err(Error::domain(format!("integral identity requires s > 1 + {DERIVATIVE_STEP}, got {s}")));
    }
    let value = log_power_integral(s, cfg)?;
    let e1 = exp_integral_e1((s - 1.0) * std::f64::consts::LN_2)?;
    let h = DERIVATIVE_STEP;
    let derivative = (log_power_integral(s + h, cfg)? - log_power_integral(s - h, cfg)?) / (2.0 * h);
    let closed_derivative = -(2f64).powf(1.0 - s) / (s - 1.0);
    Ok(IntegralIdentityReport {
        s,
        value,
        e1,
        value_residual: (value - e1).abs(),
        derivative,
        closed_derivative,
        derivative_residual: (derivative - closed_derivative).abs(),
    })
}
