//! Result records shared across modules and their CSV encodings.

use num_complex::Complex64;

/// A truncated series: value, how many terms went in, and an estimate of
/// what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T = Complex64> {
    pub value: T,
    pub terms_used: u64,
    /// Estimated magnitude of the omitted tail.
    pub tail_estimate: f64,
    /// Set only when `tail_estimate` is within the tolerance the series was
    /// asked to meet.
    pub converged: bool,
}

/// Two independently computed sides of an identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub s: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs - rhs|`.
    pub residual: f64,
    pub terms_lhs: u64,
    pub terms_rhs: u64,
    pub tail_estimate: f64,
}

impl IdentityReport {
    pub fn new(s: Complex64, lhs: Complex64, rhs: Complex64, terms_lhs: u64, terms_rhs: u64, tail_estimate: f64) -> Self {
        Self { s, lhs, rhs, residual: (lhs - rhs).norm(), terms_lhs, terms_rhs, tail_estimate }
    }
}

pub const ERROR_TABLE_HEADER: &str = "n,p_n,li_inv,abs_err,scaled_err";
pub const IDENTITY_HEADER: &str = "s_re,s_im,lhs_re,lhs_im,rhs_re,rhs_im,residual,tail";

/// Shortest round-trip text for `v`; exponent form outside `[1e-5, 1e15)`.
pub fn csv_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// One CSV line (no trailing newline) in [`IDENTITY_HEADER`] order.
pub fn identity_csv_row(r: &IdentityReport) -> String {
    let mut out = String::new();
    let fields = [r.s.re, r.s.im, r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.residual, r.tail_estimate];
    for (i, v) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&csv_f64(*v));
    }
    out
}
