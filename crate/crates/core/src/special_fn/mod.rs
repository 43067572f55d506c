//! Real and complex special functions: the offset logarithmic integral and
//! its inverse, the Riemann zeta function on `Re(s) > 0`, its logarithmic
//! derivative, and the exponential integral `E₁`.

mod expint;
mod quad;
mod zeta;

pub use expint::{exp_integral_e1, exp_integral_e1_complex};
pub use quad::{integrate, integrate_to_infinity, QuadValue, QuadratureConfig};
pub use zeta::{
    eta_prefactor, ln_gamma, zeta, zeta_error_bound, zeta_log_deriv, DEFAULT_ZETA_TERMS, ZERO_GUARD,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point `s = σ + it`; both components must be finite.
pub type ComplexPoint = Complex64;

/// A finite real argument.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealArg(f64);

impl RealArg {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::domain(format!("argument must be finite, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for RealArg {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

pub(crate) fn check_point(s: ComplexPoint) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("complex argument must be finite, got {s}")))
    }
}

/// Offset logarithmic integral `li(x) = ∫₂ˣ dt / ln t`, so `li(2) = 0`.
///
/// Integrated in the variable `u = ln t` (integrand `eᵘ/u`), which keeps
/// panels well scaled for large `x`.
pub fn li(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let x = RealArg::new(x)?.value();
    if x < 2.0 {
        return Err(Error::domain(format!("li requires x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let lo = std::f64::consts::LN_2;
    let hi = x.ln();
    let panels = (hi - lo).ceil().max(1.0) as usize;
    integrate(|u: f64| u.exp() / u, lo, hi, panels, cfg)
}

/// Default absolute tolerance on `|li(t) - y|` used by callers that do not
/// pick their own.
pub const DEFAULT_LI_INV_TOL: f64 = 1e-11;

const LI_INV_MAX_ITER: usize = 200;

/// Tolerance scaled to the magnitude of `y`; `li` itself is only good to a
/// few ulps relative.
pub fn li_inverse_tol(y: f64) -> f64 {
    DEFAULT_LI_INV_TOL.max(1e-12 * y.abs())
}

/// Functional inverse of [`li`]: the `t >= 2` with `|li(t) - y| <= tol`.
///
/// Safeguarded Newton iteration `t ← t - (li(t) - y)·ln t` inside a bracket
/// `[lo, hi]`; any Newton step leaving the bracket is replaced by bisection.
pub fn li_inverse(y: f64, tol: f64) -> Result<f64> {
    let y = RealArg::new(y)?.value();
    if y < 0.0 {
        return Err(Error::domain(format!("li_inverse requires y >= 0, got {y}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("li_inverse tolerance must be positive, got {tol}")));
    }
    if y == 0.0 {
        return Ok(2.0);
    }
    let cfg = QuadratureConfig::default();
    let mut t = if y >= 2.0 { (y * (y + 2.0).ln()).max(3.0) } else { 3.0 };

    // Bracket: li(lo) <= y < li(hi).
    let mut lo = 2.0;
    let mut hi = t;
    let mut r_hi = li(hi, &cfg)? - y;
    while r_hi <= 0.0 {
        if r_hi.abs() <= tol {
            return Ok(hi);
        }
        lo = hi;
        hi *= 2.0;
        r_hi = li(hi, &cfg)? - y;
    }
    t = t.clamp(lo, hi);

    for _ in 0..LI_INV_MAX_ITER {
        let r = li(t, &cfg)? - y;
        if r.abs() <= tol {
            return Ok(t);
        }
        if r > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let newton = t - r * t.ln();
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if next == t || hi - lo <= 2.0 * f64::EPSILON * hi {
            return Err(Error::NoConvergence(format!(
                "li_inverse({y}) stalled at t = {t} with residual {r:e} > tol {tol:e}"
            )));
        }
        t = next;
    }
    Err(Error::NoConvergence(format!("li_inverse({y}) exceeded {LI_INV_MAX_ITER} iterations")))
}
