//! Taylor machinery for `f = li⁻¹` through the integer polynomials `Pₙ`.
//!
//! With `g = ln f`, the inverse relation gives `f' = ln f`, hence
//! `g' eᵍ = g`, and every derivative has the form `g⁽ⁿ⁾ = e^{-ng} Pₙ(g)` with
//!
//! ```text
//! P₀(x) = x,    P_{n+1}(x) = x (Pₙ'(x) - n Pₙ(x)).
//! ```
//!
//! Coefficients grow factorially and alternate in sign, so they are kept as
//! exact big integers and only converted to `f64` at evaluation time.
//!
//! The generating function `l(x, y) = Σ Pₙ(x) yⁿ/n!` gives
//! `g(x₀ + y) = l(g(x₀), e^{-g(x₀)} y)`, which [`taylor_step`] uses to walk
//! `li⁻¹` forward without root finding.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::special_fn::{li, li_inverse, li_inverse_tol, QuadratureConfig};

/// Polynomial with exact integer coefficients; `coeffs[i]` multiplies `xⁱ`.
/// Trailing zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Horner evaluation in `f64`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_poly(self, x)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let one = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                1 if one => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if one => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// One step of the recurrence: `P_{n+1} = x (Pₙ' - n Pₙ)`.
pub fn next_pn(p: &IntPolynomial, n: usize) -> IntPolynomial {
    p.derivative().add(&p.scale(&-BigInt::from(n))).mul_x()
}

/// `[P₀, …, P_{n_max}]` with `P₀ = x`.
pub fn pn_polynomials(n_max: usize) -> Vec<IntPolynomial> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(IntPolynomial::x());
    for n in 0..n_max {
        let next = next_pn(&out[n], n);
        out.push(next);
    }
    out
}

/// Horner evaluation with coefficients converted to `f64` on the fly.
pub fn eval_poly(p: &IntPolynomial, x: f64) -> Result<f64> {
    let mut acc = 0.0;
    for c in p.coeffs.iter().rev() {
        let cf = c
            .to_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Overflow(format!("coefficient {c} exceeds f64 range")))?;
        acc = acc * x + cf;
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::Overflow(format!("polynomial value at x = {x} overflows f64")))
    }
}

const CACHED_TERMS: usize = 64;

struct PnCache {
    polys: Vec<IntPolynomial>,
    derivs: Vec<IntPolynomial>,
}

fn cache() -> &'static PnCache {
    static CACHE: OnceLock<PnCache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let polys = pn_polynomials(CACHED_TERMS - 1);
        let derivs = polys.iter().map(IntPolynomial::derivative).collect();
        PnCache { polys, derivs }
    })
}

fn with_polys<R>(n_terms: usize, f: impl FnOnce(&[IntPolynomial], &[IntPolynomial]) -> R) -> R {
    if n_terms <= CACHED_TERMS {
        let c = cache();
        f(&c.polys[..n_terms], &c.derivs[..n_terms])
    } else {
        let polys = pn_polynomials(n_terms - 1);
        let derivs: Vec<_> = polys.iter().map(IntPolynomial::derivative).collect();
        f(&polys, &derivs)
    }
}

/// Partial sum of the generating function together with its convergence
/// indicators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LSeries {
    pub value: f64,
    /// Magnitude of the `n = 0` term, `|P₀(x)|`.
    pub first_term: f64,
    /// Magnitude of the last summed term.
    pub last_term: f64,
    /// Set when the last term is larger than the first: the truncation is
    /// not converging at this `y`.
    pub diverging: bool,
}

/// `l(x, y) = Σ_{n < n_terms} Pₙ(x) yⁿ / n!`.
pub fn gen_function_l(x: f64, y: f64, n_terms: usize) -> Result<LSeries> {
    if n_terms == 0 {
        return Err(Error::domain("gen_function_l needs n_terms >= 1"));
    }
    with_polys(n_terms, |polys, _| {
        let mut value = 0.0;
        let mut scale = 1.0; // yⁿ/n!
        let mut last = 0.0;
        for (n, p) in polys.iter().enumerate() {
            if n > 0 {
                scale *= y / n as f64;
            }
            let term = if scale == 0.0 { 0.0 } else { eval_poly(p, x)? * scale };
            value += term;
            last = term.abs();
        }
        let first = x.abs();
        Ok(LSeries { value, first_term: first, last_term: last, diverging: last > first })
    })
}

/// Residuals of the first-order PDE satisfied by
/// `h(x, y) = Σ Pₙ(x) y^{n+1}/(n+1)!` (so `∂_y h = l`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeReport {
    /// `|(1 + xy) ∂_y h - P₀(x) - x h - x ∂ₓ h|` with term-wise derivatives.
    pub residual: f64,
    /// Same residual with `∂_y h`, `∂ₓ h` from central differences of the
    /// truncated `h` with step `h_step`.
    pub finite_difference: f64,
    /// `|(1 + xy) ∂_y h - P₀(x) - x ∂ₓ h|`, the form without the `x h`
    /// term. The recurrence implies this equals `|x h(x, y)|`.
    pub without_h_term: f64,
    /// `h(x, y)` itself.
    pub h: f64,
}

const PDE_TAIL_LIMIT: f64 = 1e-12;

fn h_series(polys: &[IntPolynomial], x: f64, y: f64) -> Result<f64> {
    let mut acc = 0.0;
    let mut scale = 1.0;
    for (n, p) in polys.iter().enumerate() {
        scale *= y / (n + 1) as f64;
        if scale == 0.0 {
            break;
        }
        acc += eval_poly(p, x)? * scale;
    }
    Ok(acc)
}

/// Full residual report for the PDE at `(x, y)`.
pub fn pde_report(x: f64, y: f64, n_terms: usize, h_step: f64) -> Result<PdeReport> {
    if n_terms == 0 {
        return Err(Error::domain("pde_residual needs n_terms >= 1"));
    }
    if !(h_step > 0.0) {
        return Err(Error::domain(format!("finite-difference step must be positive, got {h_step}")));
    }
    with_polys(n_terms, |polys, derivs| {
        let mut l = 0.0;
        let mut h = 0.0;
        let mut hx = 0.0;
        let mut ypow = 1.0; // yⁿ/n!
        let mut last_h_term = 0.0;
        for (n, (p, dp)) in polys.iter().zip(derivs).enumerate() {
            if n > 0 {
                ypow *= y / n as f64;
            }
            let yh = ypow * y / (n + 1) as f64; // y^{n+1}/(n+1)!
            if ypow == 0.0 && n > 0 {
                break;
            }
            let pv = eval_poly(p, x)?;
            l += pv * ypow;
            h += pv * yh;
            hx += eval_poly(dp, x)? * yh;
            last_h_term = (pv * yh).abs();
        }
        if last_h_term > PDE_TAIL_LIMIT {
            return Err(Error::TailTooLarge(format!(
                "last term of h at (x, y) = ({x}, {y}) is {last_h_term:e} with {n_terms} terms"
            )));
        }
        let p0 = x;
        let lhs = (1.0 + x * y) * l;
        let residual = (lhs - p0 - x * h - x * hx).abs();
        let without_h_term = (lhs - p0 - x * hx).abs();

        let hy_fd = (h_series(polys, x, y + h_step)? - h_series(polys, x, y - h_step)?) / (2.0 * h_step);
        let hx_fd = (h_series(polys, x + h_step, y)? - h_series(polys, x - h_step, y)?) / (2.0 * h_step);
        let finite_difference = ((1.0 + x * y) * hy_fd - p0 - x * h - x * hx_fd).abs();

        Ok(PdeReport { residual, finite_difference, without_h_term, h })
    })
}

/// `|(1 + xy) ∂_y h - P₀(x) - x h - x ∂ₓ h|` at `(x, y)`; see [`pde_report`].
pub fn pde_residual(x: f64, y: f64, n_terms: usize, h_step: f64) -> Result<f64> {
    pde_report(x, y, n_terms, h_step).map(|r| r.residual)
}

/// A point where `li⁻¹` is known: `f0 = li⁻¹(x0)`, `g0 = ln f0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorAnchor {
    pub x0: f64,
    pub f0: f64,
    pub g0: f64,
}

/// Allowed `|li(f0) - x0|` relative to `max(1, |x0|)` when validating an anchor.
pub const ANCHOR_TOL: f64 = 1e-9;

impl TaylorAnchor {
    /// Validates `f0 >= 2` and `li(f0) ≈ x0`.
    pub fn new(x0: f64, f0: f64) -> Result<Self> {
        if !(f0 >= 2.0) || !f0.is_finite() {
            return Err(Error::domain(format!("anchor needs finite f0 >= 2, got {f0}")));
        }
        let li_f0 = li(f0, &QuadratureConfig::default())?;
        if (li_f0 - x0).abs() > ANCHOR_TOL * x0.abs().max(1.0) {
            return Err(Error::domain(format!("anchor mismatch: li({f0}) = {li_f0} but x0 = {x0}")));
        }
        Ok(Self::unchecked(x0, f0))
    }

    /// Anchor from the Newton inverse at `x0`.
    pub fn at(x0: f64) -> Result<Self> {
        let f0 = li_inverse(x0, li_inverse_tol(x0))?;
        Ok(Self::unchecked(x0, f0))
    }

    /// `(li(10), 10)`, where `ln f > 1` so the series is well behaved.
    pub fn bootstrap() -> Result<Self> {
        let x0 = li(10.0, &QuadratureConfig::default())?;
        Ok(Self::unchecked(x0, 10.0))
    }

    fn unchecked(x0: f64, f0: f64) -> Self {
        Self { x0, f0, g0: f0.ln() }
    }
}

pub const DEFAULT_TAYLOR_TERMS: usize = 30;

/// A step is accepted only when the last summed terms are below this
/// fraction of the leading term `g0`.
pub const STEP_ACCEPT_RATIO: f64 = 1e-14;

/// `li⁻¹(x0 + y) = exp(Σₙ Pₙ(g0) (e^{-g0} y)ⁿ / n!)`.
///
/// Refuses the step with [`Error::StepTooLarge`] if the last-term ratio is
/// not below [`STEP_ACCEPT_RATIO`].
pub fn taylor_step(anchor: &TaylorAnchor, y: f64, n_terms: usize) -> Result<f64> {
    if n_terms < 2 {
        return Err(Error::domain("taylor_step needs n_terms >= 2"));
    }
    if y == 0.0 {
        return Ok(anchor.f0);
    }
    let z = (-anchor.g0).exp() * y;
    let series = with_polys(n_terms, |polys, _| -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut scale = 1.0;
        let mut tail = [0.0f64; 2];
        for (n, p) in polys.iter().enumerate() {
            if n > 0 {
                scale *= z / n as f64;
            }
            let term = eval_poly(p, anchor.g0)? * scale;
            sum += term;
            tail = [tail[1], term.abs()];
        }
        Ok((sum, tail[0].max(tail[1]) / anchor.g0.abs()))
    })?;
    let (g, ratio) = series;
    if !(ratio < STEP_ACCEPT_RATIO) {
        return Err(Error::StepTooLarge { step: y, x0: anchor.x0, ratio });
    }
    Ok(g.exp())
}

/// Route for computing `li⁻¹(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NthPrimeMethod {
    Newton,
    TaylorChain,
}

const MIN_CHAIN_STEP: f64 = 1e-9;

/// Walk from `anchor` to `target` with accepted Taylor steps, halving any
/// refused step.
pub fn taylor_chain(anchor: TaylorAnchor, target: f64, n_terms: usize) -> Result<f64> {
    let mut at = anchor;
    let mut trial = (target - at.x0).abs();
    loop {
        let remaining = target - at.x0;
        if remaining == 0.0 {
            return Ok(at.f0);
        }
        let mut y = remaining.signum() * trial.min(remaining.abs());
        let f = loop {
            match taylor_step(&at, y, n_terms) {
                Ok(f) => break f,
                Err(Error::StepTooLarge { .. }) if y.abs() > MIN_CHAIN_STEP => y *= 0.5,
                Err(e) => return Err(e),
            }
        };
        let full = y == remaining;
        at = TaylorAnchor::unchecked(at.x0 + y, f);
        if full {
            return Ok(f);
        }
        trial = 2.0 * y.abs();
    }
}

/// `li⁻¹(n)`, the smooth approximation to the n-th prime.
pub fn nth_prime_approx(n: u64, method: NthPrimeMethod) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("nth_prime_approx needs n >= 1"));
    }
    let y = n as f64;
    match method {
        NthPrimeMethod::Newton => li_inverse(y, li_inverse_tol(y)),
        NthPrimeMethod::TaylorChain => taylor_chain(TaylorAnchor::bootstrap()?, y, DEFAULT_TAYLOR_TERMS),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_polynomials() {
        let p = pn_polynomials(4);
        assert_eq!(p[0], IntPolynomial::x());
        assert_eq!(p[1], IntPolynomial::x());
        assert_eq!(p[2], IntPolynomial::from_i64(&[0, 1, -1]));
        assert_eq!(p[3], IntPolynomial::from_i64(&[0, 1, -4, 2]));
        assert_eq!(p[4].leading(), Some(&BigInt::from(-6)));
        assert_eq!(p[3].to_string(), "2x^3 - 4x^2 + x");
    }

    #[test]
    fn zero_polynomial_and_degrees() {
        assert_eq!(IntPolynomial::from_i64(&[0, 0]).degree(), None);
        assert!(IntPolynomial::from_i64(&[0]).is_zero());
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let p = pn_polynomials(6);
        assert_eq!(p[0].degree(), Some(1));
        for (n, q) in p.iter().enumerate().skip(1) {
            assert_eq!(q.degree(), Some(n));
        }
    }

    #[test]
    fn eval_examples() {
        let p = pn_polynomials(3);
        assert_eq!(eval_poly(&p[2], 1.0).unwrap(), 0.0);
        assert_eq!(eval_poly(&p[2], 2.0).unwrap(), -2.0);
        assert_eq!(eval_poly(&p[3], 2.0).unwrap(), 2.0);
    }

    #[test]
    fn eval_overflow_is_reported() {
        let huge = BigInt::from(10).pow(400);
        let p = IntPolynomial::new(vec![huge]);
        assert!(matches!(eval_poly(&p, 1.0), Err(Error::Overflow(_))));
        let q = IntPolynomial::from_i64(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(eval_poly(&q, 1e40), Err(Error::Overflow(_))));
    }

    #[test]
    fn l_at_zero_is_p0() {
        let l = gen_function_l(2.5, 0.0, 20).unwrap();
        assert_eq!(l.value, 2.5);
        assert!(!l.diverging);
        assert!(gen_function_l(1.0, 0.1, 0).is_err());
    }

    #[test]
    fn l_converges_at_small_y() {
        let l = gen_function_l(2.0, 0.05, 40).unwrap();
        assert!(l.value.is_finite());
        assert!(l.last_term / l.first_term < 1e-12);
    }

    #[test]
    fn l_flags_divergence() {
        let l = gen_function_l(3.0, 5.0, 30).unwrap();
        assert!(l.diverging);
    }

    #[test]
    fn pde_at_y_zero() {
        let r = pde_report(1.0, 0.0, 30, 1e-5).unwrap();
        assert!(r.residual < 1e-12);
        assert!(r.without_h_term < 1e-12);
    }

    #[test]
    fn pde_examples() {
        assert!(pde_residual(1.5, 0.02, 40, 1e-5).unwrap() < 1e-9);
        assert!(pde_residual(3.0, 0.01, 40, 1e-5).unwrap() < 1e-9);
    }

    #[test]
    fn pde_tail_too_large() {
        assert!(matches!(pde_residual(3.0, 2.0, 5, 1e-5), Err(Error::TailTooLarge(_))));
        assert!(pde_residual(1.0, 0.01, 10, 0.0).is_err());
    }

    #[test]
    fn taylor_step_zero_returns_anchor() {
        let a = TaylorAnchor::bootstrap().unwrap();
        assert_eq!(taylor_step(&a, 0.0, 30).unwrap(), 10.0);
    }

    #[test]
    fn taylor_step_refuses_large_steps() {
        let a = TaylorAnchor::bootstrap().unwrap();
        assert!(matches!(taylor_step(&a, 50.0, 30), Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn anchor_validation() {
        assert!(TaylorAnchor::new(0.0, 1.5).is_err());
        assert!(TaylorAnchor::new(1.0, 10.0).is_err());
        let x0 = li(10.0, &QuadratureConfig::default()).unwrap();
        let a = TaylorAnchor::new(x0, 10.0).unwrap();
        assert!((a.g0 - 10f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn nth_prime_rejects_zero() {
        assert!(nth_prime_approx(0, NthPrimeMethod::Newton).is_err());
    }
}
