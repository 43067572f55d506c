//! The prime zeta function `ζ_p(s) = Σ_p p^{-s}`, its derivative, the
//! twisted product `ζ̃(s) = Π_p 1/(1 + p^{-s})`, and residual reports for the
//! identities tying them to ζ:
//!
//! ```text
//! ζ'/ζ(s)             = Σ_{k≥1} ζ_p'(ks)
//! ζ'/ζ(s) - ζ_p'(s)   = -Σ_p ln p / (p^s (p^s - 1))
//! ζ̃(s) ζ(s)           = ζ(2s)
//! ζ̃'/ζ̃(s)             = Σ_{k≥1} (-1)^k ζ_p'(ks)
//! ζ'/ζ(s) - ζ'/ζ(2s)  = Σ_{k odd} ζ_p'(ks)
//! ζ_p'(s)             = Σ_{k≥1} μ(k) ζ'/ζ(ks)
//! ζ_p(s)              = Σ_{n≥1} (μ(n)/n) ln ζ(ns)
//! ```
//!
//! Direct prime sums stop at `prime_limit`; their omitted tails are estimated
//! by replacing the prime sum with the integral against the density
//! `dt / ln t`. With `tail_correction` on, that integral is added to the
//! value.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::primes::{mobius_table, MobiusTable, PrimeTable};
use crate::report::{IdentityReport, SeriesResult};
use crate::special_fn::{
    check_point, exp_integral_e1, exp_integral_e1_complex, zeta, zeta_log_deriv, ComplexPoint, DEFAULT_ZETA_TERMS,
    ZERO_GUARD,
};

/// Cut-offs for every truncated sum in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Largest prime included in direct prime sums.
    pub prime_limit: u64,
    /// Largest dilation `k` (or Möbius index `n`) summed.
    pub k_max: u64,
    /// Target for tail estimates; sums may stop early once below it.
    pub tail_tol: f64,
    /// Add the density-integral estimate of the omitted prime tail.
    pub tail_correction: bool,
}

impl TruncationPolicy {
    pub fn new(prime_limit: u64, k_max: u64, tail_tol: f64) -> Result<Self> {
        if prime_limit < 2 || k_max == 0 {
            return Err(Error::domain(format!(
                "truncation needs prime_limit >= 2 and k_max >= 1 (got {prime_limit}, {k_max})"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::domain(format!("tail_tol must lie in (0, 1), got {tail_tol}")));
        }
        Ok(Self { prime_limit, k_max, tail_tol, tail_correction: true })
    }

    pub fn with_tail_correction(mut self, on: bool) -> Self {
        self.tail_correction = on;
        self
    }

    pub fn with_prime_limit(mut self, prime_limit: u64) -> Self {
        self.prime_limit = prime_limit;
        self
    }

    pub fn with_k_max(mut self, k_max: u64) -> Self {
        self.k_max = k_max;
        self
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { prime_limit: 10_000_000, k_max: 64, tail_tol: 1e-15, tail_correction: true }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn prime_bound(policy: &TruncationPolicy, table: &PrimeTable) -> Result<u64> {
    if policy.prime_limit > table.limit() {
        return Err(Error::domain(format!(
            "prime_limit {} exceeds the sieve limit {}",
            policy.prime_limit,
            table.limit()
        )));
    }
    Ok(policy.prime_limit)
}

/// `Σ_{p<=P} weight(p)` with early exit once `tail_bound(p) < stop`.
/// Returns the sum, the number of primes used and the last prime.
fn prime_sum(
    table: &PrimeTable,
    bound: u64,
    stop: f64,
    mut weight: impl FnMut(f64) -> Complex64,
    tail_bound: impl Fn(f64) -> f64,
) -> (Complex64, u64, u64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut used = 0u64;
    let mut last = 2u64;
    for p in table.primes_up_to(bound) {
        sum += weight(p as f64);
        used += 1;
        last = p;
        if used.is_multiple_of(1024) && tail_bound(p as f64) < stop {
            break;
        }
    }
    (sum, used, last)
}

/// `Σ_{n>=2} ln n · n^{-σ}`, an upper bound for `|ζ'/ζ(w)|` and `|ζ_p'(w)|`
/// when `Re(w) = σ > 1`.
pub fn log_deriv_bound(sigma: f64) -> f64 {
    let l2 = std::f64::consts::LN_2;
    let l3 = 3f64.ln();
    let d = sigma - 1.0;
    l2 * 2f64.powf(-sigma) + l3 * 3f64.powf(-sigma) + 3f64.powf(-d) * (l3 / d + 1.0 / (d * d))
}

/// `2^{-σ} (1 + 2/(σ-1))`, an upper bound for `|ln ζ(w)|` and `|ζ_p(w)|`
/// when `Re(w) = σ > 1`.
pub fn log_zeta_bound(sigma: f64) -> f64 {
    2f64.powf(-sigma) * (1.0 + 2.0 / (sigma - 1.0))
}

/// `Σ_{k>=from} weight(k) · bound(kσ)`; summed until the terms are negligible.
fn dilation_remainder(from: u64, sigma: f64, weight: impl Fn(u64) -> f64, bound: impl Fn(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    let mut k = from;
    loop {
        let w = weight(k);
        if w != 0.0 {
            let term = w * bound(k as f64 * sigma);
            acc += term;
            if term <= 1e-18 * acc || term < 1e-300 || k > from + 100_000 {
                return acc;
            }
        }
        k += 1;
    }
}

/// `ζ_p(s) = Σ_{p <= prime_limit} p^{-s}` for `Re(s) > 1`.
///
/// Tail estimate `∫_P^∞ t^{-σ}/ln t dt = E₁((σ-1) ln P)`; the correction
/// (when enabled) is the complex version `E₁((s-1) ln P)`.
pub fn prime_zeta_direct(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("direct prime zeta sum requires Re(s) > 1, got {s}")));
    }
    let bound = prime_bound(policy, table)?;
    let sigma = s.re;
    let tail_of = |p: f64| exp_integral_e1((sigma - 1.0) * p.ln()).unwrap_or(0.0);
    let (sum, used, last) = prime_sum(table, bound, policy.tail_tol * 1e-3, |p| (-s * p.ln()).exp(), tail_of);
    let cut = last as f64;
    let tail = tail_of(cut);
    let mut value = sum;
    if policy.tail_correction {
        value += exp_integral_e1_complex((s - 1.0) * cut.ln())?;
    }
    Ok(SeriesResult { value, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

/// `ζ_p'(s) = -Σ_{p <= prime_limit} ln p · p^{-s}` for `Re(s) > 1`, with tail
/// `∫_P^∞ t^{-σ} dt = P^{1-σ}/(σ-1)` (correction `-P^{1-s}/(s-1)`).
pub fn prime_zeta_deriv_direct(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("direct prime zeta derivative requires Re(s) > 1, got {s}")));
    }
    let bound = prime_bound(policy, table)?;
    let sigma = s.re;
    let tail_of = |p: f64| p.powf(1.0 - sigma) / (sigma - 1.0);
    let (sum, used, last) = prime_sum(
        table,
        bound,
        policy.tail_tol * 1e-3,
        |p| {
            let lp = p.ln();
            -(-s * lp).exp() * lp
        },
        tail_of,
    );
    let cut = last as f64;
    let tail = tail_of(cut);
    let mut value = sum;
    if policy.tail_correction {
        value -= ((c(1.0) - s) * cut.ln()).exp() / (s - 1.0);
    }
    Ok(SeriesResult { value, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

/// `ζ'/ζ(s) - ζ_p'(s) = -Σ_p ln p / (p^s (p^s - 1))`, convergent for `Re(s) > 1/2`.
///
/// Tail estimate `∫_P^∞ ln t · t^{-2σ} dt / (1 - P^{-σ})`; correction
/// `-P^{1-2s}/(2s-1)`.
pub fn half_plane_difference(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 0.5 {
        return Err(Error::domain(format!("half-plane difference requires Re(s) > 1/2, got {s}")));
    }
    let bound = prime_bound(policy, table)?;
    let sigma = s.re;
    let tail_of = |p: f64| {
        let a = 2.0 * sigma - 1.0;
        p.powf(-a) * (p.ln() / a + 1.0 / (a * a)) / (1.0 - p.powf(-sigma))
    };
    let (sum, used, last) = prime_sum(
        table,
        bound,
        policy.tail_tol * 1e-3,
        |p| {
            let lp = p.ln();
            let z = (-s * lp).exp();
            -(z * z / (c(1.0) - z)) * lp
        },
        tail_of,
    );
    let cut = last as f64;
    let tail = tail_of(cut);
    let mut value = sum;
    if policy.tail_correction {
        let two_s = s * 2.0;
        value -= ((c(1.0) - two_s) * cut.ln()).exp() / (two_s - 1.0);
    }
    Ok(SeriesResult { value, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

const POLE_GUARD: f64 = 1e-6;

fn check_dilation(w: Complex64, n: u64) -> Result<()> {
    if w.re <= 0.5 {
        return Err(Error::BranchRisk(format!("Re({n}·s) = {} <= 1/2", w.re)));
    }
    if (w - 1.0).norm() < POLE_GUARD {
        return Err(Error::Pole(format!("{n}·s = {w} is too close to the pole of zeta at 1")));
    }
    Ok(())
}

/// `ζ_p(s) = Σ_{n <= k_max} (μ(n)/n) ln ζ(ns)`, principal branch of `ln`.
///
/// Valid for `Re(s) > 1/2`. Stops once the bound on the remaining terms is
/// below `tail_tol / 2`. For `1/2 < Re(s) <= 1` the `n = 1` term uses the
/// principal logarithm of ζ(s), which fixes the branch of the continuation
/// (for real `s` in that strip ζ(s) < 0 and the imaginary part is π).
pub fn prime_zeta_mobius(s: ComplexPoint, policy: &TruncationPolicy, mob: &MobiusTable) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 0.5 {
        return Err(Error::domain(format!("Möbius prime zeta requires Re(s) > 1/2, got {s}")));
    }
    let sigma = s.re;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut used = 0;
    let mut tail = f64::INFINITY;
    for n in 1..=policy.k_max {
        let mu = mob.get(n).ok_or_else(|| {
            Error::domain(format!("Möbius table (limit {}) does not reach k_max = {}", mob.limit(), policy.k_max))
        })?;
        let w = s * n as f64;
        check_dilation(w, n)?;
        if mu != 0 {
            let z = zeta(w, DEFAULT_ZETA_TERMS)?;
            if z.norm() < ZERO_GUARD {
                return Err(Error::NearZero(format!("zeta({w}) vanishes numerically")));
            }
            // `-0.0 + 0.0 = +0.0`: a negative real ζ(ns) then takes Im ln = +π.
            let z = Complex64::new(z.re, z.im + 0.0);
            sum += z.ln() * (mu as f64 / n as f64);
        }
        used = n;
        tail = dilation_remainder(n + 1, sigma, |m| 1.0 / m as f64, log_zeta_bound);
        if tail < 0.5 * policy.tail_tol {
            break;
        }
    }
    Ok(SeriesResult { value: sum, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

/// `ζ_p'(s) = Σ_{k <= k_max} μ(k) ζ'/ζ(ks)` for `Re(s) > 1/2`.
pub fn prime_zeta_deriv_mobius(s: ComplexPoint, policy: &TruncationPolicy) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 0.5 {
        return Err(Error::domain(format!("Möbius prime zeta derivative requires Re(s) > 1/2, got {s}")));
    }
    let mob = mobius_table(policy.k_max)?;
    let sigma = s.re;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut used = 0;
    let mut tail = f64::INFINITY;
    for k in 1..=policy.k_max {
        let w = s * k as f64;
        check_dilation(w, k)?;
        let mu = mob.mu(k);
        if mu != 0 {
            sum += zeta_log_deriv(w, DEFAULT_ZETA_TERMS)? * mu as f64;
        }
        used = k;
        tail = dilation_remainder(k + 1, sigma, |_| 1.0, log_deriv_bound);
        if tail < policy.tail_tol {
            break;
        }
    }
    Ok(SeriesResult { value: sum, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

/// `Σ_{k <= K} sign(k) ζ_p'(ks)` from direct prime sums, `sign(k) ∈ {-1, 0, 1}`.
///
/// `K` is the smallest index whose remainder bound drops below `tail_tol`
/// (capped at `k_max`). The double sum is taken prime by prime: for each `p`
/// the powers `p^{-ks}` come from repeated multiplication, so the table is
/// walked once instead of `K` times.
fn dilated_deriv_sum(
    s: ComplexPoint,
    policy: &TruncationPolicy,
    table: &PrimeTable,
    sign: impl Fn(u64) -> f64,
) -> Result<(Complex64, u64, f64)> {
    let bound = prime_bound(policy, table)?;
    let mut k_used = policy.k_max;
    let mut remainder = 0.0;
    for k in 1..=policy.k_max {
        remainder = dilation_remainder(k + 1, s.re, |m| sign(m).abs(), log_deriv_bound);
        if remainder < policy.tail_tol {
            k_used = k;
            break;
        }
    }
    let signs: Vec<f64> = (1..=k_used).map(&sign).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 2u64;
    for p in table.primes_up_to(bound) {
        let lp = (p as f64).ln();
        let z = (-s * lp).exp();
        let floor = 1e-18 * z.norm();
        let mut w = z;
        let mut acc = Complex64::new(0.0, 0.0);
        for &sg in &signs {
            if sg != 0.0 {
                acc += w * sg;
            }
            w *= z;
            if w.norm() < floor {
                break;
            }
        }
        sum -= acc * lp;
        last = p;
    }
    let ln_cut = (last as f64).ln();
    let mut tails = 0.0;
    for (i, &sg) in signs.iter().enumerate() {
        if sg == 0.0 {
            continue;
        }
        let w = s * (i + 1) as f64;
        tails += ((1.0 - w.re) * ln_cut).exp() / (w.re - 1.0);
        if policy.tail_correction {
            sum -= ((c(1.0) - w) * ln_cut).exp() / (w - 1.0) * sg;
        }
    }
    Ok((sum, k_used, tails + remainder))
}

fn check_sum_domain(s: ComplexPoint) -> Result<()> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("prime-sum identities require Re(s) > 1, got {s}")));
    }
    Ok(())
}

/// `ζ'/ζ(s)` against `Σ_k ζ_p'(ks)` (direct prime sums).
pub fn euler_log_deriv_sum(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<IdentityReport> {
    check_sum_domain(s)?;
    let lhs = zeta_log_deriv(s, DEFAULT_ZETA_TERMS)?;
    let (rhs, k, tail) = dilated_deriv_sum(s, policy, table, |_| 1.0)?;
    Ok(IdentityReport::new(s, lhs, rhs, DEFAULT_ZETA_TERMS as u64, k, tail))
}

/// `ζ̃'/ζ̃(s) = 2ζ'/ζ(2s) - ζ'/ζ(s)` against `Σ_k (-1)^k ζ_p'(ks)`.
pub fn tilde_log_deriv_series(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<IdentityReport> {
    check_sum_domain(s)?;
    let lhs = zeta_log_deriv(s * 2.0, DEFAULT_ZETA_TERMS)? * 2.0 - zeta_log_deriv(s, DEFAULT_ZETA_TERMS)?;
    let (rhs, k, tail) = dilated_deriv_sum(s, policy, table, |k| if k % 2 == 0 { 1.0 } else { -1.0 })?;
    Ok(IdentityReport::new(s, lhs, rhs, DEFAULT_ZETA_TERMS as u64, k, tail))
}

/// `ζ'/ζ(s) - ζ'/ζ(2s)` against `Σ_{k odd} ζ_p'(ks)`.
pub fn odd_k_identity(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<IdentityReport> {
    check_sum_domain(s)?;
    let lhs = zeta_log_deriv(s, DEFAULT_ZETA_TERMS)? - zeta_log_deriv(s * 2.0, DEFAULT_ZETA_TERMS)?;
    let (rhs, k, tail) = dilated_deriv_sum(s, policy, table, |k| if k % 2 == 1 { 1.0 } else { 0.0 })?;
    Ok(IdentityReport::new(s, lhs, rhs, DEFAULT_ZETA_TERMS as u64, k, tail))
}

/// `Σ_k μ(k) ζ'/ζ(ks)` against the direct prime sum for `ζ_p'(s)`.
pub fn mobius_deriv_identity(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<IdentityReport> {
    check_sum_domain(s)?;
    let lhs = prime_zeta_deriv_mobius(s, policy)?;
    let rhs = prime_zeta_deriv_direct(s, policy, table)?;
    Ok(IdentityReport::new(s, lhs.value, rhs.value, lhs.terms_used, rhs.terms_used, lhs.tail_estimate + rhs.tail_estimate))
}

/// `Σ_n (μ(n)/n) ln ζ(ns)` against the direct prime sum for `ζ_p(s)`.
pub fn mobius_log_zeta_identity(
    s: ComplexPoint,
    policy: &TruncationPolicy,
    table: &PrimeTable,
    mob: &MobiusTable,
) -> Result<IdentityReport> {
    check_sum_domain(s)?;
    let lhs = prime_zeta_mobius(s, policy, mob)?;
    let rhs = prime_zeta_direct(s, policy, table)?;
    Ok(IdentityReport::new(s, lhs.value, rhs.value, lhs.terms_used, rhs.terms_used, lhs.tail_estimate + rhs.tail_estimate))
}

/// How to evaluate `ζ̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeMethod {
    /// `Π_{p <= P} 1/(1 + p^{-s})`, `Re(s) > 1`.
    EulerProduct,
    /// `ζ(2s)/ζ(s)`, `Re(s) > 1/2`.
    Ratio,
}

fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        z - z * z / 2.0 + z * z * z / 3.0 - z * z * z * z / 4.0
    } else {
        (c(1.0) + z).ln()
    }
}

/// Truncated Euler product for `ζ̃(s)`, `Re(s) > 1`. The omitted factors are
/// approximated by `exp(-E₁((s-1) ln P))` when tail correction is on.
pub fn tilde_zeta_euler(s: ComplexPoint, policy: &TruncationPolicy, table: &PrimeTable) -> Result<SeriesResult> {
    check_point(s)?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!("Euler product for tilde zeta requires Re(s) > 1, got {s}")));
    }
    let bound = prime_bound(policy, table)?;
    let sigma = s.re;
    let tail_of = |p: f64| exp_integral_e1((sigma - 1.0) * p.ln()).unwrap_or(0.0);
    let (log_sum, used, last) =
        prime_sum(table, bound, policy.tail_tol * 1e-3, |p| -ln_1p((-s * p.ln()).exp()), tail_of);
    let cut = last as f64;
    let mut log_value = log_sum;
    if policy.tail_correction {
        log_value -= exp_integral_e1_complex((s - 1.0) * cut.ln())?;
    }
    let value = log_value.exp();
    let tail = tail_of(cut) * value.norm();
    Ok(SeriesResult { value, terms_used: used, tail_estimate: tail, converged: tail <= policy.tail_tol })
}

/// `ζ̃(s) = ζ(2s)/ζ(s)`, `Re(s) > 1/2`, rejected near zeros of ζ(s).
pub fn tilde_zeta_ratio(s: ComplexPoint) -> Result<Complex64> {
    check_point(s)?;
    if s.re <= 0.5 {
        return Err(Error::domain(format!("ratio form of tilde zeta requires Re(s) > 1/2, got {s}")));
    }
    let den = zeta(s, DEFAULT_ZETA_TERMS)?;
    if den.norm() <= ZERO_GUARD {
        return Err(Error::NearZero(format!("|zeta({s})| = {:e}", den.norm())));
    }
    Ok(zeta(s * 2.0, DEFAULT_ZETA_TERMS)? / den)
}

pub fn tilde_zeta(s: ComplexPoint, method: TildeMethod, policy: &TruncationPolicy, table: &PrimeTable) -> Result<Complex64> {
    match method {
        TildeMethod::EulerProduct => tilde_zeta_euler(s, policy, table).map(|r| r.value),
        TildeMethod::Ratio => tilde_zeta_ratio(s),
    }
}

/// `ζ̃(s) ζ(s)` against `ζ(2s)`.
pub fn tilde_product_identity(
    s: ComplexPoint,
    method: TildeMethod,
    policy: &TruncationPolicy,
    table: &PrimeTable,
) -> Result<IdentityReport> {
    let (tilde, terms, tail) = match method {
        TildeMethod::EulerProduct => {
            let r = tilde_zeta_euler(s, policy, table)?;
            (r.value, r.terms_used, r.tail_estimate)
        }
        TildeMethod::Ratio => (tilde_zeta_ratio(s)?, DEFAULT_ZETA_TERMS as u64, 0.0),
    };
    let z = zeta(s, DEFAULT_ZETA_TERMS)?;
    let lhs = tilde * z;
    let rhs = zeta(s * 2.0, DEFAULT_ZETA_TERMS)?;
    Ok(IdentityReport::new(s, lhs, rhs, terms, DEFAULT_ZETA_TERMS as u64, tail * z.norm()))
}
