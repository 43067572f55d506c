//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use std::sync::OnceLock;

use liprime::primes::{sieve, PrimeTable};
use liprime::Complex64;

pub fn table_1e7() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| sieve(10_000_000).expect("sieve 1e7"))
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// li(x) by Simpson in `u = ln t`.
pub fn li_oracle(x: f64) -> f64 {
    simpson(|u| u.exp() / u, 2f64.ln(), x.ln(), 40_000)
}

/// li⁻¹(y) by bisection on the Simpson oracle.
pub fn li_inverse_oracle(y: f64) -> f64 {
    let (mut lo, mut hi) = (2.0, 4.0);
    while li_oracle(hi) < y {
        hi *= 2.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if li_oracle(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// E₁(x) = ∫_0^1 e^{-x/t}/t dt by Simpson.
pub fn e1_oracle(x: f64) -> f64 {
    simpson(|t| if t == 0.0 { 0.0 } else { (-x / t).exp() / t }, 0.0, 1.0, 200_000)
}

const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// ζ(s) by Euler–Maclaurin summation with cut-off N = 40.
pub fn zeta_em(s: Complex64) -> Complex64 {
    let n = 40.0f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..40 {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * n.ln()).exp();
    sum += n_s * n / (s - 1.0) + n_s * 0.5;
    // B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_s / n;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        sum += rising * npow * (b / fact);
        let j = 2 * k as u32 + 1;
        rising *= (s + j as f64) * (s + (j + 1) as f64);
        fact *= ((j + 2) * (j + 3)) as f64;
        npow /= n * n;
    }
    sum
}

/// ζ'/ζ(s) by a fourth-order central difference of [`zeta_em`].
pub fn zeta_log_deriv_oracle(s: Complex64) -> Complex64 {
    let h = 1e-4;
    let d = (zeta_em(s + h) - zeta_em(s - h)) * 8.0 - (zeta_em(s + 2.0 * h) - zeta_em(s - 2.0 * h));
    d / (12.0 * h) / zeta_em(s)
}

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mobius_trial(mut n: u64) -> i8 {
    let mut mu = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
