//! Numerical toolkit around the inverse logarithmic integral and the prime
//! zeta function.
//!
//! * [`special_fn`]: `li`, `li⁻¹`, complex ζ and ζ'/ζ, `E₁`.
//! * [`polyrec`]: the integer polynomials `Pₙ` with `g⁽ⁿ⁾ = e^{-ng} Pₙ(g)` for
//!   `g = ln li⁻¹`, their generating function, and Taylor stepping of `li⁻¹`.
//! * [`primes`]: segmented sieve, `π(x)`, `pₙ`, Möbius table, on-disk cache.
//! * [`prime_zeta`]: `ζ_p`, `ζ_p'`, the twisted product `ζ̃`, and residual
//!   reports for the identities linking them to ζ.
//! * [`analysis`]: error tables `|li⁻¹(n) - pₙ|`, exponent fits, comparison
//!   and error series, sum-versus-integral checks.

pub mod analysis;
pub mod error;
pub mod polyrec;
pub mod prime_zeta;
pub mod primes;
pub mod report;
pub mod special_fn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
