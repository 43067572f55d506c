use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_PRIME_LIMIT: u64 = 10_000_000;
pub const DEFAULT_K_MAX: u64 = 64;

#[derive(Debug, Parser)]
#[command(name = "liprime", version, about = "Logarithmic integral, prime counting and prime zeta identities")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Read `key = value` settings from FILE; command-line flags win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Sieve primes up to this bound (cached under $LIPRIME_CACHE_DIR when set)
    #[arg(long, global = true, default_value_t = DEFAULT_SIEVE_LIMIT)]
    pub sieve_limit: u64,

    /// Largest prime used in direct prime sums
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_LIMIT)]
    pub prime_limit: u64,

    /// Largest dilation k (or Möbius index) summed
    #[arg(long, global = true, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u64,

    /// Target size of truncation tails
    #[arg(long, global = true, default_value = "1e-15")]
    pub tail_tol: f64,

    /// Absolute quadrature tolerance
    #[arg(long, global = true, default_value = "1e-14")]
    pub abs_tol: f64,

    /// Relative quadrature tolerance
    #[arg(long, global = true, default_value = "1e-13")]
    pub rel_tol: f64,

    /// Do not add the density estimate of omitted prime tails
    #[arg(long, global = true)]
    pub no_tail_correction: bool,

    /// Write results to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Offset logarithmic integral li(x) = ∫₂ˣ dt/ln t
    Li {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Inverse of li
    LiInv {
        #[arg(allow_negative_numbers = true)]
        y: f64,
    },
    /// Number of primes <= x
    Pi {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// The n-th prime, or its li⁻¹ approximation
    NthPrime {
        n: u64,
        #[arg(long, value_enum, default_value_t = NthMethod::Sieve)]
        method: NthMethod,
    },
    /// Check an identity on a set of points; exits 1 if any residual exceeds the threshold
    Verify(VerifyArgs),
    /// Tables and fits for how li⁻¹(n) tracks the n-th prime
    #[command(subcommand)]
    Scan(Scan),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NthMethod {
    /// Exact, from the sieve
    Sieve,
    /// li⁻¹(n) by Newton iteration
    Newton,
    /// li⁻¹(n) by chained Taylor steps from (li(10), 10)
    Taylor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// ζ'/ζ(s) = Σ_k ζ_p'(ks)
    Eq12,
    /// ζ̃(s) ζ(s) = ζ(2s)
    Eq24,
    /// 2ζ'/ζ(2s) - ζ'/ζ(s) = Σ_k (-1)^k ζ_p'(ks)
    Eq26,
    /// ζ'/ζ(s) - ζ'/ζ(2s) = Σ_{k odd} ζ_p'(ks)
    Eq27,
    /// ζ_p'(s) = Σ_k μ(k) ζ'/ζ(ks)
    Eq28,
    /// ζ_p(s) = Σ_n μ(n)/n ln ζ(ns)
    Eq29,
    /// ∫₂^∞ u^{-s}/ln u du = E₁((s-1) ln 2), real s
    Eq21,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TildeArg {
    Ratio,
    EulerProduct,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub identity: Identity,

    /// Points such as 2, 1.5+3i, 2-1i (repeat or comma-separate)
    #[arg(long = "s", value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Vec<String>,

    /// Real parts as start:stop:step (inclusive)
    #[arg(long, allow_hyphen_values = true)]
    pub re: Option<String>,

    /// Imaginary parts as start:stop:step (inclusive) [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<String>,

    /// Override the identity's residual threshold
    #[arg(long)]
    pub threshold: Option<f64>,

    /// How eq24 evaluates ζ̃
    #[arg(long, value_enum, default_value_t = TildeArg::Ratio)]
    pub method: TildeArg,
}

#[derive(Debug, Subcommand)]
pub enum Scan {
    /// Rows n, p_n, li⁻¹(n), |li⁻¹(n) - p_n|, |li⁻¹(n) - p_n| / n^0.52
    ErrorTable {
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Slope of log|li⁻¹(n) - p_n| against log n
    ExponentFit {
        /// n_min:n_max
        #[arg(long, default_value = "100:10000")]
        range: String,
    },
    /// Partial sums of Σ |li⁻¹(n) - p_n| / li⁻¹(n)^{σ+1} and Σ |li⁻¹(n) - p_n| / p_n^{σ+1}
    ErrorSeries {
        #[arg(long, value_delimiter = ',', default_value = "1")]
        sigma: Vec<f64>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
    },
    /// Σ li⁻¹(n)^{-s} against ∫ li⁻¹(t)^{-s} dt, with the interval bound in the tail column
    SumVsIntegral {
        #[arg(long = "s", value_delimiter = ',', default_value = "2", allow_hyphen_values = true)]
        s: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
    },
}
