use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use liprime::analysis::{
    approx_error_table, error_series_partial, exponent_fit, integral_identity_check, integral_vs_sum,
};
use liprime::polyrec::{nth_prime_approx, NthPrimeMethod};
use liprime::prime_zeta::{
    euler_log_deriv_sum, mobius_deriv_identity, mobius_log_zeta_identity, odd_k_identity, tilde_log_deriv_series,
    tilde_product_identity, TildeMethod, TruncationPolicy,
};
use liprime::primes::{load_or_sieve, mobius_table, pi, sieve, PrimeTable, DEFAULT_MAX_LIMIT};
use liprime::report::{csv_f64, identity_csv_row, IdentityReport, ERROR_TABLE_HEADER, IDENTITY_HEADER};
use liprime::special_fn::{li, li_inverse, li_inverse_tol, QuadratureConfig};
use liprime::{Complex64, Error};
use rayon::prelude::*;

use crate::args::{Command, Format, GlobalOpts, Identity, NthMethod, Scan, TildeArg, VerifyArgs};
use crate::format::{parse_complex, parse_range, sig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub const EQ21_HEADER: &str = "s,value,e1,value_residual,derivative,closed_derivative,derivative_residual";
pub const SERIES_HEADER: &str = "sigma,epsilon,series,value,terms,tail,converged";

const EQ21_DERIVATIVE_THRESHOLD: f64 = 1e-6;
const DIGITS: usize = 15;

pub enum Failure {
    Usage(String),
    Lib(Error),
    Verify { text: String, summary: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out<T> = std::result::Result<T, Failure>;

pub struct Ctx {
    pub opts: GlobalOpts,
}

impl Ctx {
    fn quad(&self) -> Out<QuadratureConfig> {
        Ok(QuadratureConfig::new(self.opts.abs_tol, self.opts.rel_tol, QuadratureConfig::default().max_subdivisions)?)
    }

    fn policy(&self) -> Out<TruncationPolicy> {
        Ok(TruncationPolicy::new(self.opts.prime_limit, self.opts.k_max, self.opts.tail_tol)?
            .with_tail_correction(!self.opts.no_tail_correction))
    }

    fn table(&self, limit: u64) -> Out<PrimeTable> {
        let dir = std::env::var_os("LIPRIME_CACHE_DIR").map(PathBuf::from);
        Ok(load_or_sieve(limit, DEFAULT_MAX_LIMIT, dir.as_deref())?)
    }

    fn sep(&self) -> char {
        match self.opts.format {
            Format::Csv => ',',
            Format::Plain => '\t',
        }
    }

    /// Header and rows joined with the separator for the chosen format.
    fn table_text(&self, header: &str, rows: impl IntoIterator<Item = String>) -> String {
        let mut out = String::new();
        let sep = self.sep();
        for line in std::iter::once(header.to_string()).chain(rows) {
            if sep == ',' {
                out.push_str(&line);
            } else {
                out.push_str(&line.replace(',', "\t"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn hint(e: &Error, opts: &GlobalOpts) -> Option<String> {
    matches!(e, Error::InsufficientTable { .. } | Error::OutOfRange { .. } | Error::Capacity { .. }).then(|| {
        format!("hint: raise --sieve-limit (now {}, ceiling {DEFAULT_MAX_LIMIT})", opts.sieve_limit)
    })
}

/// Runs one command; returns text for standard output and the summary for
/// standard error.
pub fn execute(ctx: &Ctx, command: &Command) -> Out<(String, Option<String>)> {
    let text = match command {
        Command::Li { x } => sig(li(*x, &ctx.quad()?)?, DIGITS),
        Command::LiInv { y } => sig(li_inverse(*y, li_inverse_tol(*y))?, DIGITS),
        Command::Pi { x } => pi(*x, &ctx.table(ctx.opts.sieve_limit)?)?.to_string(),
        Command::NthPrime { n, method } => match method {
            NthMethod::Sieve => ctx.table(ctx.opts.sieve_limit)?.nth_prime(*n)?.to_string(),
            NthMethod::Newton => sig(nth_prime_approx(*n, NthPrimeMethod::Newton)?, DIGITS),
            NthMethod::Taylor => sig(nth_prime_approx(*n, NthPrimeMethod::TaylorChain)?, DIGITS),
        },
        Command::Verify(v) => return verify(ctx, v),
        Command::Scan(s) => return scan(ctx, s).map(|t| (t, None)),
    };
    Ok((text + "\n", None))
}

fn points(v: &VerifyArgs) -> Out<Vec<Complex64>> {
    let mut pts: Vec<Complex64> = v.s.iter().map(|t| parse_complex(t)).collect::<Result<_, _>>().map_err(Failure::Usage)?;
    match (&v.re, &v.im) {
        (Some(re), im) => {
            let res = parse_range(re).map_err(Failure::Usage)?;
            let ims = match im {
                Some(t) => parse_range(t).map_err(Failure::Usage)?,
                None => vec![0.0],
            };
            for &a in &res {
                for &b in &ims {
                    pts.push(Complex64::new(a, b));
                }
            }
        }
        (None, Some(_)) => return Err(Failure::Usage("--im needs --re".into())),
        (None, None) => {}
    }
    if pts.is_empty() {
        return Err(Failure::Usage("no points given; use --s or --re/--im".into()));
    }
    Ok(pts)
}

fn is_pole(s: Complex64) -> bool {
    (s - 1.0).norm() < 1e-9
}

fn verify(ctx: &Ctx, v: &VerifyArgs) -> Out<(String, Option<String>)> {
    let mut pts = points(v)?;
    let name = format!("{:?}", v.identity).to_lowercase();
    let skipped = pts.iter().filter(|s| is_pole(**s)).count();
    pts.retain(|s| !is_pole(*s));
    if pts.is_empty() {
        return Err(Failure::Usage(format!("{name}: every point is the pole s = 1")));
    }

    if v.identity == Identity::Eq21 {
        if let Some(s) = pts.iter().find(|s| s.im != 0.0) {
            return Err(Failure::Lib(Error::Domain(format!("eq21 takes real s, got {s}"))));
        }
        let cfg = ctx.quad()?;
        let reports = pts.par_iter().map(|s| integral_identity_check(s.re, &cfg)).collect::<Result<Vec<_>, _>>()?;
        let thr = v.threshold.unwrap_or(1e-8);
        let worst_v = reports.iter().map(|r| r.value_residual).fold(0.0, f64::max);
        let worst_d = reports.iter().map(|r| r.derivative_residual).fold(0.0, f64::max);
        let rows = reports.iter().map(|r| {
            format!(
                "{},{},{},{},{},{},{}",
                csv_f64(r.s),
                csv_f64(r.value),
                csv_f64(r.e1),
                csv_f64(r.value_residual),
                csv_f64(r.derivative),
                csv_f64(r.closed_derivative),
                csv_f64(r.derivative_residual)
            )
        });
        let text = ctx.table_text(EQ21_HEADER, rows);
        let ok = worst_v < thr && worst_d < EQ21_DERIVATIVE_THRESHOLD;
        let summary = format!(
            "eq21: {} points, max value residual {worst_v:e} (threshold {thr:e}), max derivative residual {worst_d:e} (threshold {EQ21_DERIVATIVE_THRESHOLD:e}): {}",
            reports.len(),
            if ok { "PASS" } else { "FAIL" }
        );
        return finish(text, summary, ok);
    }

    let policy = ctx.policy()?;
    let needs_table = !matches!((v.identity, v.method), (Identity::Eq24, TildeArg::Ratio));
    // The ratio form never touches primes; a trivial table stands in.
    let t = if needs_table { ctx.table(ctx.opts.sieve_limit.max(ctx.opts.prime_limit))? } else { sieve(2)? };
    let t = &t;
    let mob = if v.identity == Identity::Eq29 { Some(mobius_table(policy.k_max)?) } else { None };
    let default_thr = match v.identity {
        Identity::Eq24 => 1e-7,
        Identity::Eq29 => 1e-9,
        _ => 1e-6,
    };
    let thr = v.threshold.unwrap_or(default_thr);
    let eval = |s: &Complex64| -> Result<IdentityReport, Error> {
        let s = *s;
        match v.identity {
            Identity::Eq12 => euler_log_deriv_sum(s, &policy, t),
            Identity::Eq24 => {
                let m = match v.method {
                    TildeArg::Ratio => TildeMethod::Ratio,
                    TildeArg::EulerProduct => TildeMethod::EulerProduct,
                };
                tilde_product_identity(s, m, &policy, t)
            }
            Identity::Eq26 => tilde_log_deriv_series(s, &policy, t),
            Identity::Eq27 => odd_k_identity(s, &policy, t),
            Identity::Eq28 => mobius_deriv_identity(s, &policy, t),
            Identity::Eq29 => mobius_log_zeta_identity(s, &policy, t, mob.as_ref().expect("built for eq29")),
            Identity::Eq21 => unreachable!("handled above"),
        }
    };
    let reports = pts.par_iter().map(eval).collect::<Result<Vec<_>, _>>()?;
    let worst = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
    let ok = reports.iter().all(|r| r.residual < thr);
    let text = ctx.table_text(IDENTITY_HEADER, reports.iter().map(identity_csv_row));
    let mut summary = format!(
        "{name}: {} points, max residual {worst:e}, threshold {thr:e}: {}",
        reports.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    if skipped > 0 {
        write!(summary, " ({skipped} pole point(s) skipped)").expect("string write");
    }
    finish(text, summary, ok)
}

fn finish(text: String, summary: String, ok: bool) -> Out<(String, Option<String>)> {
    if ok {
        Ok((text, Some(summary)))
    } else {
        Err(Failure::Verify { text, summary })
    }
}

fn scan(ctx: &Ctx, s: &Scan) -> Out<String> {
    match s {
        Scan::ErrorTable { n_max } => {
            if *n_max == 0 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            let table = ctx.table(ctx.opts.sieve_limit)?;
            let rows = approx_error_table(*n_max, &table)?;
            Ok(ctx.table_text(ERROR_TABLE_HEADER, rows.iter().map(|r| r.csv())))
        }
        Scan::ExponentFit { range } => {
            let bad = || Failure::Usage(format!("--range must be n_min:n_max, got `{range}`"));
            let (a, b) = range.split_once(':').ok_or_else(bad)?;
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            let table = ctx.table(ctx.opts.sieve_limit)?;
            Ok(sig(exponent_fit(a, b, &table)?, DIGITS) + "\n")
        }
        Scan::ErrorSeries { sigma, epsilon, n_max } => {
            if *n_max == 0 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            let table = ctx.table(ctx.opts.sieve_limit)?;
            let mut rows = Vec::new();
            for &sg in sigma {
                let (a, b) = error_series_partial(sg, *epsilon, *n_max, &table)?;
                for (label, r) in [("li_inv", a), ("prime", b)] {
                    rows.push(format!(
                        "{},{},{label},{},{},{},{}",
                        csv_f64(sg),
                        csv_f64(*epsilon),
                        csv_f64(r.value),
                        r.terms_used,
                        csv_f64(r.tail_estimate),
                        r.converged
                    ));
                }
            }
            Ok(ctx.table_text(SERIES_HEADER, rows))
        }
        Scan::SumVsIntegral { s, n_max } => {
            if *n_max == 0 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            let pts: Vec<Complex64> = s.iter().map(|t| parse_complex(t)).collect::<Result<_, _>>().map_err(Failure::Usage)?;
            let cfg = ctx.quad()?;
            let reports = pts.iter().map(|&p| integral_vs_sum(p, *n_max, &cfg)).collect::<Result<Vec<_>, _>>()?;
            Ok(ctx.table_text(IDENTITY_HEADER, reports.iter().map(|r| identity_csv_row(&r.report))))
        }
    }
}

pub fn write_output(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
