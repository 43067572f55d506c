//! `key = value` settings files. Keys are the long flag names; a flag given
//! on the command line always overrides the file.

use std::path::Path;

use clap::parser::ValueSource;
use clap::ArgMatches;

use crate::args::{Format, GlobalOpts};

fn from_file(matches: &ArgMatches, id: &str) -> bool {
    !matches!(matches.value_source(id), Some(ValueSource::CommandLine))
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("config: cannot parse `{value}` for `{key}`"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("config: `{key}` expects true or false, got `{value}`")),
    }
}

pub fn parse_lines(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("config line {}: expected `key = value`, got `{raw}`", i + 1));
        };
        out.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(out)
}

/// Fill every setting not given on the command line from `path`.
pub fn apply(opts: &mut GlobalOpts, matches: &ArgMatches, path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    for (key, value) in parse_lines(&text)? {
        let v = value.as_str();
        match key.as_str() {
            "sieve-limit" if from_file(matches, "sieve_limit") => opts.sieve_limit = parse(&key, v)?,
            "prime-limit" if from_file(matches, "prime_limit") => opts.prime_limit = parse(&key, v)?,
            "k-max" if from_file(matches, "k_max") => opts.k_max = parse(&key, v)?,
            "tail-tol" if from_file(matches, "tail_tol") => opts.tail_tol = parse(&key, v)?,
            "abs-tol" if from_file(matches, "abs_tol") => opts.abs_tol = parse(&key, v)?,
            "rel-tol" if from_file(matches, "rel_tol") => opts.rel_tol = parse(&key, v)?,
            "tail-correction" if from_file(matches, "no_tail_correction") => {
                opts.no_tail_correction = !parse_bool(&key, v)?
            }
            "output" if from_file(matches, "output") => opts.output = Some(v.into()),
            "format" if from_file(matches, "format") => {
                opts.format = match v {
                    "csv" => Format::Csv,
                    "plain" => Format::Plain,
                    _ => return Err(format!("config: format must be csv or plain, got `{v}`")),
                }
            }
            "sieve-limit" | "prime-limit" | "k-max" | "tail-tol" | "abs-tol" | "rel-tol" | "tail-correction"
            | "output" | "format" => {}
            _ => return Err(format!("config: unknown key `{key}`")),
        }
    }
    Ok(())
}
