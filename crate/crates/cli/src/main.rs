//! `liprime` command-line front end.

mod args;
mod config;
mod format;
mod run;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use crate::args::Cli;
use crate::run::{execute, hint, write_output, Ctx, Failure, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let mut cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(path) = cli.global.config.clone() {
        if let Err(msg) = config::apply(&mut cli.global, &matches, &path) {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let ctx = Ctx { opts: cli.global.clone() };
    let emit = |text: &str| -> bool {
        match write_output(ctx.opts.output.as_deref(), text) {
            Ok(()) => true,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                false
            }
        }
    };
    match execute(&ctx, &cli.command) {
        Ok((text, summary)) => {
            if !emit(&text) {
                return ExitCode::from(EXIT_USAGE);
            }
            if let Some(s) = summary {
                eprintln!("{s}");
            }
            ExitCode::from(EXIT_OK)
        }
        Err(Failure::Verify { text, summary }) => {
            emit(&text);
            eprintln!("{summary}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Some(h) = hint(&e, &ctx.opts) {
                eprintln!("{h}");
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}
