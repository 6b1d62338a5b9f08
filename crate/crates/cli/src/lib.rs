//! Library half of the `hradar` binary: argument parsing, the table
//! generators and the pipeline commands. `run` writes everything to the
//! given sink and returns the process exit code.

pub mod commands;
pub mod config;
pub mod format;
pub mod tables;

use std::fs::File;
use std::io::{self, Write};

use anyhow::{Context, Result};
use clap::Parser;

pub use config::{Cli, Command, Format, GammaChoice, Precision, RunConfig, Source, TableName};

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, cfg) = cli.into_parts()?;
    let mut buf = Vec::new();
    let code = match &command {
        Command::Table { which, .. } => tables::cmd_table(*which, &cfg, &mut buf)?,
        Command::Radius { .. } => commands::cmd_radius(&cfg, &mut buf)?,
        Command::Track { to, .. } => commands::cmd_track(&cfg, *to, &mut buf)?,
        Command::SolveBinomial { exponents, .. } => commands::cmd_solve_binomial(&cfg, exponents.as_deref(), &mut buf)?,
        Command::Coeffs { .. } => commands::cmd_coeffs(&cfg, &mut buf)?,
    };
    match &cfg.out {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            f.write_all(&buf)?;
        }
        None => stdout.write_all(&buf)?,
    }
    Ok(code)
}

/// Runs against the real stdout; used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            if let Some(ce) = e.downcast_ref::<clap::Error>() {
                let _ = ce.print();
                return if ce.use_stderr() { 2 } else { 0 };
            }
            eprintln!("hradar: {e:#}");
            2
        }
    }
}
