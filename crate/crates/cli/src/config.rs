use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use homotopy_radar::polysys::FixtureName;
use homotopy_radar::C64;
use rand_core::{RngCore, SeedableRng};
use rand_xorshift::XorShiftRng;

#[derive(Parser, Debug)]
#[command(name = "hradar", version, about = "Locate the nearest singularity of a homotopy solution path")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regenerate one of the reference tables.
    Table {
        #[arg(value_enum)]
        which: TableName,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Radius of convergence and singularity location (JSON report, or the
    /// Richardson table as CSV).
    Radius {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dump the tracked path as CSV.
    Track {
        /// Final parameter value.
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// All solutions of `x^{a_j} = c_j`.
    SolveBinomial {
        /// Exponent vectors of the equations, e.g. `2,0;1,3`; right-hand
        /// sides default to one.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["fixture", "file"])]
        exponents: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Taylor coefficients at `t0` from samples on a circle of radius `step`.
    Coeffs {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Table1,
    Table2,
    Table3,
    Table4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Built-in fixture: sqrt, cusp, monomial4, ojika1, planted.
    #[arg(long, value_parser = parse_fixture, conflicts_with = "file")]
    pub fixture: Option<FixtureName>,
    /// JSON homotopy file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Which start solution of the file to follow.
    #[arg(long, default_value_t = 0)]
    pub path: usize,
    /// Largest ratio index (a power of two in 4..=1024); twice as many circle
    /// samples are taken.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Precision::Double)]
    pub precision: Precision,
    /// Sampling radius, in the reconditioned parameter for `radius`.
    #[arg(long)]
    pub step: Option<f64>,
    /// Expansion point; skips the last-pole sweep.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Accessibility constant as `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, conflicts_with = "seed")]
    pub gamma: Option<C64>,
    /// Draw a unit-modulus gamma from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coordinate whose series is extrapolated; default is the one with the
    /// largest top coefficient.
    #[arg(long)]
    pub coord: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_fixture(s: &str) -> std::result::Result<FixtureName, String> {
    s.parse().map_err(|e: homotopy_radar::Error| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::from_f64(num(re)?, 0.0)),
        [re, im] => Ok(C64::from_f64(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Fixture(FixtureName),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GammaChoice {
    /// Whatever the fixture or file specifies.
    Default,
    Fixed(C64),
    Seeded { seed: u64, gamma: C64 },
}

impl GammaChoice {
    pub fn value(self) -> Option<C64> {
        match self {
            GammaChoice::Default => None,
            GammaChoice::Fixed(g) | GammaChoice::Seeded { gamma: g, .. } => Some(g),
        }
    }
}

/// `cos a + i sin a` with `a` uniform on `[0, 2 pi)` from a xorshift stream.
pub fn seeded_gamma(seed: u64) -> C64 {
    let mut rng = XorShiftRng::seed_from_u64(seed);
    let a = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * std::f64::consts::TAU;
    C64::from_f64(a.cos(), a.sin())
}

/// Everything a command needs, validated.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub source: Option<Source>,
    pub path_index: usize,
    pub order: usize,
    pub precision: Precision,
    pub step: Option<f64>,
    pub t0: Option<f64>,
    pub gamma: GammaChoice,
    pub coordinate: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        if !a.n.is_power_of_two() || !(4..=1024).contains(&a.n) {
            bail!("--n {} must be a power of two between 4 and 1024", a.n);
        }
        if let Some(h) = a.step {
            if !(h > 0.0 && h.is_finite()) {
                bail!("--step must be positive");
            }
        }
        if let Some(t) = a.t0 {
            if !(0.0..1.0).contains(&t) {
                bail!("--t0 must lie in [0, 1)");
            }
        }
        let gamma = match (a.gamma, a.seed) {
            (Some(g), _) => {
                if (g.abs() - 1.0).abs() > 1e-14 {
                    bail!("--gamma must have modulus one, got {}", g.abs());
                }
                GammaChoice::Fixed(g)
            }
            (None, Some(seed)) => GammaChoice::Seeded { seed, gamma: seeded_gamma(seed) },
            (None, None) => GammaChoice::Default,
        };
        let source = match (&a.fixture, &a.file) {
            (Some(f), _) => Some(Source::Fixture(*f)),
            (None, Some(p)) => Some(Source::File(p.clone())),
            (None, None) => None,
        };
        Ok(RunConfig {
            source,
            path_index: a.path,
            order: a.n,
            precision: a.precision,
            step: a.step,
            t0: a.t0,
            gamma,
            coordinate: a.coord,
            format: a.format,
            out: a.out.clone(),
        })
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

impl Cli {
    pub fn into_parts(self) -> Result<(Command, RunConfig)> {
        let cfg = match &self.command {
            Command::Table { run, .. }
            | Command::Radius { run }
            | Command::Track { run, .. }
            | Command::SolveBinomial { run, .. }
            | Command::Coeffs { run } => RunConfig::from_args(run)?,
        };
        Ok((self.command, cfg))
    }
}
