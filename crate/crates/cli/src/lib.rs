//! Command-line front end: argument model, command dispatch, exit codes.

pub mod commands;
pub mod output;
pub mod verify;

use clap::{Parser, Subcommand};
use zrel_core::{Enumerator, Error, Modulus};

use crate::output::Format;
use crate::verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "zrel",
    version,
    about = "Realization numbers and Z-related pitch-class sets in Z_n"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Enumeration workers; defaults to the available parallelism. Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary rows: T/I classes, interval multisets, and multisets with R >= 2.
    Table {
        n: u32,
        /// Smallest cardinality (default 3).
        #[arg(long = "kmin")]
        k_min: Option<u32>,
        /// Largest cardinality (default n - 3).
        #[arg(long = "kmax")]
        k_max: Option<u32>,
    },
    /// Every Z-group at (n, k).
    Zpairs { n: u32, k: u32 },
    /// Smallest cardinality with a Z-pair.
    Kmin {
        n: u32,
        /// Upper search bound (default floor(n/2), which relies on complementation).
        #[arg(long = "kmax")]
        k_max: Option<u32>,
    },
    /// The k=4 pair {0,a,m/2,m+a} / {0,a,a+m/2,m} with m = n/2.
    K4 { n: u32, a: u32 },
    /// Scale every Z-pair of Z_{n_base} at cardinality k by d.
    Scale { n_base: u32, d: u32, k: u32 },
    /// Classify two Z-related sets (comma-separated residues) as primitive or derived.
    Classify {
        n: u32,
        first: String,
        second: String,
    },
    /// Run the built-in verification suites.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Rendered output and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    let enumerator = match cli.threads {
        Some(t) => Enumerator::with_threads(t)?,
        None => Enumerator::new(),
    };
    let e = &enumerator;
    let report = match &cli.command {
        Command::Table { n, k_min, k_max } => {
            let k_min = k_min.unwrap_or(3);
            let k_max = k_max.unwrap_or(n.saturating_sub(3));
            commands::table(e, Modulus::new(*n)?, k_min, k_max)?
        }
        Command::Zpairs { n, k } => commands::zpairs(e, Modulus::new(*n)?, *k)?,
        Command::Kmin { n, k_max } => commands::kmin(e, Modulus::new(*n)?, *k_max)?,
        Command::K4 { n, a } => commands::k4(*n, *a)?,
        Command::Scale { n_base, d, k } => commands::scale(e, Modulus::new(*n_base)?, *d, *k)?,
        Command::Classify { n, first, second } => {
            commands::classify(Modulus::new(*n)?, first, second)?
        }
        Command::Verify { suite } => {
            let checks = verify::run(e, *suite)?;
            let code = if checks.iter().all(|c| c.passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            return Ok(Outcome {
                stdout: verify::report(*suite, &checks).render(cli.format),
                code,
            });
        }
    };
    Ok(Outcome {
        stdout: report.render(cli.format),
        code: EXIT_OK,
    })
}
