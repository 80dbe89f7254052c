//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 on mathematical
//! verdict failures (degenerate spectra, tolerance violations, failed
//! verification suites).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use bandspec::cli::{exit_code_for, run_command, Command as LibCommand, Options, VerifySuite};
use bandspec::error::Error;
use bandspec::input::parse_input;

#[derive(Parser)]
#[command(
    name = "bandspec",
    version,
    about = "Spectral analysis of banded matrices with positive bidiagonal factorizations"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct Common {
    /// Matrix description file (JSON)
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized verification suites
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance for randomized verification suites
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Bidiagonal factorization and oscillatory verdict of a truncation
    Factorize {
        #[command(flatten)]
        common: Common,
        /// Truncation order N (size N+1)
        #[arg(long = "N")]
        n: usize,
    },
    /// Eigenvalues and Christoffel numbers of a truncation
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
    },
    /// Discrete spectral measure table (support, weights, step functions)
    Measure {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
    },
    /// Weyl function value at z
    Weyl {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
        /// Evaluation point "re,im"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Moment sequence from powers of the operator
    Moments {
        #[command(flatten)]
        common: Common,
        /// Largest moment degree
        #[arg(long = "n")]
        n: usize,
    },
    /// Gauss quadrature degrees-of-precision table
    Quadrature {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N")]
        n: usize,
    },
    /// Verification suites: cd, interlacing, biorthogonality, darboux, gaussborel
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: String,
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
    },
}

fn parse_z(s: &str) -> Result<Complex64, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    let err = || Error::Invalid(format!("cannot parse z \"{s}\" (expected re,im)"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(re.trim().parse().map_err(|_| err())?, 0.0)),
        [re, im] => Ok(Complex64::new(
            re.trim().parse().map_err(|_| err())?,
            im.trim().parse().map_err(|_| err())?,
        )),
        _ => Err(err()),
    }
}

fn run() -> Result<(), (i32, String)> {
    let cli = Cli::try_parse().map_err(|e| {
        // clap already prints help/version to stdout with status 0
        if e.use_stderr() {
            (1, e.to_string())
        } else {
            print!("{e}");
            (0, String::new())
        }
    })?;
    let (common, command) = match &cli.command {
        CliCommand::Factorize { common, n } => (common, LibCommand::Factorize { n: *n }),
        CliCommand::Spectrum { common, n } => (common, LibCommand::Spectrum { n: *n }),
        CliCommand::Measure { common, n } => (common, LibCommand::Measure { n: *n }),
        CliCommand::Weyl { common, n, z } => (
            common,
            LibCommand::Weyl {
                n: *n,
                z: parse_z(z).map_err(|e| (1, e.to_string()))?,
            },
        ),
        CliCommand::Moments { common, n } => (common, LibCommand::Moments { n: *n }),
        CliCommand::Quadrature { common, n } => (common, LibCommand::Quadrature { n: *n }),
        CliCommand::Verify { common, suite, n } => (
            common,
            LibCommand::Verify {
                suite: VerifySuite::parse(suite).map_err(|e| (1, e.to_string()))?,
                n: *n,
            },
        ),
    };
    let bytes = std::fs::read(&common.input)
        .map_err(|e| (1, format!("cannot read {}: {e}", common.input.display())))?;
    let spec = parse_input(&bytes).map_err(|e| (1, e.to_string()))?;
    let opts = Options {
        seed: common.seed,
        tol: common.tol,
    };
    let report =
        run_command(&spec, &command, &opts).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let payload = match common.format.as_str() {
        "csv" => report.to_csv(),
        _ => report.to_json(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, &payload)
            .map_err(|e| (1, format!("cannot write {}: {e}", path.display())))?,
        None => {
            std::io::stdout()
                .write_all(&payload)
                .map_err(|e| (1, format!("cannot write report: {e}")))?;
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err((2, "verdict failure (see report)".into()))
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("bandspec: {msg}");
            }
            ExitCode::from(code as u8)
        }
    }
}
