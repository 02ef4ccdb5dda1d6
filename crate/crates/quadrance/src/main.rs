//! Thin command-line front end over the `quadrance` library.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or
//! resource error.

use clap::{Args, Parser, Subcommand};
use quadrance::run::{self, FourierTarget, OutputFormat, RunConfig, VerifyOptions};
use quadrance::{Error, DEFAULT_BUDGET};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quadrance",
    version,
    about = "Exact character sums, Gauss sums, and quadruple counts for quadratic distances over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Field as p^ell or a bare odd prime power (e.g. 3^2 or 9)
    #[arg(long)]
    field: String,
    /// Form spec: euclidean | standard:eps=<k> | path to a matrix file
    #[arg(long)]
    form: Option<String>,
    /// Set source: file path | random:<size> | sharpness:<kind>[:k=v...]
    #[arg(long)]
    set: Option<String>,
    /// Ambient dimension, when the set source does not carry one
    #[arg(long)]
    dim: Option<usize>,
    /// Master seed for random sets and sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on q^{2n} character evaluations per sweep
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (output is byte-identical at any value)
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

impl CommonArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            field: self.field.clone(),
            form: self.form.clone(),
            set: self.set.clone(),
            dim: self.dim,
            seed: self.seed,
            budget: self.budget,
            threads: self.threads,
        }
    }

    fn format(&self) -> Result<OutputFormat, Error> {
        self.format.parse()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact-identity suites (orthogonality, Gauss identities,
    /// closed-form transforms, counting identity) over a small grid
    Verify {
        /// Largest field order in the sweep grid
        #[arg(long, default_value_t = 9)]
        max_q: u32,
        /// Largest ambient dimension for the diagonal-variety sweeps
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Test mode: corrupt the closed forms to confirm detection
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
    /// Quadruple counts W(r), M(r), w(0) for a point set
    Count {
        #[command(flatten)]
        common: CommonArgs,
        /// Ratios to report: "all" or comma-separated canonical indices
        #[arg(long, default_value = "all")]
        r: String,
    },
    /// Lower-bound sweeps over seeded random sets
    Bounds {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random sets to draw
        #[arg(long, default_value_t = 50)]
        trials: u32,
    },
    /// Build an extremal construction and verify its quotient set
    Sharpness {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dump the exact Fourier table of a set or variety as CSV
    Fourier {
        #[command(flatten)]
        common: CommonArgs,
        /// Variety spec: sphere:t=<k> | diagonal:a=<i,...> | ratio:r=<k>
        /// | ratio-dual:r=<k>
        #[arg(long)]
        variety: Option<String>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify {
            max_q,
            max_n,
            seed,
            budget,
            threads,
            out,
            inject_sign_error,
        } => {
            let report = run::run_verify(&VerifyOptions {
                max_q,
                max_n,
                seed,
                budget,
                threads,
                inject_sign_error,
            })?;
            for suite in &report.suites {
                eprintln!(
                    "suite {:<28} {:>9} checks  {}",
                    suite.name,
                    suite.checks,
                    if suite.pass { "pass" } else { "FAIL" }
                );
                for failure in &suite.failures {
                    eprintln!("  witness: {failure}");
                }
            }
            emit(&run::to_json(&report)?, out.as_ref())?;
            Ok(report.pass)
        }
        Command::Count { common, r } => {
            let report = run::run_count(&common.config(), &r)?;
            let text = match common.format()? {
                OutputFormat::Json => run::to_json(&report)?,
                OutputFormat::Csv => run::count_report_to_csv(&report),
            };
            emit(&text, common.out.as_ref())?;
            Ok(true)
        }
        Command::Bounds { common, trials } => {
            if common.format()? == OutputFormat::Csv {
                return Err(Error::Parse(
                    "bounds reports are structured; use --format json".into(),
                ));
            }
            let report = run::run_bounds(&common.config(), trials)?;
            eprintln!(
                "bounds: {} trials, {}",
                report.trials,
                if report.pass { "all pass" } else { "FAILURES" }
            );
            emit(&run::to_json(&report)?, common.out.as_ref())?;
            Ok(report.pass)
        }
        Command::Sharpness { common } => {
            if common.format()? == OutputFormat::Csv {
                return Err(Error::Parse(
                    "sharpness reports are structured; use --format json".into(),
                ));
            }
            let report = run::run_sharpness(&common.config())?;
            emit(&run::to_json(&report)?, common.out.as_ref())?;
            Ok(report.pass)
        }
        Command::Fourier { common, variety } => {
            let target = match (&common.set, &variety) {
                (Some(set), None) => FourierTarget::Set(set.clone()),
                (None, Some(v)) => FourierTarget::Variety(v.clone()),
                _ => {
                    return Err(Error::Parse(
                        "fourier needs exactly one of --set or --variety".into(),
                    ))
                }
            };
            let csv = run::run_fourier(&common.config(), &target)?;
            emit(&csv, common.out.as_ref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
