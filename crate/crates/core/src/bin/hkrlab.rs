use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hkrlab::cli::{
    adams_table, compute, exit_code, parse_presentation, run_suite, to_sorted_json, Invariant,
    Suite, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK,
};
use hkrlab::Error;

/// Exact Hochschild, cyclic and de Rham computations with HKR filtrations.
#[derive(Parser)]
#[command(name = "hkrlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a presented ring.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        invariant: InvariantArg,
        /// Write the table here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a built-in verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Check that ψ^ℓ acts by ℓ^i on the homology of gr^i of the HKR filtration.
    Adams {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ell: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantArg {
    Hh,
    Dr,
    Hc,
    Hcminus,
    Hp,
    Hkr,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hkr,
    Tate,
    Adams,
    Roundtrip,
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("HKRLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Invalid(format!(
            "HKRLAB_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Invalid(e.to_string()))
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(json: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, json).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    configure_threads()?;
    match cli.command {
        Command::Compute {
            input,
            invariant,
            output,
        } => {
            let (p, window) = parse_presentation(&read(&input)?)?;
            let inv = match invariant {
                InvariantArg::Hh => Invariant::Hh,
                InvariantArg::Dr => Invariant::Dr,
                InvariantArg::Hc => Invariant::Hc,
                InvariantArg::Hcminus => Invariant::HcMinus,
                InvariantArg::Hp => Invariant::Hp,
                InvariantArg::Hkr => Invariant::Hkr,
            };
            emit(&compute(&p, window, inv)?.to_json(), output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Check { suite } => {
            let s = match suite {
                SuiteArg::Hkr => Suite::Hkr,
                SuiteArg::Tate => Suite::Tate,
                SuiteArg::Adams => Suite::Adams,
                SuiteArg::Roundtrip => Suite::Roundtrip,
            };
            let report = run_suite(s)?;
            emit(&to_sorted_json(&report), None)?;
            Ok(if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Adams { input, ell, output } => {
            let (p, window) = parse_presentation(&read(&input)?)?;
            let table = adams_table(&p, window, ell)?;
            emit(&table.to_json(), output.as_deref())?;
            Ok(if table.pass() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INPUT as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hkrlab: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
