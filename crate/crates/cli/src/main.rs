//! `ntangle`: measure, verify, benchmark and factor multiqubit pure states.
//!
//! Exit codes: 0 when every executed check passed, 1 when a check failed,
//! 2 on usage or input errors.

mod bench;
mod factor;
mod measure;
mod source;
mod verify;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use crate::bench::Method;
use crate::source::{NamedState, Norm};

#[derive(Debug, Parser)]
#[command(name = "ntangle", version, about = "n-tangle, SLOCC invariant and concurrence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report invariants, concurrences and residual entanglement of one state.
    #[command(group(ArgGroup::new("source").required(true).args(["named", "file"])))]
    Measure {
        /// ghz:N, w:N or dicke:L,N
        #[arg(long)]
        named: Option<NamedState>,
        /// StateSpec JSON file
        #[arg(long)]
        file: Option<PathBuf>,
        /// Fail instead of nulling tangle fields for odd n.
        #[arg(long)]
        require_tangle: bool,
        /// Omit wall-clock timings so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
        /// For odd n, also report |2·S0|² next to the quartic oracle value.
        #[arg(long)]
        odd_experiment: bool,
    },
    /// Run the randomized property suites, or the single-state suites on --file.
    Verify {
        /// Qubit counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "4")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "NTANGLE_SEED", default_value_t = 0)]
        seed: u64,
        /// Check this state instead of random ones; amplitudes are used as written.
        #[arg(long, conflicts_with_all = ["n", "trials"])]
        file: Option<PathBuf>,
    },
    /// Time the fast n-tangle against the quartic oracles.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4")]
        n: Vec<usize>,
        /// fast, constrained, raw (comma separated)
        #[arg(long, value_delimiter = ',', default_value = "fast,constrained")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, env = "NTANGLE_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Split a state into qubit 1 and the rest, if it is such a product.
    Factor {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = ntangle::concurrence::DEFAULT_FACTOR_TOL)]
        tol: f64,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn emit<T: Serialize>(value: &T) -> Result<(), String> {
    let json = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match writeln!(std::io::stdout().lock(), "{json}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Measure {
            named,
            file,
            require_tangle,
            no_timing,
            odd_experiment,
        } => {
            let loaded = source::load(named, file.as_ref(), Norm::Checked)?;
            let opts = measure::Options {
                require_tangle,
                timing: !no_timing,
                odd_experiment,
            };
            emit(&measure::measure(&loaded.state, loaded.descriptor, &opts)?)?;
            Ok(Outcome::Pass)
        }
        Command::Verify {
            n,
            trials,
            seed,
            file,
        } => {
            let out = match file {
                Some(path) => {
                    let loaded = source::load_file(&path, Norm::Raw)?;
                    verify::verify_state(&loaded.state, loaded.descriptor, seed)?
                }
                None => verify::verify_random(&n, trials, seed)?,
            };
            eprint!("{}", verify::table(&out));
            emit(&out)?;
            Ok(if out.passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Bench {
            n,
            methods,
            trials,
            seed,
        } => {
            let out = bench::bench(&n, &methods, trials, seed)?;
            eprint!("{}", bench::table(&out));
            emit(&out)?;
            Ok(if out.passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Factor { file, tol } => {
            let loaded = source::load_file(&file, Norm::Checked)?;
            emit(&factor::factor(&loaded.state, tol)?)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
