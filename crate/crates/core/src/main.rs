use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qcat::canonical::{kak_decompose, CanonicalParams, KAK_RESIDUAL_TOL};
use qcat::catalysis::verify_catalysis;
use qcat::hamsim::{classify_simulation, HamParams};
use qcat::io::{read_matrix_file, read_state_file, to_json};
use qcat::monotone::nogo_search;
use qcat::suite::run_suite;
use qcat::tensor::{schmidt_probs, Cut};
use qcat::Error;

const EXIT_INPUT: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_SUITE: u8 = 3;

/// Catalysis residual above which `qcat catalysis` reports failure.
const CATALYSIS_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "Two-qubit canonical forms, catalysis and Hamiltonian simulation order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical decomposition of a 4x4 unitary read from a JSON matrix file.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Check that the catalysis circuit implements e^{i c3} U_s(c1+c2, 0, 0).
    Catalysis {
        #[arg(long, allow_negative_numbers = true)]
        c1: f64,
        #[arg(long, allow_negative_numbers = true)]
        c2: f64,
        #[arg(long, allow_negative_numbers = true)]
        c3: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "QCAT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether the source Hamiltonian can simulate the target.
    Classify {
        #[arg(long, value_name = "C1,C2,C3", allow_hyphen_values = true)]
        source: String,
        #[arg(long, value_name = "C1,C2,C3", allow_hyphen_values = true)]
        target: String,
    },
    /// Search local unitaries for a violation of the overlap bound.
    Nogo {
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, env = "QCAT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Largest squared Schmidt coefficient of a state across a cut such as "A,a|B,b".
    Monotone {
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
        #[arg(long, value_name = "SPEC")]
        cut: String,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(long, env = "QCAT_SEED", default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnitary(_) | Error::Numerical(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure {
        code: EXIT_INPUT,
        message: format!("expected three comma-separated numbers, got `{s}`"),
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn ham(s: &str) -> Result<HamParams, Failure> {
    let [c1, c2, c3] = parse_triple(s)?;
    Ok(HamParams::new(c1, c2, c3)?)
}

fn emit<T: Serialize>(value: &T) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(to_json(value).as_bytes());
}

#[derive(Serialize)]
struct MonotoneOutput {
    cut: String,
    max_schmidt_prob: f64,
    schmidt_probs: Vec<f64>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Decompose { input } => {
            let u = read_matrix_file(&input)?.to_unitary()?;
            let k = kak_decompose(&u)?;
            emit(&k);
            if k.residual > KAK_RESIDUAL_TOL {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: format!("reassembly residual {:e} exceeds {KAK_RESIDUAL_TOL:e}", k.residual),
                });
            }
        }
        Command::Catalysis {
            c1,
            c2,
            c3,
            trials,
            seed,
        } => {
            let report = verify_catalysis(&CanonicalParams::new(c1, c2, c3), trials, seed)?;
            emit(&report);
            if report.max_state_residual.is_nan() || report.max_state_residual > CATALYSIS_TOL {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: format!(
                        "catalysis residual {:e} exceeds {CATALYSIS_TOL:e}",
                        report.max_state_residual
                    ),
                });
            }
        }
        Command::Classify { source, target } => {
            let h = ham(&source)?;
            let t = ham(&target)?;
            emit(&classify_simulation(&h, &t));
        }
        Command::Nogo { c1, c2, budget, seed } => {
            let report = nogo_search(c1, c2, budget, seed)?;
            emit(&report);
            if !report.bound_holds {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: "search found a value below the overlap bound".into(),
                });
            }
        }
        Command::Monotone { state, cut } => {
            let s = read_state_file(&state)?.to_state()?;
            let cut = Cut::parse(&cut)?;
            let probs = schmidt_probs(&s, &cut)?;
            emit(&MonotoneOutput {
                cut: cut.to_string(),
                max_schmidt_prob: probs[0],
                schmidt_probs: probs,
            });
        }
        Command::Suite { seed } => {
            let report = run_suite(seed);
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render().as_bytes());
            for c in &report.criteria {
                eprintln!("criterion {} took {:.2} s", c.id, c.elapsed.as_secs_f64());
            }
            if !report.all_passed() {
                return Err(Failure {
                    code: EXIT_SUITE,
                    message: "acceptance suite failed".into(),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qcat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
