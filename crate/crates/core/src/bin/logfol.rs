use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use logfol::foliation::{degree_by_restriction, foliation_degree};
use logfol::logtensor::{decompose, is_decomposable, plucker_defects, tensor_kernel};
use logfol::residue::recover_residue;
use logfol::scenario::{builtin_example, parse_scenario, parse_tensor_str, run, Scenario, BUILTIN_NAMES};
use logfol::Error;

const INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "logfol", version, about = "Logarithmic foliations on projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file.
    Check {
        scenario: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Run a built-in scenario.
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Also write the scenario file itself.
        #[arg(long)]
        emit_scenario: Option<PathBuf>,
    },
    /// Factor a tensor file into covectors.
    Decompose { tensor: PathBuf },
    /// Recover one residue λ_I numerically.
    Residue {
        scenario: PathBuf,
        /// 1-based pole indices, comma separated (e.g. 1,3).
        #[arg(long)]
        index: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Foliation degree by formula and by restriction.
    Degree {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn invalid(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("logfol: invalid input: {e}");
    ExitCode::from(INVALID)
}

fn failed(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("logfol: {e}");
    ExitCode::from(1)
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LOGFOL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("LOGFOL_THREADS={v:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn load(path: &Path, seed: Option<u64>) -> Result<Scenario, Error> {
    let mut s = parse_scenario(path)?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(s)
}

fn write(path: &Path, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn execute(s: &Scenario, out: Option<&Path>, json: bool) -> ExitCode {
    let report = run(s);
    let text = report.to_json();
    if let Some(path) = out {
        if let Err(code) = write(path, &text) {
            return code;
        }
    }
    if json {
        println!("{text}");
    } else {
        print!("{}", report.summary());
    }
    ExitCode::from(report.exit_code() as u8)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        return invalid(e);
    }
    match cli.command {
        Command::Check {
            scenario,
            seed,
            out,
            json,
        } => match load(&scenario, seed) {
            Ok(s) => execute(&s, out.as_deref(), json),
            Err(e) => invalid(e),
        },
        Command::Example {
            name,
            out,
            json,
            emit_scenario,
        } => {
            let s = match builtin_example(&name) {
                Ok(s) => s,
                Err(e) => return invalid(e),
            };
            if let Some(path) = emit_scenario {
                if let Err(code) = write(&path, &s.to_json()) {
                    return code;
                }
            }
            execute(&s, out.as_deref(), json)
        }
        Command::Decompose { tensor } => {
            let src = match std::fs::read_to_string(&tensor) {
                Ok(s) => s,
                Err(e) => return invalid(format!("{}: {e}", tensor.display())),
            };
            let a = match parse_tensor_str(&src) {
                Ok(a) => a,
                Err(e) => return invalid(e),
            };
            let result = (|| -> logfol::Result<(bool, serde_json::Value)> {
                if !is_decomposable(&a)? {
                    let defects = plucker_defects(&a)?;
                    return Ok((false, json!({ "decomposable": false, "plucker_defects": defects })));
                }
                let d = decompose(&a)?;
                let covectors: Vec<Vec<String>> = d
                    .covectors
                    .iter()
                    .map(|c| c.coords.iter().map(|x| x.to_string()).collect())
                    .collect();
                Ok((
                    true,
                    json!({
                        "decomposable": true,
                        "c": d.c.to_string(),
                        "covectors": covectors,
                        "kernel_dim": tensor_kernel(&a)?.len(),
                        "rewedge_exact": d.rewedge()? == a,
                    }),
                ))
            })();
            match result {
                Ok((ok, v)) => {
                    print_json(&v);
                    ExitCode::from(if ok { 0 } else { 1 })
                }
                Err(e) => failed(e),
            }
        }
        Command::Residue { scenario, index, seed } => {
            let s = match load(&scenario, seed) {
                Ok(s) => s,
                Err(e) => return invalid(e),
            };
            let idx: Option<Vec<usize>> = index
                .split(',')
                .map(|t| t.trim().parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1))
                .collect();
            let Some(mut idx) = idx else {
                return invalid(format!("index {index:?} is not a list of 1-based integers"));
            };
            idx.sort_unstable();
            if idx.len() != s.spec.p()
                || idx.iter().any(|&k| k >= s.spec.poles.r())
                || idx.windows(2).any(|w| w[0] == w[1])
            {
                return invalid(format!(
                    "index {index:?} must name {} distinct poles out of {}",
                    s.spec.p(),
                    s.spec.poles.r()
                ));
            }
            match recover_residue(&s.spec, &idx, s.seed) {
                Ok(row) => {
                    print_json(&serde_json::to_value(&row).expect("json"));
                    ExitCode::from(if row.error < s.tolerances.residue { 0 } else { 1 })
                }
                Err(e) => failed(e),
            }
        }
        Command::Degree { scenario, seed } => {
            let s = match load(&scenario, seed) {
                Ok(s) => s,
                Err(e) => return invalid(e),
            };
            let result = foliation_degree(&s.spec).and_then(|f| Ok((f, degree_by_restriction(&s.spec, s.seed)?)));
            match result {
                Ok((f, r)) => {
                    print_json(&json!({ "formula": f, "restriction": r.degree, "attempts": r.attempts }));
                    ExitCode::from(if f == r.degree { 0 } else { 1 })
                }
                Err(e) => failed(e),
            }
        }
    }
}
