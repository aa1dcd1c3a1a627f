//! `qvar`: verification sweeps, bound reports, qubit ratio grids,
//! intelligent-state solving, and spin-squeezing scans over the operator
//! numerics in qvar-core.
//!
//! Exit codes: 0 success, 1 verification or solver failure, 2 usage or
//! input error. All output is deterministic for a fixed command line, input
//! files, and seed.

mod bounds;
mod intelligent;
mod io;
mod spin_cmd;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qvar", version, about = "Variance-based quantum uncertainty relations toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized identity and inequality checks over sampled triples
    Verify(VerifyArgs),
    /// Evaluate every uncertainty bound for operators and a state from JSON
    Bounds(BoundsArgs),
    /// Scan the qubit ratio landscape over the Bloch sphere, emitting CSV
    QubitGrid(QubitGridArgs),
    /// Solve the intelligent-state eigenproblem for a pair of operators
    Intelligent(IntelligentArgs),
    /// Collective-spin squeezing: single report or twisting-strength sweep
    Spin(SpinArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for all sampled triples
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated list of dimensions
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4, 8, 16])]
    dims: Vec<usize>,
    /// Random triples per dimension
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Largest acceptable residual
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// JSON file with fields `a`, `b` (operators) and `psi` (state)
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QubitGridArgs {
    /// Pair angle of the planar observables
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
    /// Grid points along the polar angle
    #[arg(long = "n-theta", default_value_t = 181)]
    n_theta: usize,
    /// Grid points along the azimuthal angle
    #[arg(long = "n-varphi", default_value_t = 361)]
    n_varphi: usize,
    /// Interpret input angles as degrees
    #[arg(long)]
    degrees: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IntelligentArgs {
    /// JSON file with fields `a` and `b` (operators)
    #[arg(long)]
    input: PathBuf,
    /// Real saturation parameter
    #[arg(long, allow_hyphen_values = true, conflicts_with = "complex_gamma")]
    gamma: Option<f64>,
    /// Complex saturation parameter as two values: re im
    #[arg(long = "complex-gamma", num_args = 2, allow_hyphen_values = true, value_names = ["RE", "IM"])]
    complex_gamma: Option<Vec<f64>>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpinArgs {
    /// Number of particles
    #[arg(long)]
    n: usize,
    /// Coherent-state angles: theta phi
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["THETA", "PHI"],
          default_values_t = vec![std::f64::consts::FRAC_PI_2, 0.0])]
    css: Vec<f64>,
    /// One-axis twisting strength applied before the report
    #[arg(long, allow_hyphen_values = true, conflicts_with = "oat_sweep")]
    mu: Option<f64>,
    /// Measurement frame axes n1 n2 n3, each one of x, y, z, -x, -y, -z
    #[arg(long, num_args = 3, default_values = ["x", "z", "y"], value_names = ["N1", "N2", "N3"])]
    frame: Vec<String>,
    /// Sweep the twisting strength: start end count (emits CSV)
    #[arg(long = "oat-sweep", num_args = 3, allow_hyphen_values = true, value_names = ["START", "END", "COUNT"])]
    oat_sweep: Option<Vec<String>>,
    /// Interpret input angles as degrees
    #[arg(long)]
    degrees: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify(args) => {
            if args.trials < 1 {
                return Err("trials must be at least 1".to_string());
            }
            if args.tol.is_nan() || args.tol <= 0.0 {
                return Err("tol must be positive".to_string());
            }
            if args.dims.iter().any(|&d| !(2..=64).contains(&d)) {
                return Err("dims must lie in [2, 64]".to_string());
            }
            let summary = verify::run(args.seed, &args.dims, args.trials, args.tol)?;
            let mut text = serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?;
            text.push('\n');
            emit(&text, args.output.as_deref())?;
            Ok(if summary.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }
        Command::Bounds(args) => {
            let input: io::BoundsInput = read_json(&args.input)?;
            let text = bounds::run(&input)?;
            emit(&text, args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::QubitGrid(args) => {
            let phi = convert_angle(args.phi, args.degrees);
            let grid = qvar_core::qubit::grid_scan(phi, args.n_theta, args.n_varphi)
                .map_err(|e| e.to_string())?;
            emit(&qvar_core::qubit::grid_csv(&grid), args.output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Intelligent(args) => {
            let gamma = match (&args.gamma, &args.complex_gamma) {
                (Some(g), None) => Complex64::new(*g, 0.0),
                (None, Some(pair)) => Complex64::new(pair[0], pair[1]),
                (None, None) => return Err("one of --gamma or --complex-gamma is required".into()),
                (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
            };
            let input: io::PairInput = read_json(&args.input)?;
            match intelligent::run(&input, gamma) {
                Ok(text) => {
                    emit(&text, args.output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(msg) if msg.contains("did not converge") => {
                    eprintln!("error: {msg}");
                    Ok(ExitCode::from(EXIT_FAIL))
                }
                Err(msg) => Err(msg),
            }
        }
        Command::Spin(args) => {
            let css = [
                convert_angle(args.css[0], args.degrees),
                convert_angle(args.css[1], args.degrees),
            ];
            match &args.oat_sweep {
                Some(sweep) => {
                    let start: f64 = sweep[0]
                        .parse()
                        .map_err(|_| format!("invalid sweep start `{}`", sweep[0]))?;
                    let end: f64 = sweep[1]
                        .parse()
                        .map_err(|_| format!("invalid sweep end `{}`", sweep[1]))?;
                    let count: usize = sweep[2]
                        .parse()
                        .map_err(|_| format!("invalid sweep count `{}`", sweep[2]))?;
                    let text = spin_cmd::run_sweep(args.n, css, start, end, count)?;
                    emit(&text, args.output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    let axes = [
                        parse_axis(&args.frame[0])?,
                        parse_axis(&args.frame[1])?,
                        parse_axis(&args.frame[2])?,
                    ];
                    let text = spin_cmd::run_report(args.n, css, args.mu, axes)?;
                    emit(&text, args.output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn convert_angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

fn parse_axis(token: &str) -> Result<[f64; 3], String> {
    match token {
        "x" => Ok([1.0, 0.0, 0.0]),
        "y" => Ok([0.0, 1.0, 0.0]),
        "z" => Ok([0.0, 0.0, 1.0]),
        "-x" => Ok([-1.0, 0.0, 0.0]),
        "-y" => Ok([0.0, -1.0, 0.0]),
        "-z" => Ok([0.0, 0.0, -1.0]),
        other => Err(format!(
            "invalid frame axis `{other}`: expected one of x, y, z, -x, -y, -z"
        )),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {}: {e}", path.display()))
}

fn emit(text: &str, output: Option<&std::path::Path>) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
