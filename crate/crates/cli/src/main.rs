use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use specradius::harness::{run_suites, run_trial, Seed};
use specradius::indices::{has_unitary_part, is_class_sn, nilpotency_index_dense, nilpotency_index_graph, power_norm_index};
use specradius::matkernel::operator_norm;
use specradius::numrange::{boundary_points, numerical_radius, support_oscillation, write_boundary_csv};
use specradius::structures::{detect_block_shift, gallery_entry};
use specradius::tensorlaw::{evaluate_pair, TensorConfig, DEFAULT_SIZE_CAP};
use specradius::{ComplexMatrix, Error, ToleranceConfig};

const SIZE_CAP_VAR: &str = "SPECRADIUS_SIZE_CAP";

#[derive(Parser)]
#[command(name = "specradius", version, about = "Numerical radii, matrix indices and tensor-product equality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the numerical radius w(A).
    Radius {
        matrix: PathBuf,
        /// Target accuracy of the radius.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample the support function and boundary of W(A) into a CSV file.
    Boundary {
        matrix: PathBuf,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the power-norm and nilpotency indices and structural flags.
    Indices { matrix: PathBuf },
    /// Block-shift detection report for a nonnegative matrix (JSON).
    Classify { matrix: PathBuf },
    /// Compare w(A⊗B) with ‖A‖·w(B) and ‖B‖·w(A) (JSON).
    Tensor { a: PathBuf, b: PathBuf },
    /// Write the matrices of a gallery entry as matrix JSON files.
    Gallery {
        label: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Parameter a of thm_2_13_counterexample.
        #[arg(long)]
        a: Option<f64>,
    },
    /// Run a verification suite, or all of them.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the suite results as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Replay one trial and print its report.
        #[arg(long)]
        trial: Option<usize>,
    },
}

enum Failure {
    Spec(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Spec(e)
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    ComplexMatrix::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn tensor_config() -> Result<TensorConfig, Failure> {
    let cap = match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::Usage(format!("{SIZE_CAP_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_SIZE_CAP,
    };
    Ok(TensorConfig::default().with_size_cap(cap))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let cfg = ToleranceConfig::default();
    match cli.command {
        Command::Radius { matrix, tol } => {
            let a = read_matrix(&matrix)?;
            let cfg = match tol {
                Some(t) => cfg.with_radius_tol(t),
                None => cfg,
            };
            cfg.validate()?;
            println!("{}", numerical_radius(&a, &cfg)?);
        }
        Command::Boundary { matrix, points, out } => {
            let a = read_matrix(&matrix)?;
            let profile = boundary_points(&a, points, &cfg)?;
            let file = fs::File::create(&out).map_err(io_err(&out))?;
            let mut w = BufWriter::new(file);
            write_boundary_csv(&profile, &mut w).and_then(|_| w.flush()).map_err(io_err(&out))?;
            println!("{} points written to {} (w = {}, disc = {})", points, out.display(), profile.radius, profile.is_disc);
        }
        Command::Indices { matrix } => {
            let a = read_matrix(&matrix)?;
            a.ensure_square("indices")?;
            if a.is_zero() {
                println!("p_A: undefined (zero matrix)");
            } else {
                println!("p_A: {}", power_norm_index(&a, &cfg)?);
            }
            println!("n_A (dense): {}", nilpotency_index_dense(&a, &cfg)?);
            if a.is_nonnegative(0.0) {
                println!("n_A (graph): {}", nilpotency_index_graph(&a)?);
            }
            println!("class S_n: {}", is_class_sn(&a, &cfg)?);
            if !a.is_zero() {
                let unit = a.scale_real(1.0 / operator_norm(&a, &cfg));
                println!("unitary part (of A/‖A‖): {}", has_unitary_part(&unit, &cfg)?);
            }
        }
        Command::Classify { matrix } => {
            let b = read_matrix(&matrix)?;
            let d = detect_block_shift(&b, &cfg)?;
            print_json(&json!({
                "block_shift": d.is_some(),
                "shift_count": d.as_ref().map(|d| d.shift_count()),
                "decomposition": d,
                "nilpotency_index": nilpotency_index_graph(&b).ok(),
                "support_oscillation": support_oscillation(&b, &cfg)?,
            }));
        }
        Command::Tensor { a, b } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            print_json(&evaluate_pair(&a, &b, &tensor_config()?)?);
        }
        Command::Gallery { label, out, a } => {
            let entry = gallery_entry(&label, a)?;
            fs::create_dir_all(&out).map_err(io_err(&out))?;
            for (name, m) in &entry.matrices {
                let path = out.join(format!("{}_{name}.json", entry.label));
                fs::write(&path, m.to_json() + "\n").map_err(io_err(&path))?;
                println!("{}", path.display());
            }
        }
        Command::Verify { suite, trials, seed, json, trial } => {
            let tcfg = tensor_config()?;
            if let Some(t) = trial {
                let report = run_trial(&suite, t, Seed(seed), &tcfg)?;
                print_json(&report);
                return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
            }
            let results = run_suites(&suite, trials, Seed(seed), &tcfg)?;
            let mut failed = 0;
            for r in &results {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!(
                    "{status} {}: {} trials, {} failures ({:.2}s)",
                    r.suite_name,
                    r.trials,
                    r.failures.len(),
                    r.elapsed.as_secs_f64()
                );
                for f in &r.failures {
                    println!("  replay: specradius verify {} --seed {seed} --trial {}", r.suite_name, f.inputs["trial"]);
                }
                failed += usize::from(!r.passed());
            }
            println!("{} of {} suites passed", results.len() - failed, results.len());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&results).expect("suite results serialize");
                fs::write(&path, text).map_err(io_err(&path))?;
            }
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Spec(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
