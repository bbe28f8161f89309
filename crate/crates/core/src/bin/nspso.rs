use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nspso::bench::{OrthogonalMatrix, Problem, ProblemId};
use nspso::harness::{self, CellOutcome, ConfigVariant, ExperimentSpec};
use nspso::Error;

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "nspso", version, about = "Novelty-search controlled PSO and its benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a full experiment described by a TOML spec file.
    Run {
        #[arg(long)]
        spec: PathBuf,
    },
    /// One run of the novelty-controlled optimizer.
    Solve(SingleRun),
    /// One run of plain bare-bones PSO over the whole domain.
    Baseline(SingleRun),
}

#[derive(Args)]
struct SingleRun {
    #[arg(long)]
    problem: ProblemId,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// TOML file with run configuration overrides.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the global-best trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Load the rotation matrix of f9–f14 from this file.
    #[arg(long, conflicts_with = "rotation_seed")]
    rotation: Option<PathBuf>,
    #[arg(long)]
    rotation_seed: Option<u64>,
    /// Save the rotation matrix in use to this file.
    #[arg(long)]
    save_rotation: Option<PathBuf>,
}

fn single_run(args: SingleRun, baseline: bool) -> nspso::Result<()> {
    let variant = match &args.config {
        Some(path) => ConfigVariant::load(path)?,
        None => ConfigVariant::default(),
    };
    let mut config = variant.resolve(args.dim)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let problem = match (&args.rotation, args.problem.is_rotated()) {
        (Some(path), true) => Problem::with_rotation(args.problem, OrthogonalMatrix::load(path)?)?,
        (Some(_), false) => return Err(Error::Config(format!("{} is not a rotated problem", args.problem))),
        (None, _) => Problem::with_rotation_seed(args.problem, args.dim, args.rotation_seed.unwrap_or(0))?,
    };
    if problem.dimension() != args.dim {
        return Err(Error::Config(format!(
            "rotation matrix is {}-dimensional but --dim is {}",
            problem.dimension(),
            args.dim
        )));
    }
    if let (Some(path), Some(m)) = (&args.save_rotation, problem.rotation()) {
        m.save(path)?;
    }
    let outcome = harness::solve(&problem, &config, baseline)?;
    print_outcome(&problem, &outcome, baseline);
    if let Some(path) = &args.trace {
        outcome.result.save_trace(path)?;
    }
    Ok(())
}

fn print_outcome(problem: &Problem, outcome: &CellOutcome, baseline: bool) {
    let r = &outcome.result;
    let algo = if baseline { "baseline bare-bones PSO" } else { "novelty-controlled PSO" };
    println!("{} ({}), D = {}, {algo}", problem.id(), problem.id().name(), problem.dimension());
    println!("best_fitness     {:.16e}", r.best_fitness);
    if let Some(igd) = outcome.igd {
        println!("igd              {igd:.16e}");
    }
    println!("evaluations_used {}", r.evaluations_used);
    println!("outer_iterations {}", r.outer_iterations);
    println!("archive_size     {}", r.archive_size);
    println!("stop_reason      {}", r.stop_reason);
    let pos: Vec<String> = r.best_position.iter().map(|v| format!("{v:.10}")).collect();
    println!("best_position    [{}]", pos.join(", "));
}

fn run_spec(path: PathBuf) -> nspso::Result<()> {
    let spec = ExperimentSpec::load(&path)?;
    let report = harness::run_experiment(&spec)?;
    println!(
        "{:<5} {:>4} {:<20} {:>14} {:>14} {:>14} {:>3}",
        "prob", "dim", "config", "mean", "std", "median", "h"
    );
    for r in &report.rows {
        let h = r.h_vs_reference.map(|h| h.to_string()).unwrap_or_default();
        println!(
            "{:<5} {:>4} {:<20} {:>14.6e} {:>14.6e} {:>14.6e} {:>3}",
            r.problem.to_string(),
            r.dim,
            r.config,
            r.mean_final,
            r.std_final,
            r.median_final,
            h
        );
    }
    println!("wrote {}", spec.output_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { spec } => run_spec(spec),
        Command::Solve(args) => single_run(args, false),
        Command::Baseline(args) => single_run(args, true),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { EXIT_CONFIG } else { EXIT_IO })
        }
    }
}
