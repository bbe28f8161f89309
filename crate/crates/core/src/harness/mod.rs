//! Batch experiments: every (problem, config) cell is run `repetitions`
//! times with seeds `base_seed + k`, then summarized and compared against a
//! reference config with the rank-sum test.

mod config;
mod report;
mod stats;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{ConfigVariant, ExperimentSpec, ProblemCell, BASELINE_NAME};
pub use report::{emit_csv, emit_runs_csv, parse_summary_csv, read_summary_csv, summary_csv, RUNS_HEADER, SUMMARY_HEADER};
pub use stats::{average_ranks, mean, median, std_dev, wilcoxon_rank_sum, RankSumTest};

use crate::bench::{MmfObjective, OrthogonalMatrix, Problem, ProblemId, Scalarization, ScalarObjective};
use crate::engine::{run_baseline, run_objective, RunConfig, RunResult, StopReason};
use crate::{rng_from_seed, Error, Result};

/// Front samples used as the IGD reference for bi-objective problems.
pub const IGD_REFERENCE_POINTS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub problem: ProblemId,
    pub dim: usize,
    pub config: String,
    pub mean_final: f64,
    pub std_final: f64,
    pub median_final: f64,
    pub mean_evals: f64,
    /// Empty for the reference config itself.
    pub h_vs_reference: Option<u8>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub problem: ProblemId,
    pub dim: usize,
    pub config: String,
    pub run_index: usize,
    pub seed: u64,
    /// Best fitness, or IGD for bi-objective problems.
    pub final_value: f64,
    pub best_fitness: f64,
    pub evaluations_used: u64,
    pub stop_reason: StopReason,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<SummaryRow>,
    pub runs: Vec<RunRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Result of one run on one problem.
#[derive(Clone, Debug, PartialEq)]
pub struct CellOutcome {
    pub result: RunResult,
    /// IGD of the nondominated evaluated points (bi-objective problems only).
    pub igd: Option<f64>,
}

impl CellOutcome {
    pub fn final_value(&self) -> f64 {
        self.igd.unwrap_or(self.result.best_fitness)
    }
}

/// One run of the controller, or of the baseline when `baseline` is set.
/// Bi-objective problems are minimized on their first objective and scored
/// by IGD.
pub fn solve(problem: &Problem, config: &RunConfig, baseline: bool) -> Result<CellOutcome> {
    let go = |obj: &mut dyn crate::Objective| {
        if baseline {
            run_baseline(obj, config)
        } else {
            run_objective(obj, config)
        }
    };
    if problem.id().is_multi_objective() {
        let mut obj = MmfObjective::new(problem, Scalarization::FirstObjective)?;
        let result = go(&mut obj)?;
        let igd = obj.igd(IGD_REFERENCE_POINTS)?;
        Ok(CellOutcome { result, igd: Some(igd) })
    } else {
        let mut obj = ScalarObjective::new(problem)?;
        let result = go(&mut obj)?;
        Ok(CellOutcome { result, igd: None })
    }
}

pub fn rotation_file(dir: &Path, id: ProblemId, dim: usize) -> PathBuf {
    dir.join(format!("{id}_d{dim}.rot"))
}

/// Builds the problem for a cell. Rotated problems reuse a saved matrix from
/// `rotation_dir` when present and save a freshly drawn one otherwise.
pub fn build_problem(cell: &ProblemCell, rotation_seed: u64, rotation_dir: Option<&Path>) -> Result<Problem> {
    if !cell.id.is_rotated() {
        return Problem::new(cell.id, cell.dimension);
    }
    let Some(dir) = rotation_dir else {
        return Problem::with_rotation_seed(cell.id, cell.dimension, rotation_seed);
    };
    let path = rotation_file(dir, cell.id, cell.dimension);
    let matrix = if path.exists() {
        let m = OrthogonalMatrix::load(&path)?;
        if m.dim() != cell.dimension {
            return Err(Error::Config(format!(
                "{} holds a {}-dimensional matrix, expected {}",
                path.display(),
                m.dim(),
                cell.dimension
            )));
        }
        m
    } else {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let m = OrthogonalMatrix::random(cell.dimension, &mut rng_from_seed(rotation_seed))?;
        m.save(&path)?;
        m
    };
    Problem::with_rotation(cell.id, matrix)
}

/// Runs every cell of `spec` and summarizes it. Writes nothing.
pub fn execute(spec: &ExperimentSpec, execution: Execution) -> Result<ExperimentReport> {
    spec.validate()?;
    let problems: Vec<Problem> = spec
        .problems
        .iter()
        .map(|c| build_problem(c, spec.rotation_seed(), spec.rotation_dir.as_deref()))
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize, usize)> = (0..problems.len())
        .flat_map(|p| (0..spec.configs.len()).flat_map(move |c| (0..spec.repetitions).map(move |k| (p, c, k))))
        .collect();
    let job = |&(p, c, k): &(usize, usize, usize)| -> Result<RunRecord> {
        let problem = &problems[p];
        let variant = &spec.configs[c];
        let mut config = variant.resolve(problem.dimension())?;
        config.seed = spec.base_seed.wrapping_add(k as u64);
        let outcome = solve(problem, &config, variant.is_baseline())?;
        Ok(RunRecord {
            problem: problem.id(),
            dim: problem.dimension(),
            config: variant.name().to_string(),
            run_index: k,
            seed: config.seed,
            final_value: outcome.final_value(),
            best_fitness: outcome.result.best_fitness,
            evaluations_used: outcome.result.evaluations_used,
            stop_reason: outcome.result.stop_reason,
        })
    };
    let runs: Vec<RunRecord> = match execution {
        Execution::Serial => jobs.iter().map(job).collect::<Result<_>>()?,
        Execution::Parallel => jobs.par_iter().map(job).collect::<Result<_>>()?,
    };

    let reference = spec.reference_name();
    let mut rows = Vec::new();
    for (p, problem) in problems.iter().enumerate() {
        let finals_of = |c: usize| -> Vec<f64> {
            let start = (p * spec.configs.len() + c) * spec.repetitions;
            runs[start..start + spec.repetitions].iter().map(|r| r.final_value).collect()
        };
        let ref_index = spec
            .configs
            .iter()
            .position(|v| v.name() == reference)
            .expect("validated reference");
        let ref_finals = finals_of(ref_index);
        for (c, variant) in spec.configs.iter().enumerate() {
            let start = (p * spec.configs.len() + c) * spec.repetitions;
            let cell = &runs[start..start + spec.repetitions];
            let finals = finals_of(c);
            let evals: Vec<f64> = cell.iter().map(|r| r.evaluations_used as f64).collect();
            let h = if c == ref_index || spec.repetitions < 5 {
                None
            } else {
                Some(wilcoxon_rank_sum(&ref_finals, &finals, spec.alpha)?.h)
            };
            rows.push(SummaryRow {
                problem: problem.id(),
                dim: problem.dimension(),
                config: variant.name().to_string(),
                mean_final: mean(&finals),
                std_final: std_dev(&finals),
                median_final: median(&finals),
                mean_evals: mean(&evals),
                h_vs_reference: h,
            });
        }
    }
    rows.sort_by(|a, b| (a.problem, a.dim, &a.config).cmp(&(b.problem, b.dim, &b.config)));
    Ok(ExperimentReport { rows, runs })
}

/// Runs the experiment in parallel and writes the summary CSV (and the
/// per-run log when `runs_path` is set).
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    let report = execute(spec, Execution::Parallel)?;
    emit_csv(&report.rows, &spec.output_path)?;
    if let Some(path) = &spec.runs_path {
        emit_runs_csv(&report.runs, path)?;
    }
    Ok(report)
}
