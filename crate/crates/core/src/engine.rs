//! The leader controller.
//!
//! Each epoch visits the leaders in order. A leader whose region is novel
//! enough archives its center and runs a bare-bones swarm there; any other
//! leader is moved to a fresh random position. After the epoch, every
//! leader's novelty is recomputed against the archive and its peers.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bbpso::{run_bbpso, run_bbpso_in_box, BbpsoSettings};
use crate::bench::{Problem, ScalarObjective};
use crate::novelty::{classify, compute_novelty, LeaderParticle, NoveltyArchive};
use crate::objective::{Bounds, Objective};
use crate::{rng_from_seed, Error, Result};

/// Evaluations per dimension used as the default budget (5000 · 60).
pub const FES_PER_DIMENSION: u64 = 5000 * 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub leader_count: usize,
    pub swarm_size: usize,
    pub radius_initial: f64,
    /// Added to the radius after every epoch.
    pub radius_increment: f64,
    pub novelty_threshold: f64,
    /// Fraction of the threshold removed after every epoch.
    pub threshold_decay: f64,
    pub fitness_threshold: f64,
    pub max_iterations_outer: u64,
    pub inner_max_iterations: usize,
    pub max_fes: u64,
    pub seed: u64,
}

impl RunConfig {
    /// Defaults: 7 leaders, swarms of 25, unit radius, threshold 50 and a
    /// budget of 300 000 evaluations per dimension.
    pub fn for_dimension(dim: usize) -> Self {
        Self {
            leader_count: 7,
            swarm_size: 25,
            radius_initial: 1.0,
            radius_increment: 0.0,
            novelty_threshold: 50.0,
            threshold_decay: 0.0,
            fitness_threshold: 1e-8,
            max_iterations_outer: 1_000_000,
            inner_max_iterations: 200,
            max_fes: FES_PER_DIMENSION * dim as u64,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.leader_count == 0 {
            return fail("leader_count must be at least 1".into());
        }
        if self.swarm_size < 2 {
            return fail(format!("swarm_size must be at least 2, got {}", self.swarm_size));
        }
        if !(self.radius_initial > 0.0 && self.radius_initial.is_finite()) {
            return fail(format!("radius_initial must be positive, got {}", self.radius_initial));
        }
        if !(self.radius_increment >= 0.0 && self.radius_increment.is_finite()) {
            return fail(format!("radius_increment must be >= 0, got {}", self.radius_increment));
        }
        if !(self.novelty_threshold > 0.0 && self.novelty_threshold <= 100.0) {
            return fail(format!("novelty_threshold must be in (0, 100], got {}", self.novelty_threshold));
        }
        if !(0.0..=1.0).contains(&self.threshold_decay) {
            return fail(format!("threshold_decay must be in [0, 1], got {}", self.threshold_decay));
        }
        if self.fitness_threshold.is_nan() {
            return fail("fitness_threshold is NaN".into());
        }
        let floor = self.leader_count as u64 * self.swarm_size as u64;
        if self.max_fes < floor {
            return fail(format!(
                "max_fes {} is below leader_count * swarm_size = {floor}",
                self.max_fes
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    BudgetExhausted,
    AllLowNovel,
    MaxOuterIterations,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::BudgetExhausted => "budget exhausted",
            StopReason::AllLowNovel => "all leaders low novel",
            StopReason::MaxOuterIterations => "outer iteration limit",
        })
    }
}

/// Global best after some number of evaluations, tagged with the leader
/// whose turn produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry {
    pub evals: u64,
    pub best_fitness: f64,
    pub leader_index: usize,
}

/// One launched swarm search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub leader_index: usize,
    pub center: Vec<f64>,
    /// Threshold and radius in force when the center was archived.
    pub threshold: f64,
    pub radius: f64,
    pub best_fitness: f64,
    pub evaluations: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    pub evaluations_used: u64,
    pub outer_iterations: u64,
    pub archive_size: usize,
    pub gbest_trace: Vec<TraceEntry>,
    pub stop_reason: StopReason,
    /// Searches in archive order.
    pub searches: Vec<SearchRecord>,
}

impl RunResult {
    pub fn write_trace_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "evals,best_fitness,leader_index")?;
        for e in &self.gbest_trace {
            writeln!(out, "{},{:.16e},{}", e.evals, e.best_fitness, e.leader_index)?;
        }
        Ok(())
    }

    pub fn save_trace(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        self.write_trace_csv(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(path, e))
    }
}

/// A fresh leader position drawn uniformly from `bounds`.
pub fn recompute_position<R: Rng + ?Sized>(bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    bounds.sample(rng)
}

/// Budget beats low novelty, which beats the outer iteration cap.
pub fn should_stop(
    leaders: &[LeaderParticle],
    evaluations_used: u64,
    outer_iteration: u64,
    config: &RunConfig,
) -> Option<StopReason> {
    if evaluations_used >= config.max_fes {
        return Some(StopReason::BudgetExhausted);
    }
    let all_low = leaders
        .iter()
        .all(|l| classify(l.novelty).map(|c| c.is_low()).unwrap_or(false));
    if all_low {
        return Some(StopReason::AllLowNovel);
    }
    if outer_iteration >= config.max_iterations_outer {
        return Some(StopReason::MaxOuterIterations);
    }
    None
}

/// Recomputes every leader's novelty in order. Leaders already told to
/// recompute score 0 and skip the peer comparison.
fn refresh_novelties(leaders: &mut [LeaderParticle], archive: &NoveltyArchive, threshold: f64) -> Result<()> {
    for i in 0..leaders.len() {
        if leaders[i].recompute {
            leaders[i].novelty = 0.0;
            continue;
        }
        let (before, rest) = leaders.split_at_mut(i);
        let (me, after) = rest.split_first_mut().expect("index in range");
        let verdict = compute_novelty(me, before.iter_mut().chain(after.iter_mut()), archive, threshold)?;
        me.novelty = verdict.novelty;
        me.recompute |= verdict.recompute;
    }
    Ok(())
}

/// Runs the controller on a single-objective benchmark problem.
pub fn run(problem: &Problem, config: &RunConfig) -> Result<RunResult> {
    let mut objective = ScalarObjective::new(problem).map_err(|e| Error::Config(e.to_string()))?;
    run_objective(&mut objective, config)
}

/// Runs the controller on any objective. Deterministic given `config.seed`.
pub fn run_objective<O: Objective + ?Sized>(objective: &mut O, config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let init = objective.init_bounds().clone();
    let n = config.leader_count;
    let mut radius = config.radius_initial;
    let mut threshold = config.novelty_threshold;

    let mut leaders = Vec::with_capacity(n);
    let mut evals = 0u64;
    let mut best_fitness = f64::INFINITY;
    let mut best_position = Vec::new();
    let mut best_leader = 0;
    for i in 0..n {
        let position = recompute_position(&init, &mut rng);
        let f = objective.evaluate(&position);
        evals += 1;
        if f < best_fitness || best_position.is_empty() {
            best_fitness = f;
            best_position = position.clone();
            best_leader = i;
        }
        leaders.push(LeaderParticle::new(i, position, radius));
    }
    let mut trace = vec![TraceEntry {
        evals,
        best_fitness,
        leader_index: best_leader,
    }];

    let mut archive = NoveltyArchive::new();
    let mut searches = Vec::new();
    refresh_novelties(&mut leaders, &archive, threshold)?;

    let inner_cap = (config.swarm_size as u64).saturating_mul(config.inner_max_iterations as u64 + 1);
    let mut epoch = 0u64;
    let stop_reason = 'epochs: loop {
        if let Some(reason) = should_stop(&leaders, evals, epoch, config) {
            break reason;
        }
        epoch += 1;
        for leader in leaders.iter_mut() {
            if leader.recompute || leader.novelty < threshold {
                leader.position = recompute_position(&init, &mut rng);
                leader.recompute = false;
                continue;
            }
            let remaining = config.max_fes - evals;
            if remaining < config.swarm_size as u64 {
                break 'epochs StopReason::BudgetExhausted;
            }
            archive.push(leader.position.clone());
            let settings = BbpsoSettings {
                swarm_size: config.swarm_size,
                fitness_threshold: config.fitness_threshold,
                max_iterations: config.inner_max_iterations,
                evaluation_budget: inner_cap.min(remaining),
            };
            let outcome = run_bbpso(objective, &leader.position, radius, &settings, &mut rng)?;
            evals += outcome.evaluations_used;
            if outcome.best_fitness < best_fitness {
                best_fitness = outcome.best_fitness;
                best_position.clone_from(&outcome.best_position);
            }
            trace.push(TraceEntry {
                evals,
                best_fitness,
                leader_index: leader.index,
            });
            searches.push(SearchRecord {
                leader_index: leader.index,
                center: leader.position.clone(),
                threshold,
                radius,
                best_fitness: outcome.best_fitness,
                evaluations: outcome.evaluations_used,
            });
            leader.position = recompute_position(&init, &mut rng);
        }

        radius += config.radius_increment;
        threshold = (threshold * (1.0 - config.threshold_decay)).max(f64::MIN_POSITIVE);
        for leader in leaders.iter_mut() {
            leader.radius = radius;
        }
        refresh_novelties(&mut leaders, &archive, threshold)?;
    };

    Ok(RunResult {
        best_fitness,
        best_position,
        evaluations_used: evals,
        outer_iterations: epoch,
        archive_size: archive.len(),
        gbest_trace: trace,
        stop_reason,
        searches,
    })
}

/// Plain bare-bones PSO over the whole initialization box with the same
/// swarm size, seed and evaluation budget as `config`. Runs until the budget
/// is spent.
pub fn run_baseline<O: Objective + ?Sized>(objective: &mut O, config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let mut rng = rng_from_seed(config.seed);
    let settings = BbpsoSettings {
        swarm_size: config.swarm_size,
        fitness_threshold: f64::NEG_INFINITY,
        max_iterations: usize::MAX,
        evaluation_budget: config.max_fes,
    };
    let outcome = run_bbpso_in_box(objective, &settings, &mut rng)?;
    let s = config.swarm_size as u64;
    let mut trace: Vec<TraceEntry> = Vec::new();
    for (k, &f) in outcome.gbest_history.iter().enumerate() {
        if trace.last().is_none_or(|e| f < e.best_fitness) {
            trace.push(TraceEntry {
                evals: (s * (k as u64 + 1)).min(outcome.evaluations_used),
                best_fitness: f,
                leader_index: 0,
            });
        }
    }
    Ok(RunResult {
        best_fitness: outcome.best_fitness,
        best_position: outcome.best_position,
        evaluations_used: outcome.evaluations_used,
        outer_iterations: outcome.iterations_used as u64,
        archive_size: 0,
        gbest_trace: trace,
        stop_reason: StopReason::BudgetExhausted,
        searches: Vec::new(),
    })
}
