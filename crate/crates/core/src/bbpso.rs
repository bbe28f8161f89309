//! Bare-bones PSO: a velocity-free swarm where every coordinate is resampled
//! from a Gaussian centered between the personal and global bests, with the
//! distance between them as the standard deviation.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::objective::{Bounds, Objective};
use crate::{Error, Result};

/// Consecutive rejected draws allowed per requested point before a region is
/// declared infeasible.
const REJECTIONS_PER_POINT: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct BbpsoSettings {
    pub swarm_size: usize,
    /// Stop as soon as the global best is at or below this value.
    pub fitness_threshold: f64,
    pub max_iterations: usize,
    /// Hard cap on objective evaluations, initialization included.
    pub evaluation_budget: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmParticle {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmState {
    pub particles: Vec<SwarmParticle>,
    pub gbest_position: Vec<f64>,
    pub gbest_fitness: f64,
    pub iterations_used: usize,
    pub evaluations_used: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BbpsoOutcome {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub evaluations_used: u64,
    pub iterations_used: usize,
    /// Global best after initialization and after every iteration.
    pub gbest_history: Vec<f64>,
}

/// `count` points drawn uniformly from the part of the ball around `center`
/// that lies inside `bounds`.
///
/// Points are drawn uniformly in the ball (Gaussian direction, radius scaled
/// by `U^(1/D)`) and rejected when outside `bounds`, which gives the same
/// distribution as rejection from the ball's bounding box without its
/// exponential cost in high dimension.
pub fn init_swarm<R: Rng + ?Sized>(
    center: &[f64],
    radius: f64,
    count: usize,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    let dim = center.len();
    if dim != bounds.dimension() {
        return Err(Error::arg(format!(
            "center has {dim} coordinates but bounds have {}",
            bounds.dimension()
        )));
    }
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::arg(format!("radius must be finite and non-negative, got {radius}")));
    }
    if count == 0 {
        return Err(Error::arg("swarm needs at least one particle"));
    }
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0usize;
    let limit = REJECTIONS_PER_POINT.saturating_mul(count);
    let mut point = vec![0.0; dim];
    while out.len() < count {
        sample_in_ball(center, radius, rng, &mut point);
        if bounds.contains(&point) {
            out.push(point.clone());
            rejected = 0;
        } else {
            rejected += 1;
            if rejected >= limit {
                return Err(Error::InfeasibleRegion {
                    center: center.to_vec(),
                    radius,
                });
            }
        }
    }
    Ok(out)
}

fn sample_in_ball<R: Rng + ?Sized>(center: &[f64], radius: f64, rng: &mut R, out: &mut [f64]) {
    let dim = center.len();
    let mut norm_sq = 0.0;
    while norm_sq == 0.0 {
        for v in out.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        norm_sq = out.iter().map(|v| v * v).sum();
    }
    let u: f64 = rng.random();
    let scale = radius * u.powf(1.0 / dim as f64) / norm_sq.sqrt();
    for (v, c) in out.iter_mut().zip(center) {
        *v = c + *v * scale;
    }
}

/// One bare-bones draw: coordinate j ~ N((p_j + g_j)/2, |p_j − g_j|).
pub fn sample_position<R: Rng + ?Sized>(pbest: &[f64], gbest: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    if pbest.len() != gbest.len() {
        return Err(Error::arg(format!(
            "pbest has {} coordinates, gbest has {}",
            pbest.len(),
            gbest.len()
        )));
    }
    let mut out = vec![0.0; pbest.len()];
    sample_into(pbest, gbest, rng, &mut out);
    Ok(out)
}

fn sample_into<R: Rng + ?Sized>(pbest: &[f64], gbest: &[f64], rng: &mut R, out: &mut [f64]) {
    for ((o, p), g) in out.iter_mut().zip(pbest).zip(gbest) {
        let mean = (p + g) / 2.0;
        let sd = (p - g).abs();
        *o = if sd == 0.0 {
            mean
        } else {
            let z: f64 = rng.sample(StandardNormal);
            mean + sd * z
        };
    }
}

impl SwarmState {
    /// Evaluates the initial positions. Exactly `positions.len()` evaluations.
    fn from_positions<O: Objective + ?Sized>(objective: &mut O, positions: Vec<Vec<f64>>) -> Self {
        let particles: Vec<SwarmParticle> = positions
            .into_iter()
            .map(|position| {
                let fitness = objective.evaluate(&position);
                SwarmParticle {
                    pbest_position: position.clone(),
                    pbest_fitness: fitness,
                    position,
                    fitness,
                }
            })
            .collect();
        let evaluations_used = particles.len() as u64;
        let best = best_index(&particles);
        Self {
            gbest_position: particles[best].pbest_position.clone(),
            gbest_fitness: particles[best].pbest_fitness,
            particles,
            iterations_used: 0,
            evaluations_used,
        }
    }

    fn refresh_gbest(&mut self) {
        let best = best_index(&self.particles);
        let p = &self.particles[best];
        if p.pbest_fitness < self.gbest_fitness {
            self.gbest_fitness = p.pbest_fitness;
            self.gbest_position.clone_from(&p.pbest_position);
        }
    }

    /// One synchronous iteration: every particle moves against the global
    /// best as it stood at the start of the iteration. Stops early when the
    /// budget runs out.
    fn step<O: Objective + ?Sized, R: Rng + ?Sized>(&mut self, objective: &mut O, budget: u64, rng: &mut R) {
        let bounds = objective.search_bounds().clone();
        let gbest = self.gbest_position.clone();
        let mut candidate = vec![0.0; gbest.len()];
        for p in &mut self.particles {
            if self.evaluations_used >= budget {
                break;
            }
            sample_into(&p.pbest_position, &gbest, rng, &mut candidate);
            bounds.clamp(&mut candidate);
            let f = objective.evaluate(&candidate);
            self.evaluations_used += 1;
            p.position.copy_from_slice(&candidate);
            p.fitness = f;
            if f < p.pbest_fitness {
                p.pbest_fitness = f;
                p.pbest_position.copy_from_slice(&candidate);
            }
        }
        self.iterations_used += 1;
        self.refresh_gbest();
    }

    fn run<O: Objective + ?Sized, R: Rng + ?Sized>(
        mut self,
        objective: &mut O,
        settings: &BbpsoSettings,
        rng: &mut R,
    ) -> BbpsoOutcome {
        let mut history = vec![self.gbest_fitness];
        while self.gbest_fitness > settings.fitness_threshold
            && self.iterations_used < settings.max_iterations
            && self.evaluations_used < settings.evaluation_budget
        {
            self.step(objective, settings.evaluation_budget, rng);
            history.push(self.gbest_fitness);
        }
        BbpsoOutcome {
            best_position: self.gbest_position,
            best_fitness: self.gbest_fitness,
            evaluations_used: self.evaluations_used,
            iterations_used: self.iterations_used,
            gbest_history: history,
        }
    }
}

/// Lowest personal best; the earliest index wins ties.
fn best_index(particles: &[SwarmParticle]) -> usize {
    let mut best = 0;
    for (i, p) in particles.iter().enumerate().skip(1) {
        if p.pbest_fitness < particles[best].pbest_fitness {
            best = i;
        }
    }
    best
}

fn validate(settings: &BbpsoSettings) -> Result<()> {
    if settings.swarm_size < 2 {
        return Err(Error::arg("swarm size must be at least 2"));
    }
    if settings.evaluation_budget < settings.swarm_size as u64 {
        return Err(Error::arg(format!(
            "evaluation budget {} cannot cover the initial swarm of {}",
            settings.evaluation_budget, settings.swarm_size
        )));
    }
    if settings.fitness_threshold.is_nan() {
        return Err(Error::arg("fitness threshold is NaN"));
    }
    Ok(())
}

/// Runs a swarm initialized inside the ball around `center`. Updates are only
/// clamped to the objective's search bounds, not to the ball.
pub fn run_bbpso<O: Objective + ?Sized, R: Rng + ?Sized>(
    objective: &mut O,
    center: &[f64],
    radius: f64,
    settings: &BbpsoSettings,
    rng: &mut R,
) -> Result<BbpsoOutcome> {
    validate(settings)?;
    if center.len() != objective.dimension() {
        return Err(Error::arg("center dimension does not match the objective"));
    }
    let positions = init_swarm(center, radius, settings.swarm_size, objective.search_bounds(), rng)?;
    let state = SwarmState::from_positions(objective, positions);
    Ok(state.run(objective, settings, rng))
}

/// Runs a swarm initialized uniformly over the objective's initialization box.
pub fn run_bbpso_in_box<O: Objective + ?Sized, R: Rng + ?Sized>(
    objective: &mut O,
    settings: &BbpsoSettings,
    rng: &mut R,
) -> Result<BbpsoOutcome> {
    validate(settings)?;
    let init = objective.init_bounds().clone();
    let positions = (0..settings.swarm_size).map(|_| init.sample(rng)).collect();
    let state = SwarmState::from_positions(objective, positions);
    Ok(state.run(objective, settings, rng))
}
