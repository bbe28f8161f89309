//! TOML files for experiments (`run --spec`) and single-run overrides
//! (`solve --config`). Keys mirror the field names of [`RunConfig`] and
//! [`ExperimentSpec`]; unknown keys are rejected.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::bench::ProblemId;
use crate::engine::RunConfig;
use crate::{Error, Result};

/// Name reserved for the whole-domain bare-bones PSO baseline.
pub const BASELINE_NAME: &str = "baseline-bbpso";

/// A named set of [`RunConfig`] overrides. Missing fields take the defaults
/// of [`RunConfig::for_dimension`].
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigVariant {
    pub name: Option<String>,
    pub leader_count: Option<usize>,
    pub swarm_size: Option<usize>,
    pub radius_initial: Option<f64>,
    pub radius_increment: Option<f64>,
    pub novelty_threshold: Option<f64>,
    pub threshold_decay: Option<f64>,
    pub fitness_threshold: Option<f64>,
    pub max_iterations_outer: Option<u64>,
    pub inner_max_iterations: Option<usize>,
    pub max_fes: Option<u64>,
    pub seed: Option<u64>,
}

impl ConfigVariant {
    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("nspso")
    }

    pub fn is_baseline(&self) -> bool {
        self.name() == BASELINE_NAME
    }

    /// Applies the overrides to the defaults for `dim` and validates the result.
    pub fn resolve(&self, dim: usize) -> Result<RunConfig> {
        let mut c = RunConfig::for_dimension(dim);
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        set!(
            leader_count,
            swarm_size,
            radius_initial,
            radius_increment,
            novelty_threshold,
            threshold_decay,
            fitness_threshold,
            max_iterations_outer,
            inner_max_iterations,
            max_fes,
            seed
        );
        c.validate()?;
        Ok(c)
    }

    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            message,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemCell {
    pub id: ProblemId,
    pub dimension: usize,
}

fn default_repetitions() -> usize {
    25
}

fn default_alpha() -> f64 {
    0.05
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub problems: Vec<ProblemCell>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    /// Run k of every cell uses seed `base_seed + k`.
    #[serde(default)]
    pub base_seed: u64,
    pub configs: Vec<ConfigVariant>,
    pub output_path: PathBuf,
    /// Config the others are tested against; defaults to the first one.
    #[serde(default)]
    pub reference: Option<String>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Seed for the rotation matrices of f9–f14; defaults to `base_seed`.
    #[serde(default)]
    pub rotation_seed: Option<u64>,
    /// Directory where rotation matrices are loaded from or saved to.
    #[serde(default)]
    pub rotation_dir: Option<PathBuf>,
    /// Optional per-run CSV log.
    #[serde(default)]
    pub runs_path: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut spec = Self::from_toml(&text).map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            message,
        })?;
        // Relative output paths are taken relative to the spec file.
        if let Some(dir) = path.parent() {
            let rebase = |p: &mut PathBuf| {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            };
            rebase(&mut spec.output_path);
            spec.runs_path.as_mut().map(rebase);
            spec.rotation_dir.as_mut().map(rebase);
        }
        Ok(spec)
    }

    pub fn reference_name(&self) -> &str {
        self.reference
            .as_deref()
            .or_else(|| self.configs.first().map(ConfigVariant::name))
            .unwrap_or("")
    }

    pub fn rotation_seed(&self) -> u64 {
        self.rotation_seed.unwrap_or(self.base_seed)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.repetitions == 0 {
            problems.push("repetitions must be at least 1".to_string());
        }
        if self.problems.is_empty() {
            problems.push("no problems listed".to_string());
        }
        if self.configs.is_empty() {
            problems.push("no configs listed".to_string());
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.5) {
            problems.push(format!("alpha must be in (0, 0.5], got {}", self.alpha));
        }
        let bad_cells: Vec<String> = self
            .problems
            .iter()
            .filter(|c| c.dimension == 0 || (c.id.is_multi_objective() && c.dimension != 2))
            .map(|c| format!("{}@D={}", c.id, c.dimension))
            .collect();
        if !bad_cells.is_empty() {
            problems.push(format!("invalid problem/dimension cells: {}", bad_cells.join(", ")));
        }
        let mut names = BTreeSet::new();
        for v in &self.configs {
            let name = v.name();
            if !names.insert(name) {
                problems.push(format!("duplicate config name '{name}'"));
            }
            if v.seed.is_some() {
                problems.push(format!("config '{name}' sets seed; seeds come from base_seed"));
            }
            for cell in self.problems.iter().filter(|c| c.dimension > 0) {
                if let Err(e) = v.resolve(cell.dimension) {
                    problems.push(format!("config '{name}' at {}@D={}: {e}", cell.id, cell.dimension));
                }
            }
        }
        if !self.configs.is_empty() && !names.contains(self.reference_name()) {
            problems.push(format!("reference config '{}' not found", self.reference_name()));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }
}
