//! Novelty-search controlled particle swarm optimization.
//!
//! Leader particles claim hyperspherical regions of the search space, score
//! how novel each region is against an archive of already-searched centers
//! and against each other, and launch an inner bare-bones PSO only where the
//! region is novel enough.
//!
//! - [`bench`]: the 17-problem benchmark suite, rotation matrices and
//!   bi-objective quality metrics.
//! - [`novelty`]: distance, novelty score, categories and the archive.
//! - [`bbpso`]: the velocity-free inner optimizer.
//! - [`engine`]: the leader controller.
//! - [`harness`]: batch experiments, summary statistics and the rank-sum test.

pub mod bbpso;
pub mod bench;
pub mod engine;
mod error;
pub mod harness;
pub mod novelty;
pub mod objective;

pub use error::{Error, Result};
pub use objective::{Bounds, Objective};

use rand::SeedableRng;

/// Random source used everywhere a run needs randomness.
///
/// ChaCha8 is portable across platforms, so a seed replays bit-identically.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
