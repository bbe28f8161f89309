//! The minimization interface the optimizers run against.

use rand::Rng;

use crate::{Error, Result};

/// Axis-aligned box, one closed interval per dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::arg(format!(
                "bounds need matching non-empty lower/upper vectors (got {} and {})",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::arg(format!("bad interval [{lo}, {hi}] in dimension {i}")));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval repeated `dim` times.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// True if every interval of `self` lies inside the matching interval of `other`.
    pub fn is_subset_of(&self, other: &Bounds) -> bool {
        self.dimension() == other.dimension()
            && (0..self.dimension())
                .all(|i| other.lower[i] <= self.lower[i] && self.upper[i] <= other.upper[i])
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }

    /// Uniform draw from the box. Degenerate intervals return their endpoint.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| if lo == hi { lo } else { rng.random_range(lo..=hi) })
            .collect()
    }
}

/// A scalar function to minimize over a box.
///
/// `evaluate` takes `&mut self` so wrappers can count or record calls.
pub trait Objective {
    fn dimension(&self) -> usize;
    fn search_bounds(&self) -> &Bounds;
    fn init_bounds(&self) -> &Bounds;
    fn evaluate(&mut self, x: &[f64]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &mut T {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn search_bounds(&self) -> &Bounds {
        (**self).search_bounds()
    }
    fn init_bounds(&self) -> &Bounds {
        (**self).init_bounds()
    }
    fn evaluate(&mut self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}
