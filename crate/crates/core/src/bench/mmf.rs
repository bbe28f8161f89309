//! Bi-objective multimodal problems (MMF1, MMF7, MMF11) and set-quality metrics.

use std::f64::consts::{LN_2, PI};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectivePair {
    pub f1: f64,
    pub f2: f64,
}

impl ObjectivePair {
    pub fn new(f1: f64, f2: f64) -> Self {
        Self { f1, f2 }
    }

    pub fn distance(&self, other: &ObjectivePair) -> f64 {
        (self.f1 - other.f1).hypot(self.f2 - other.f2)
    }

    /// Weak-Pareto dominance for minimization: no worse in both, better in one.
    pub fn dominates(&self, other: &ObjectivePair) -> bool {
        self.f1 <= other.f1 && self.f2 <= other.f2 && (self.f1 < other.f1 || self.f2 < other.f2)
    }
}

/// `x2` on the MMF1 Pareto set for a given `x1`.
pub fn mmf1_pareto_x2(x1: f64) -> f64 {
    (6.0 * PI * (x1 - 2.0).abs() + PI).sin()
}

pub fn mmf1(x: [f64; 2]) -> ObjectivePair {
    let t = (x[0] - 2.0).abs();
    let dev = x[1] - mmf1_pareto_x2(x[0]);
    ObjectivePair::new(t, 1.0 - t.sqrt() + 2.0 * dev * dev)
}

/// `x2` on the MMF7 Pareto set for a given `x1`.
pub fn mmf7_pareto_x2(x1: f64) -> f64 {
    let t = (x1 - 2.0).abs();
    (0.3 * t * t * (24.0 * PI * t + 4.0 * PI).cos() + 0.6 * t) * (6.0 * PI * t + PI).sin()
}

pub fn mmf7(x: [f64; 2]) -> ObjectivePair {
    let t = (x[0] - 2.0).abs();
    let dev = x[1] - mmf7_pareto_x2(x[0]);
    ObjectivePair::new(t, 1.0 - t.sqrt() + dev * dev)
}

/// MMF11 landscape term; `np` counts global plus local Pareto sets.
pub fn mmf11_g(x: f64, np: usize) -> f64 {
    let s = (np as f64 * PI * x).sin();
    let u = (x - 0.1) / 0.8;
    2.0 - (-2.0 * LN_2 * u * u).exp() * s.powi(6)
}

pub fn mmf11(x: [f64; 2], np: usize) -> ObjectivePair {
    ObjectivePair::new(x[0], mmf11_g(x[1], np) / x[0])
}

/// `x2` of the i-th MMF11 Pareto set (i = 1 is the global one).
pub fn mmf11_pareto_x2(i: usize, np: usize) -> f64 {
    1.0 / (2.0 * np as f64) + (i as f64 - 1.0) / np as f64
}

/// Points on the MMF1/MMF7 front `f2 = 1 − √f1`, uniform in `s = √f1 ∈ [0, 1]`.
pub(crate) fn sqrt_front(count: usize) -> Vec<ObjectivePair> {
    (0..count)
        .map(|k| {
            let s = k as f64 / (count - 1) as f64;
            ObjectivePair::new(s * s, 1.0 - s)
        })
        .collect()
}

/// Points on the MMF11 global front `f2 = g(1/(2 np)) / f1`, uniform in `f1 ∈ [0.1, 1.1]`.
pub(crate) fn mmf11_front(count: usize, np: usize) -> Vec<ObjectivePair> {
    let g = mmf11_g(mmf11_pareto_x2(1, np), np);
    (0..count)
        .map(|k| {
            let f1 = 0.1 + k as f64 / (count - 1) as f64;
            ObjectivePair::new(f1, g / f1)
        })
        .collect()
}

/// Inverted generational distance: the mean, over reference points, of the
/// distance to the nearest achieved point.
pub fn igd(achieved: &[ObjectivePair], reference: &[ObjectivePair]) -> Result<f64> {
    if achieved.is_empty() || reference.is_empty() {
        return Err(Error::arg("igd needs non-empty achieved and reference sets"));
    }
    let total: f64 = reference
        .iter()
        .map(|r| achieved.iter().map(|a| a.distance(r)).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / reference.len() as f64)
}

/// The points not dominated by any other point. Exact duplicates are kept once.
pub fn nondominated(points: &[ObjectivePair]) -> Vec<ObjectivePair> {
    let mut sorted: Vec<ObjectivePair> = points.iter().copied().filter(|p| !p.f1.is_nan() && !p.f2.is_nan()).collect();
    sorted.sort_by(|a, b| a.f1.total_cmp(&b.f1).then(a.f2.total_cmp(&b.f2)));
    let mut front: Vec<ObjectivePair> = Vec::new();
    let mut best_f2 = f64::INFINITY;
    for p in sorted {
        if p.f2 < best_f2 {
            front.push(p);
            best_f2 = p.f2;
        }
    }
    front
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mmf1_known_points() {
        let p = mmf1([2.0, 0.0]);
        assert_eq!(p.f1, 0.0);
        assert!((p.f2 - 1.0).abs() < 1e-12);
        let q = mmf1([3.0, 0.0]);
        assert_eq!(q.f1, 1.0);
        assert!(q.f2.abs() < 1e-12);
    }

    #[test]
    fn mmf11_g_at_quarter() {
        // 2 - exp(-2 ln2 (0.15/0.8)^2) * sin^6(pi/2)
        let expected = 2.0 - (-2.0 * LN_2 * (0.15f64 / 0.8).powi(2)).exp();
        assert!((mmf11_g(0.25, 2) - expected).abs() < 1e-15);
        assert!((mmf11_g(0.25, 2) - 1.04757).abs() < 1e-5);
    }

    #[test]
    fn igd_hand_cases() {
        let a = [ObjectivePair::new(0.0, 0.0)];
        let r = [ObjectivePair::new(3.0, 4.0)];
        assert_eq!(igd(&a, &r).unwrap(), 5.0);
        let a = [ObjectivePair::new(0.0, 0.0), ObjectivePair::new(1.0, 1.0)];
        let r = [ObjectivePair::new(0.0, 1.0), ObjectivePair::new(1.0, 0.0)];
        assert_eq!(igd(&a, &r).unwrap(), 1.0);
        assert_eq!(igd(&r, &r).unwrap(), 0.0);
        assert!(igd(&[], &r).is_err());
        assert!(igd(&r, &[]).is_err());
    }

    #[test]
    fn nondominated_filters() {
        let pts = [
            ObjectivePair::new(0.0, 1.0),
            ObjectivePair::new(0.5, 0.5),
            ObjectivePair::new(0.6, 0.6),
            ObjectivePair::new(1.0, 0.0),
            ObjectivePair::new(0.5, 0.5),
        ];
        let front = nondominated(&pts);
        assert_eq!(
            front,
            vec![ObjectivePair::new(0.0, 1.0), ObjectivePair::new(0.5, 0.5), ObjectivePair::new(1.0, 0.0)]
        );
        for p in &front {
            assert!(!pts.iter().any(|q| q.dominates(p)));
        }
    }
}
