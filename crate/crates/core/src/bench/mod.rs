//! The 17-problem benchmark suite.
//!
//! f1–f2 are unimodal/simple, f3–f8 unrotated multimodal, f9–f14 the rotated
//! versions of f3–f8, and f15–f17 the bi-objective MMF1, MMF7 and MMF11.

mod functions;
mod mmf;
mod rotation;

use std::fmt;
use std::str::FromStr;

pub use functions::{
    noncontinuous_step, ROTATED_SCHWEFEL_SHIFT, SCHWEFEL_CONSTANT, SCHWEFEL_OPTIMUM,
};
pub use mmf::{
    igd, mmf11_g, mmf11_pareto_x2, mmf1_pareto_x2, mmf7_pareto_x2, nondominated, ObjectivePair,
};
pub use rotation::OrthogonalMatrix;

use crate::objective::{Bounds, Objective};
use crate::{rng_from_seed, Error, Result};

/// Default MMF11 count of global plus local Pareto sets.
pub const DEFAULT_MMF11_NP: usize = 2;

/// Seed used for rotation matrices when none is given.
pub const DEFAULT_ROTATION_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    F15,
    F16,
    F17,
}

impl ProblemId {
    pub const ALL: [ProblemId; 17] = [
        Self::F1,
        Self::F2,
        Self::F3,
        Self::F4,
        Self::F5,
        Self::F6,
        Self::F7,
        Self::F8,
        Self::F9,
        Self::F10,
        Self::F11,
        Self::F12,
        Self::F13,
        Self::F14,
        Self::F15,
        Self::F16,
        Self::F17,
    ];

    /// 1-based function number.
    pub fn number(self) -> u32 {
        self as u32 + 1
    }

    pub fn from_number(n: u32) -> Option<Self> {
        Self::ALL.get(n.checked_sub(1)? as usize).copied()
    }

    pub fn name(self) -> &'static str {
        use ProblemId::*;
        match self {
            F1 => "Sphere",
            F2 => "Rosenbrock",
            F3 => "Ackley",
            F4 => "Griewank",
            F5 => "Weierstrass",
            F6 => "Rastrigin",
            F7 => "Noncontinuous Rastrigin",
            F8 => "Schwefel",
            F9 => "Rotated Ackley",
            F10 => "Rotated Griewank",
            F11 => "Rotated Weierstrass",
            F12 => "Rotated Rastrigin",
            F13 => "Rotated Noncontinuous Rastrigin",
            F14 => "Rotated Schwefel",
            F15 => "MMF1",
            F16 => "MMF7",
            F17 => "MMF11",
        }
    }

    pub fn is_rotated(self) -> bool {
        (9..=14).contains(&self.number())
    }

    pub fn is_multi_objective(self) -> bool {
        self.number() >= 15
    }

    /// The unrotated counterpart of a rotated problem.
    pub fn unrotated(self) -> Option<Self> {
        self.is_rotated().then(|| Self::from_number(self.number() - 6)).flatten()
    }

    /// (search, initialization) interval for one coordinate.
    fn ranges(self, coord: usize) -> ((f64, f64), (f64, f64)) {
        use ProblemId::*;
        match self {
            F1 => ((-100.0, 100.0), (-100.0, 50.0)),
            F2 => ((-2.048, 2.048), (-2.048, 2.048)),
            F3 | F9 => ((-32.768, 32.768), (-32.768, 16.0)),
            F4 | F10 => ((-600.0, 600.0), (-600.0, 200.0)),
            F5 | F11 => ((-0.5, 0.5), (-0.5, 0.2)),
            F6 | F7 | F12 | F13 => ((-5.12, 5.12), (-5.12, 2.0)),
            F8 | F14 => ((-500.0, 500.0), (-500.0, 500.0)),
            F15 | F16 => {
                let r = if coord == 0 { (1.0, 3.0) } else { (-1.0, 1.0) };
                (r, r)
            }
            F17 => ((0.1, 1.1), (0.1, 1.1)),
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.number())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['f', 'F']);
        digits
            .parse::<u32>()
            .ok()
            .and_then(Self::from_number)
            .ok_or_else(|| Error::arg(format!("unknown problem '{s}' (expected f1..f17)")))
    }
}

impl serde::Serialize for ProblemId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ProblemId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Known optimum of a problem.
#[derive(Clone, Debug, PartialEq)]
pub enum Optimum {
    Point { location: Vec<f64>, value: f64 },
    /// Bi-objective problems have a Pareto set rather than a point.
    ParetoSet { ideal: ObjectivePair },
}

#[derive(Clone, Debug)]
pub struct Problem {
    id: ProblemId,
    dim: usize,
    search: Bounds,
    init: Bounds,
    rotation: Option<OrthogonalMatrix>,
    np: usize,
    weierstrass_offset: f64,
}

impl Problem {
    /// Builds a problem; rotated problems draw their matrix from
    /// [`DEFAULT_ROTATION_SEED`].
    pub fn new(id: ProblemId, dim: usize) -> Result<Self> {
        Self::with_rotation_seed(id, dim, DEFAULT_ROTATION_SEED)
    }

    pub fn with_rotation_seed(id: ProblemId, dim: usize, seed: u64) -> Result<Self> {
        let rotation = if id.is_rotated() {
            Some(OrthogonalMatrix::random(dim, &mut rng_from_seed(seed))?)
        } else {
            None
        };
        Self::build(id, dim, rotation, DEFAULT_MMF11_NP)
    }

    /// A rotated problem (f9–f14) using the given matrix.
    pub fn with_rotation(id: ProblemId, rotation: OrthogonalMatrix) -> Result<Self> {
        if !id.is_rotated() {
            return Err(Error::arg(format!("{id} is not a rotated problem")));
        }
        let dim = rotation.dim();
        Self::build(id, dim, Some(rotation), DEFAULT_MMF11_NP)
    }

    /// MMF11 with an explicit number of Pareto sets.
    pub fn mmf11(np: usize) -> Result<Self> {
        if np == 0 {
            return Err(Error::arg("MMF11 needs np >= 1"));
        }
        Self::build(ProblemId::F17, 2, None, np)
    }

    fn build(id: ProblemId, dim: usize, rotation: Option<OrthogonalMatrix>, np: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("dimension must be at least 1"));
        }
        if id.is_multi_objective() && dim != 2 {
            return Err(Error::arg(format!("{id} is defined for dimension 2 only, got {dim}")));
        }
        let (search, init): (Vec<_>, Vec<_>) = (0..dim).map(|c| id.ranges(c)).unzip();
        let (slo, shi) = search.into_iter().unzip();
        let (ilo, ihi) = init.into_iter().unzip();
        let weierstrass_offset = match id {
            ProblemId::F5 | ProblemId::F11 => functions::weierstrass_offset(dim),
            _ => 0.0,
        };
        Ok(Self {
            id,
            dim,
            search: Bounds::new(slo, shi)?,
            init: Bounds::new(ilo, ihi)?,
            rotation,
            np,
            weierstrass_offset,
        })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn search_bounds(&self) -> &Bounds {
        &self.search
    }

    pub fn init_bounds(&self) -> &Bounds {
        &self.init
    }

    pub fn rotation(&self) -> Option<&OrthogonalMatrix> {
        self.rotation.as_ref()
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn optimum(&self) -> Optimum {
        use ProblemId::*;
        let d = self.dim;
        match self.id {
            F2 => Optimum::Point { location: vec![1.0; d], value: 0.0 },
            F8 => Optimum::Point { location: vec![SCHWEFEL_OPTIMUM; d], value: 0.0 },
            F14 => {
                // Preimage of y = SCHWEFEL_OPTIMUM under y = M (x - s) + s.
                let m = self.rotation.as_ref().expect("rotated problem has a matrix");
                let delta = vec![SCHWEFEL_OPTIMUM - ROTATED_SCHWEFEL_SHIFT; d];
                let location = m
                    .apply_transpose(&delta)
                    .into_iter()
                    .map(|v| v + ROTATED_SCHWEFEL_SHIFT)
                    .collect();
                Optimum::Point { location, value: 0.0 }
            }
            F15 | F16 => Optimum::ParetoSet { ideal: ObjectivePair::new(0.0, 0.0) },
            F17 => Optimum::ParetoSet { ideal: ObjectivePair::new(0.0, 1.0) },
            _ => Optimum::Point { location: vec![0.0; d], value: 0.0 },
        }
    }

    /// Scalar fitness for f1–f14.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if self.id.is_multi_objective() {
            return Err(Error::WrongArity {
                problem: self.id.to_string(),
                actual: "bi-objective",
                hint: "evaluate_mmf",
            });
        }
        self.check_len(x)?;
        Ok(self.evaluate_scalar(x))
    }

    /// Both objectives for f15–f17.
    pub fn evaluate_mmf(&self, x: &[f64]) -> Result<ObjectivePair> {
        if !self.id.is_multi_objective() {
            return Err(Error::WrongArity {
                problem: self.id.to_string(),
                actual: "single-objective",
                hint: "evaluate",
            });
        }
        self.check_len(x)?;
        if !self.search.contains(x) {
            return Err(Error::Domain {
                problem: self.id.to_string(),
                detail: format!("{x:?} is outside {:?}..{:?}", self.search.lower(), self.search.upper()),
            });
        }
        Ok(self.evaluate_pair([x[0], x[1]]))
    }

    /// `count` points sampled uniformly along the analytical global front.
    pub fn pareto_front_samples(&self, count: usize) -> Result<Vec<ObjectivePair>> {
        if count < 2 {
            return Err(Error::arg("need at least 2 front samples"));
        }
        match self.id {
            ProblemId::F15 | ProblemId::F16 => Ok(mmf::sqrt_front(count)),
            ProblemId::F17 => Ok(mmf::mmf11_front(count, self.np)),
            other => Err(Error::arg(format!("{other} has no Pareto front"))),
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::arg(format!(
                "{} expects a {}-dimensional point, got {}",
                self.id,
                self.dim,
                x.len()
            )));
        }
        Ok(())
    }

    fn evaluate_pair(&self, x: [f64; 2]) -> ObjectivePair {
        match self.id {
            ProblemId::F15 => mmf::mmf1(x),
            ProblemId::F16 => mmf::mmf7(x),
            ProblemId::F17 => mmf::mmf11(x, self.np),
            _ => unreachable!("scalar problem"),
        }
    }

    /// Scalar evaluation without argument checks; `x.len()` must equal the dimension.
    fn evaluate_scalar(&self, x: &[f64]) -> f64 {
        use ProblemId::*;
        match self.id {
            F1 => functions::sphere(x),
            F2 => functions::rosenbrock(x),
            F3 => functions::ackley(x),
            F4 => functions::griewank(x),
            F5 => functions::weierstrass(x, self.weierstrass_offset),
            F6 => functions::rastrigin(x),
            F7 => functions::noncontinuous_rastrigin(x),
            F8 => functions::schwefel(x),
            F9 | F10 | F11 | F12 | F13 | F14 => self.evaluate_rotated(x),
            F15 | F16 | F17 => unreachable!("bi-objective problem"),
        }
    }

    fn evaluate_rotated(&self, x: &[f64]) -> f64 {
        use ProblemId::*;
        let m = self.rotation.as_ref().expect("rotated problem has a matrix");
        let mut y = vec![0.0; self.dim];
        if self.id == F14 {
            let shifted: Vec<f64> = x.iter().map(|v| v - ROTATED_SCHWEFEL_SHIFT).collect();
            m.apply_into(&shifted, &mut y);
            y.iter_mut().for_each(|v| *v += ROTATED_SCHWEFEL_SHIFT);
            return functions::bounded_schwefel(&y);
        }
        m.apply_into(x, &mut y);
        match self.id {
            F9 => functions::ackley(&y),
            F10 => functions::griewank(&y),
            F11 => functions::weierstrass(&y, self.weierstrass_offset),
            F12 => functions::rastrigin(&y),
            F13 => functions::noncontinuous_rastrigin(&y),
            _ => unreachable!(),
        }
    }
}

/// A single-objective problem viewed as an [`Objective`].
#[derive(Clone, Copy, Debug)]
pub struct ScalarObjective<'a> {
    problem: &'a Problem,
}

impl<'a> ScalarObjective<'a> {
    pub fn new(problem: &'a Problem) -> Result<Self> {
        if problem.id().is_multi_objective() {
            return Err(Error::WrongArity {
                problem: problem.id().to_string(),
                actual: "bi-objective",
                hint: "MmfObjective",
            });
        }
        Ok(Self { problem })
    }

    pub fn problem(&self) -> &'a Problem {
        self.problem
    }
}

impl Objective for ScalarObjective<'_> {
    fn dimension(&self) -> usize {
        self.problem.dim
    }
    fn search_bounds(&self) -> &Bounds {
        &self.problem.search
    }
    fn init_bounds(&self) -> &Bounds {
        &self.problem.init
    }
    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.problem.evaluate_scalar(x)
    }
}

/// How a bi-objective value is reduced to the scalar the optimizer minimizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalarization {
    FirstObjective,
    /// `w · f1 + (1 − w) · f2`
    WeightedSum(f64),
}

impl Scalarization {
    pub fn apply(self, p: ObjectivePair) -> f64 {
        match self {
            Scalarization::FirstObjective => p.f1,
            Scalarization::WeightedSum(w) => w * p.f1 + (1.0 - w) * p.f2,
        }
    }
}

/// A bi-objective problem scalarized for the optimizer. Every evaluated
/// objective pair is kept so the nondominated set can be scored afterwards.
#[derive(Debug)]
pub struct MmfObjective<'a> {
    problem: &'a Problem,
    scalarization: Scalarization,
    evaluated: Vec<ObjectivePair>,
}

impl<'a> MmfObjective<'a> {
    pub fn new(problem: &'a Problem, scalarization: Scalarization) -> Result<Self> {
        if !problem.id().is_multi_objective() {
            return Err(Error::WrongArity {
                problem: problem.id().to_string(),
                actual: "single-objective",
                hint: "ScalarObjective",
            });
        }
        Ok(Self {
            problem,
            scalarization,
            evaluated: Vec::new(),
        })
    }

    pub fn evaluated(&self) -> &[ObjectivePair] {
        &self.evaluated
    }

    pub fn nondominated(&self) -> Vec<ObjectivePair> {
        nondominated(&self.evaluated)
    }

    /// IGD of the nondominated evaluated points against `reference_count`
    /// samples of the analytical front.
    pub fn igd(&self, reference_count: usize) -> Result<f64> {
        let reference = self.problem.pareto_front_samples(reference_count)?;
        igd(&self.nondominated(), &reference)
    }
}

impl Objective for MmfObjective<'_> {
    fn dimension(&self) -> usize {
        2
    }
    fn search_bounds(&self) -> &Bounds {
        &self.problem.search
    }
    fn init_bounds(&self) -> &Bounds {
        &self.problem.init
    }
    fn evaluate(&mut self, x: &[f64]) -> f64 {
        let pair = self.problem.evaluate_pair([x[0], x[1]]);
        self.evaluated.push(pair);
        self.scalarization.apply(pair)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(n: u32, dim: usize) -> Problem {
        Problem::new(ProblemId::from_number(n).unwrap(), dim).unwrap()
    }

    #[test]
    fn ids_parse_and_print() {
        for id in ProblemId::ALL {
            assert_eq!(id.to_string().parse::<ProblemId>().unwrap(), id);
        }
        assert_eq!("F12".parse::<ProblemId>().unwrap(), ProblemId::F12);
        assert!("f0".parse::<ProblemId>().is_err());
        assert!("f18".parse::<ProblemId>().is_err());
        assert!("sphere".parse::<ProblemId>().is_err());
    }

    #[test]
    fn spot_values() {
        assert_eq!(problem(1, 10).evaluate(&[0.0; 10]).unwrap(), 0.0);
        assert_eq!(problem(2, 2).evaluate(&[0.0, 0.0]).unwrap(), 1.0);
        assert!(problem(3, 10).evaluate(&[0.0; 10]).unwrap().abs() < 1e-12);
        assert!((problem(6, 2).evaluate(&[0.5, 0.5]).unwrap() - 40.5).abs() < 1e-12);
        let f8 = problem(8, 10).evaluate(&[SCHWEFEL_OPTIMUM; 10]).unwrap();
        assert!(f8.abs() <= 1e-3 * 10.0);
    }

    #[test]
    fn init_range_inside_search_range() {
        for id in ProblemId::ALL {
            let dim = if id.is_multi_objective() { 2 } else { 10 };
            let p = Problem::new(id, dim).unwrap();
            assert!(p.init_bounds().is_subset_of(p.search_bounds()), "{id}");
            assert_eq!(p.rotation().is_some(), id.is_rotated(), "{id}");
        }
    }

    #[test]
    fn argument_errors() {
        let p = problem(1, 3);
        assert!(matches!(p.evaluate(&[0.0; 2]), Err(Error::Argument(_))));
        let mmf = problem(15, 2);
        assert!(matches!(mmf.evaluate(&[2.0, 0.0]), Err(Error::WrongArity { .. })));
        assert!(matches!(p.evaluate_mmf(&[0.0; 3]), Err(Error::WrongArity { .. })));
        assert!(matches!(mmf.evaluate_mmf(&[0.0, 0.0]), Err(Error::Domain { .. })));
        assert!(matches!(mmf.evaluate_mmf(&[2.0]), Err(Error::Argument(_))));
        assert!(Problem::new(ProblemId::F15, 3).is_err());
        assert!(Problem::new(ProblemId::F1, 0).is_err());
        assert!(p.pareto_front_samples(5).is_err());
        assert!(mmf.pareto_front_samples(1).is_err());
        assert!(Problem::mmf11(0).is_err());
        assert!(Problem::with_rotation(ProblemId::F3, OrthogonalMatrix::identity(2).unwrap()).is_err());
    }

    #[test]
    fn mmf_examples() {
        let mmf1 = problem(15, 2);
        let p = mmf1.evaluate_mmf(&[2.0, 0.0]).unwrap();
        assert_eq!(p.f1, 0.0);
        assert!((p.f2 - 1.0).abs() < 1e-12);

        let mmf11 = Problem::mmf11(2).unwrap();
        let q = mmf11.evaluate_mmf(&[1.0, 0.25]).unwrap();
        assert_eq!(q.f1, 1.0);
        assert!((q.f2 - 1.04757).abs() < 1e-5);
    }

    #[test]
    fn front_samples() {
        let ends = problem(15, 2).pareto_front_samples(2).unwrap();
        assert_eq!(ends, vec![ObjectivePair::new(0.0, 1.0), ObjectivePair::new(1.0, 0.0)]);
        let three = problem(16, 2).pareto_front_samples(3).unwrap();
        assert_eq!(three[1], ObjectivePair::new(0.25, 0.5));
        let g = mmf11_g(0.25, 2);
        let e = Problem::mmf11(2).unwrap().pareto_front_samples(2).unwrap();
        assert!((e[0].f1 - 0.1).abs() < 1e-15 && (e[0].f2 - g / 0.1).abs() < 1e-12);
        assert!((e[1].f1 - 1.1).abs() < 1e-15 && (e[1].f2 - g / 1.1).abs() < 1e-12);
    }

    #[test]
    fn scalar_objective_rejects_mmf() {
        assert!(ScalarObjective::new(&problem(16, 2)).is_err());
        assert!(MmfObjective::new(&problem(1, 2), Scalarization::FirstObjective).is_err());
    }

    #[test]
    fn mmf_objective_records_pairs() {
        let p = problem(15, 2);
        let mut obj = MmfObjective::new(&p, Scalarization::WeightedSum(0.5)).unwrap();
        let v = obj.evaluate(&[3.0, 0.0]);
        assert!((v - 0.5).abs() < 1e-12);
        assert_eq!(obj.evaluated().len(), 1);
        assert!(obj.igd(10).unwrap() >= 0.0);
    }
}
