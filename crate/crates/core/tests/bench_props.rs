use approx::assert_relative_eq;
use nspso::bench::{igd, ObjectivePair, OrthogonalMatrix, Problem, ProblemId};
use nspso::rng_from_seed;
use proptest::prelude::*;
use rand::Rng;

fn scalar_ids() -> impl Iterator<Item = ProblemId> {
    ProblemId::ALL.into_iter().filter(|id| !id.is_multi_objective())
}

#[test]
fn scalar_benchmarks_are_nonnegative_on_their_domain() {
    let mut rng = rng_from_seed(21);
    for id in scalar_ids() {
        let p = Problem::new(id, 10).unwrap();
        let b = p.search_bounds();
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..10).map(|j| rng.random_range(b.lower()[j]..=b.upper()[j])).collect();
            let f = p.evaluate(&x).unwrap();
            assert!(f >= -1e-12 && f.is_finite(), "{id}: f = {f} at {x:?}");
        }
    }
}

#[test]
fn identity_rotation_reduces_to_the_plain_function() {
    let mut rng = rng_from_seed(22);
    for rotated in scalar_ids().filter(|id| id.is_rotated()) {
        let plain = Problem::new(rotated.unrotated().unwrap(), 6).unwrap();
        let with_identity = Problem::with_rotation(rotated, OrthogonalMatrix::identity(6).unwrap()).unwrap();
        let b = plain.search_bounds();
        for _ in 0..500 {
            let x: Vec<f64> = (0..6).map(|j| rng.random_range(b.lower()[j]..=b.upper()[j])).collect();
            let (a, r) = (plain.evaluate(&x).unwrap(), with_identity.evaluate(&x).unwrap());
            if rotated == ProblemId::F14 {
                // (x - c) + c is not exact in floating point.
                assert_relative_eq!(a, r, epsilon = 1e-9, max_relative = 1e-12);
            } else {
                assert_eq!(a, r, "{rotated}");
            }
        }
    }
}

#[test]
fn noncontinuous_rastrigin_matches_rastrigin_near_the_origin() {
    let mut rng = rng_from_seed(23);
    let f6 = Problem::new(ProblemId::F6, 8).unwrap();
    let f7 = Problem::new(ProblemId::F7, 8).unwrap();
    for _ in 0..1000 {
        let x: Vec<f64> = (0..8).map(|_| rng.random_range(-0.4999..0.4999)).collect();
        assert_eq!(f6.evaluate(&x).unwrap(), f7.evaluate(&x).unwrap());
    }
}

#[test]
fn rotation_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = OrthogonalMatrix::random(7, &mut rng_from_seed(5)).unwrap();
    let path = dir.path().join("m.rot");
    m.save(&path).unwrap();
    let back = OrthogonalMatrix::load(&path).unwrap();
    assert_eq!(back, m);
    std::fs::write(&path, "2\n1 0\n1 0\n").unwrap();
    assert!(OrthogonalMatrix::load(&path).is_err());
}

#[test]
fn rotated_problems_depend_only_on_their_seed() {
    let a = Problem::with_rotation_seed(ProblemId::F10, 5, 9).unwrap();
    let b = Problem::with_rotation_seed(ProblemId::F10, 5, 9).unwrap();
    let c = Problem::with_rotation_seed(ProblemId::F10, 5, 10).unwrap();
    assert_eq!(a.rotation(), b.rotation());
    assert_ne!(a.rotation(), c.rotation());
}

fn pair() -> impl Strategy<Value = ObjectivePair> {
    (0.0..2.0f64, 0.0..2.0f64).prop_map(|(a, b)| ObjectivePair::new(a, b))
}

proptest! {
    #[test]
    fn sphere_is_rotation_invariant(seed in any::<u64>(), x in prop::collection::vec(-100.0..100.0f64, 2..20)) {
        let m = OrthogonalMatrix::random(x.len(), &mut rng_from_seed(seed)).unwrap();
        let plain: f64 = x.iter().map(|v| v * v).sum();
        let rotated: f64 = m.apply(&x).iter().map(|v| v * v).sum();
        prop_assert!((plain - rotated).abs() <= 1e-9 * plain.max(1.0));
    }

    #[test]
    fn igd_never_grows_when_points_are_added(
        base in prop::collection::vec(pair(), 1..20),
        extra in prop::collection::vec(pair(), 1..20),
        reference in prop::collection::vec(pair(), 1..30),
    ) {
        let before = igd(&base, &reference).unwrap();
        let mut more = base.clone();
        more.extend(extra);
        prop_assert!(igd(&more, &reference).unwrap() <= before);
        prop_assert!(before >= 0.0);
    }

    #[test]
    fn igd_is_zero_on_the_reference_itself(reference in prop::collection::vec(pair(), 1..30)) {
        prop_assert_eq!(igd(&reference, &reference).unwrap(), 0.0);
    }
}
