//! Region novelty: how much of a leader's hypersphere is not already covered
//! by previously searched regions or by the other leaders.

use std::fmt;

use crate::{Error, Result};

pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::arg(format!(
            "distance between points of different lengths ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Pairwise novelty percentage of two regions of radius `r` whose centers are
/// `d` apart: `100 · d / (2r)`, capped at 100 once the spheres stop overlapping.
pub fn novelty_score(d: f64, r: f64) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::arg(format!("distance must be non-negative, got {d}")));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::arg(format!("radius must be positive, got {r}")));
    }
    if d >= 2.0 * r {
        Ok(100.0)
    } else {
        Ok((d / (2.0 * r)) * 100.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoveltyCategory {
    /// 100%: the regions do not overlap.
    HighlyNovel,
    /// Strictly between 50% and 100%.
    ModeratelyNovel,
    /// Exactly 50%: centers one radius apart.
    TypicallyNovel,
    /// Strictly between 0% and 50%.
    LowNovel,
    /// 0%: same center.
    NotNovel,
}

impl NoveltyCategory {
    /// Low and not-novel regions are not worth a search.
    pub fn is_low(self) -> bool {
        matches!(self, NoveltyCategory::LowNovel | NoveltyCategory::NotNovel)
    }
}

impl fmt::Display for NoveltyCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NoveltyCategory::HighlyNovel => "highly novel",
            NoveltyCategory::ModeratelyNovel => "moderately novel",
            NoveltyCategory::TypicallyNovel => "typically novel",
            NoveltyCategory::LowNovel => "low novel",
            NoveltyCategory::NotNovel => "not novel",
        };
        f.write_str(s)
    }
}

pub fn classify(ns: f64) -> Result<NoveltyCategory> {
    if !(0.0..=100.0).contains(&ns) {
        return Err(Error::arg(format!("novelty score {ns} outside [0, 100]")));
    }
    Ok(if ns == 100.0 {
        NoveltyCategory::HighlyNovel
    } else if ns > 50.0 {
        NoveltyCategory::ModeratelyNovel
    } else if ns == 50.0 {
        NoveltyCategory::TypicallyNovel
    } else if ns > 0.0 {
        NoveltyCategory::LowNovel
    } else {
        NoveltyCategory::NotNovel
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeaderParticle {
    pub index: usize,
    pub position: Vec<f64>,
    pub radius: f64,
    /// Mean pairwise novelty against the other leaders, in [0, 100].
    pub novelty: f64,
    /// Set when this leader has been told to abandon its region.
    pub recompute: bool,
}

impl LeaderParticle {
    pub fn new(index: usize, position: Vec<f64>, radius: f64) -> Self {
        Self {
            index,
            position,
            radius,
            novelty: 100.0,
            recompute: false,
        }
    }
}

/// Centers of the regions that have already been searched, in append order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NoveltyArchive {
    entries: Vec<Vec<f64>>,
}

impl NoveltyArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, center: Vec<f64>) {
        self.entries.push(center);
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoveltyVerdict {
    pub novelty: f64,
    pub recompute: bool,
}

/// Novelty of `leader` against the archive, then against its peers.
///
/// Any archived center scoring below `threshold` ends the computation with
/// novelty 0 and a recompute request. Otherwise each peer scoring below
/// `threshold` gets its `recompute` flag set, and the result is the mean of
/// the peer scores (100 when there are no peers).
pub fn compute_novelty<'a, I>(
    leader: &LeaderParticle,
    peers: I,
    archive: &NoveltyArchive,
    threshold: f64,
) -> Result<NoveltyVerdict>
where
    I: IntoIterator<Item = &'a mut LeaderParticle>,
{
    if !(threshold > 0.0 && threshold <= 100.0) {
        return Err(Error::arg(format!("novelty threshold {threshold} outside (0, 100]")));
    }
    let r = leader.radius;
    for center in archive.entries() {
        if novelty_score(distance(&leader.position, center)?, r)? < threshold {
            return Ok(NoveltyVerdict {
                novelty: 0.0,
                recompute: true,
            });
        }
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for peer in peers {
        let ns = novelty_score(distance(&leader.position, &peer.position)?, r)?;
        if ns < threshold {
            peer.recompute = true;
        }
        sum += ns;
        count += 1;
    }
    let novelty = if count == 0 { 100.0 } else { sum / count as f64 };
    Ok(NoveltyVerdict {
        novelty,
        recompute: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(distance(&[1.5; 7], &[1.5; 7]).unwrap(), 0.0);
        assert!((distance(&[1.0; 10], &[0.0; 10]).unwrap() - 3.16227766).abs() < 1e-8);
        assert!(distance(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn score_examples() {
        let r = 1.7;
        assert_eq!(novelty_score(2.0 * r, r).unwrap(), 100.0);
        assert_eq!(novelty_score(r, r).unwrap(), 50.0);
        assert_eq!(novelty_score(0.0, r).unwrap(), 0.0);
        assert_eq!(novelty_score(3.0 * r, r).unwrap(), 100.0);
        assert!(novelty_score(-1.0, r).is_err());
        assert!(novelty_score(1.0, 0.0).is_err());
        assert!(novelty_score(1.0, -2.0).is_err());
        assert!(novelty_score(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn classify_examples() {
        use NoveltyCategory::*;
        assert_eq!(classify(100.0).unwrap(), HighlyNovel);
        assert_eq!(classify(75.0).unwrap(), ModeratelyNovel);
        assert_eq!(classify(50.0).unwrap(), TypicallyNovel);
        assert_eq!(classify(25.0).unwrap(), LowNovel);
        assert_eq!(classify(0.0).unwrap(), NotNovel);
        assert!(classify(-0.1).is_err());
        assert!(classify(100.1).is_err());
        assert!(classify(f64::NAN).is_err());
    }

    fn leader(index: usize, position: Vec<f64>, r: f64) -> LeaderParticle {
        LeaderParticle::new(index, position, r)
    }

    #[test]
    fn archived_position_forces_recompute() {
        let me = leader(0, vec![1.0, 2.0], 1.0);
        let mut archive = NoveltyArchive::new();
        archive.push(vec![50.0, 50.0]);
        archive.push(vec![1.0, 2.0]);
        let mut peers = vec![leader(1, vec![1.0, 2.1], 1.0)];
        let v = compute_novelty(&me, &mut peers, &archive, 50.0).unwrap();
        assert_eq!(v, NoveltyVerdict { novelty: 0.0, recompute: true });
        // Peer phase never ran.
        assert!(!peers[0].recompute);
    }

    #[test]
    fn isolated_leader_is_fully_novel() {
        let me = leader(0, vec![0.0, 0.0], 1.0);
        let mut peers: Vec<_> = [(2.0, 0.0), (0.0, 2.0), (-5.0, 0.0), (3.0, 3.0)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| leader(i + 1, vec![x, y], 1.0))
            .collect();
        let v = compute_novelty(&me, &mut peers, &NoveltyArchive::new(), 50.0).unwrap();
        assert_eq!(v, NoveltyVerdict { novelty: 100.0, recompute: false });
        assert!(peers.iter().all(|p| !p.recompute));
    }

    #[test]
    fn mean_of_peer_scores() {
        let me = leader(0, vec![0.0], 1.0);
        let mut peers = vec![leader(1, vec![2.0], 1.0), leader(2, vec![-1.0], 1.0)];
        let v = compute_novelty(&me, &mut peers, &NoveltyArchive::new(), 40.0).unwrap();
        assert_eq!(v, NoveltyVerdict { novelty: 75.0, recompute: false });
        assert!(peers.iter().all(|p| !p.recompute));
    }

    #[test]
    fn close_peer_is_flagged() {
        let me = leader(0, vec![0.0], 1.0);
        let mut peers = vec![leader(1, vec![2.0], 1.0), leader(2, vec![0.5], 1.0)];
        let v = compute_novelty(&me, &mut peers, &NoveltyArchive::new(), 50.0).unwrap();
        assert_eq!(v.novelty, 62.5);
        assert!(!v.recompute);
        assert!(!peers[0].recompute);
        assert!(peers[1].recompute);
    }

    #[test]
    fn score_equal_to_threshold_is_novel() {
        let me = leader(0, vec![0.0], 1.0);
        let mut archive = NoveltyArchive::new();
        archive.push(vec![1.0]);
        let mut peers = vec![leader(1, vec![-1.0], 1.0)];
        let v = compute_novelty(&me, &mut peers, &archive, 50.0).unwrap();
        assert_eq!(v, NoveltyVerdict { novelty: 50.0, recompute: false });
        assert!(!peers[0].recompute);
    }

    #[test]
    fn lone_leader_with_empty_archive() {
        let me = leader(0, vec![3.0; 4], 1.0);
        let v = compute_novelty(&me, std::iter::empty(), &NoveltyArchive::new(), 50.0).unwrap();
        assert_eq!(v, NoveltyVerdict { novelty: 100.0, recompute: false });
    }

    #[test]
    fn bad_inputs() {
        let me = leader(0, vec![0.0, 0.0], 1.0);
        let mut peers = vec![leader(1, vec![0.0], 1.0)];
        assert!(compute_novelty(&me, &mut peers, &NoveltyArchive::new(), 50.0).is_err());
        assert!(compute_novelty(&me, std::iter::empty(), &NoveltyArchive::new(), 0.0).is_err());
        assert!(compute_novelty(&me, std::iter::empty(), &NoveltyArchive::new(), 100.5).is_err());
    }

    proptest! {
        #[test]
        fn score_is_scale_invariant(d in 0.0f64..1e3, r in 1e-3f64..1e3, c in 1e-3f64..1e3) {
            let a = novelty_score(d, r).unwrap();
            let b = novelty_score(d * c, r * c).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }

        #[test]
        fn score_is_monotone_and_bounded(d1 in 0.0f64..10.0, d2 in 0.0f64..10.0, r in 0.01f64..5.0) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let a = novelty_score(lo, r).unwrap();
            let b = novelty_score(hi, r).unwrap();
            prop_assert!(a <= b);
            prop_assert!((0.0..=100.0).contains(&a) && (0.0..=100.0).contains(&b));
        }

        #[test]
        fn archive_outcome_ignores_order(
            entries in prop::collection::vec(prop::collection::vec(-3.0f64..3.0, 2), 0..8),
            th in 1.0f64..100.0,
        ) {
            let me = leader(0, vec![0.0, 0.0], 1.0);
            let expected = entries
                .iter()
                .map(|e| novelty_score(distance(&me.position, e).unwrap(), 1.0).unwrap())
                .any(|s| s < th);
            let forward: NoveltyArchive = NoveltyArchive { entries: entries.clone() };
            let mut rev = entries.clone();
            rev.reverse();
            let backward = NoveltyArchive { entries: rev };
            let a = compute_novelty(&me, std::iter::empty(), &forward, th).unwrap();
            let b = compute_novelty(&me, std::iter::empty(), &backward, th).unwrap();
            prop_assert_eq!(a.recompute, expected);
            prop_assert_eq!(b.recompute, expected);
        }
    }
}
