use crate::{Error, Result};

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n − 1 denominator); 0 for a single value.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// 1-based ranks with ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j hold ranks i+1..=j+1
        let avg = (i + j + 2) as f64 / 2.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankSumTest {
    /// 1 when the samples differ at the requested level.
    pub h: u8,
    /// Sum of the ranks of the first sample in the pooled ranking.
    pub rank_sum: f64,
    pub z: f64,
    pub p_value: f64,
}

/// Two-sided Wilcoxon rank-sum test using the normal approximation with the
/// tie-corrected variance and no continuity correction.
pub fn wilcoxon_rank_sum(sample_a: &[f64], sample_b: &[f64], alpha: f64) -> Result<RankSumTest> {
    if sample_a.len() < 5 || sample_b.len() < 5 {
        return Err(Error::arg(format!(
            "rank-sum test needs at least 5 values per sample (got {} and {})",
            sample_a.len(),
            sample_b.len()
        )));
    }
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::arg(format!("alpha must be in (0, 0.5], got {alpha}")));
    }
    if sample_a.iter().chain(sample_b).any(|v| v.is_nan()) {
        return Err(Error::arg("rank-sum test received NaN"));
    }
    let na = sample_a.len() as f64;
    let nb = sample_b.len() as f64;
    let n = na + nb;
    let pooled: Vec<f64> = sample_a.iter().chain(sample_b).copied().collect();
    let ranks = average_ranks(&pooled);
    let rank_sum: f64 = ranks[..sample_a.len()].iter().sum();

    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|x, y| x == y) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let deviation = (rank_sum - na * (n + 1.0) / 2.0).abs();
    let (z, p_value) = if variance > 0.0 {
        let z = deviation / variance.sqrt();
        (z, libm::erfc(z / std::f64::consts::SQRT_2))
    } else {
        (0.0, 1.0)
    };
    Ok(RankSumTest {
        h: u8::from(p_value < alpha),
        rank_sum,
        z,
        p_value,
    })
}
