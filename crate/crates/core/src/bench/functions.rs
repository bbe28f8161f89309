//! Scalar benchmark formulas on plain slices. Rotation is applied by the caller.

use std::f64::consts::{E, PI};

pub const SCHWEFEL_CONSTANT: f64 = 418.9829;

/// Location of the Schwefel minimum in each coordinate.
pub const SCHWEFEL_OPTIMUM: f64 = 420.968_746_227_503_6;

/// Shift used by the rotated Schwefel variant: `y = M (x - s) + s`.
pub const ROTATED_SCHWEFEL_SHIFT: f64 = 420.96;

const WEIERSTRASS_A: f64 = 0.5;
const WEIERSTRASS_B: f64 = 3.0;
const WEIERSTRASS_K_MAX: usize = 20;

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[0] * w[0] - w[1];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let cs: f64 = x.iter().map(|v| (2.0 * PI * v).cos()).sum();
    -20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cs / n).exp() + 20.0 + E
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v / 4000.0).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

/// Powers `(a^k, b^k)` for k = 0..=20.
fn weierstrass_powers() -> impl Iterator<Item = (f64, f64)> {
    (0..=WEIERSTRASS_K_MAX).map(|k| (WEIERSTRASS_A.powi(k as i32), WEIERSTRASS_B.powi(k as i32)))
}

fn weierstrass_term(v: f64) -> f64 {
    weierstrass_powers()
        .map(|(ak, bk)| ak * (2.0 * PI * bk * (v + 0.5)).cos())
        .sum()
}

/// `D · Σ_k aᵏ cos(2π bᵏ · 0.5)`, the constant subtracted by [`weierstrass`].
pub fn weierstrass_offset(dim: usize) -> f64 {
    dim as f64 * weierstrass_term(0.0)
}

/// `offset` must be `weierstrass_offset(x.len())`.
pub fn weierstrass(x: &[f64], offset: f64) -> f64 {
    x.iter().map(|&v| weierstrass_term(v)).sum::<f64>() - offset
}

pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

/// Coordinates at or beyond 1/2 in magnitude snap to the half-integer grid.
/// `f64::round` rounds half away from zero.
pub fn noncontinuous_step(v: f64) -> f64 {
    if v.abs() < 0.5 {
        v
    } else {
        (2.0 * v).round() / 2.0
    }
}

pub fn noncontinuous_rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| {
            let y = noncontinuous_step(v);
            y * y - 10.0 * (2.0 * PI * y).cos() + 10.0
        })
        .sum()
}

pub fn schwefel(x: &[f64]) -> f64 {
    SCHWEFEL_CONSTANT * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

/// Schwefel with the quadratic out-of-range penalty, on already rotated and
/// shifted coordinates `y`. Coordinates with `|y| > 500` add
/// `0.001 (|y| - 500)²`.
pub fn bounded_schwefel(y: &[f64]) -> f64 {
    let mut total = SCHWEFEL_CONSTANT * y.len() as f64;
    for &v in y {
        if v.abs() <= 500.0 {
            total -= v * v.abs().sqrt().sin();
        } else {
            let excess = v.abs() - 500.0;
            total += 0.001 * excess * excess;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_hand_checked_points() {
        assert_eq!(sphere(&[0.0; 10]), 0.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]), 1.0);
        assert_eq!(rosenbrock(&[1.0; 6]), 0.0);
        assert!(ackley(&[0.0; 10]).abs() < 1e-12);
        assert_eq!(griewank(&[0.0; 10]), 0.0);
        // per dimension 0.25 - 10 cos(pi) + 10 = 20.25
        assert!((rastrigin(&[0.5, 0.5]) - 40.5).abs() < 1e-12);
        assert!(weierstrass(&[0.0; 10], weierstrass_offset(10)).abs() < 1e-12);
    }

    #[test]
    fn schwefel_optimum_is_near_zero() {
        let x = [SCHWEFEL_OPTIMUM; 10];
        let v = schwefel(&x);
        assert!((0.0..1e-3 * 10.0).contains(&v), "{v}");
        // Rounding the optimum to two decimals is visibly worse.
        assert!(schwefel(&[420.96; 10]) > v);
    }

    #[test]
    fn step_rounds_half_away_from_zero() {
        assert_eq!(noncontinuous_step(0.49), 0.49);
        assert_eq!(noncontinuous_step(-0.49), -0.49);
        assert_eq!(noncontinuous_step(0.75), 1.0);
        assert_eq!(noncontinuous_step(-0.75), -1.0);
        assert_eq!(noncontinuous_step(0.6), 0.5);
        assert_eq!(noncontinuous_step(1.2), 1.0);
        assert_eq!(noncontinuous_step(-1.3), -1.5);
    }

    #[test]
    fn penalty_branch_is_nonnegative_and_grows() {
        let inside = bounded_schwefel(&[500.0]);
        let a = bounded_schwefel(&[510.0]);
        let b = bounded_schwefel(&[520.0]);
        assert!(inside >= 0.0);
        assert!((a - (SCHWEFEL_CONSTANT + 0.1)).abs() < 1e-12);
        assert!(b > a);
    }
}
