//! Seeded point-set generators. All randomness comes from the given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::{convex_hull, cross, Point, PointSet};

/// Coordinates of generated sets lie in `[-2^20, 2^20]`.
pub const GENERATOR_RANGE: i64 = 1 << 20;

const MAX_ATTEMPTS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("cannot generate a set of {0} points")]
    InvalidN(usize),
    #[error("no convex set of {n} integer points found after {attempts} attempts")]
    ConvexFailed { n: usize, attempts: u32 },
}

/// Uniform points in the square, rejecting any point that repeats an earlier
/// one or is collinear with two of them.
pub fn random_points(n: usize, seed: u64) -> Result<PointSet, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidN(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(
            rng.gen_range(-GENERATOR_RANGE..=GENERATOR_RANGE),
            rng.gen_range(-GENERATOR_RANGE..=GENERATOR_RANGE),
        );
        if fits(&pts, p) {
            pts.push(p);
        }
    }
    Ok(PointSet::new(pts).expect("generator keeps general position"))
}

fn fits(pts: &[Point], p: Point) -> bool {
    if pts.contains(&p) {
        return false;
    }
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if cross(a, b, p) == 0 {
                return false;
            }
        }
    }
    true
}

/// `n` points in strictly convex position near the circle of radius 2^20,
/// listed counterclockwise. The angles are jittered by the seed.
pub fn convex_points(n: usize, seed: u64) -> Result<PointSet, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidN(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = GENERATOR_RANGE as f64;
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<Point> = (0..n)
            .map(|i| {
                let jitter: f64 = rng.gen_range(-0.25..0.25);
                let t = 2.0 * std::f64::consts::PI * (i as f64 + jitter) / n as f64;
                Point::new((r * t.cos()).round() as i64, (r * t.sin()).round() as i64)
            })
            .collect();
        if let Ok(s) = PointSet::new(pts) {
            if convex_hull(&s).len() == n {
                return Ok(s);
            }
        }
    }
    Err(GenerateError::ConvexFailed { n, attempts: MAX_ATTEMPTS })
}
