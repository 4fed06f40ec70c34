//! Seeded sampling of points in the open unit ball of `C^d`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::ball::{BallPoint, CVector};

/// Radius range used for the near-sphere portion of a sample.
pub const BOUNDARY_RADII: (f64, f64) = (0.99, 0.999_999);

pub const DEFAULT_BOUNDARY_FRACTION: f64 = 0.5;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for trial `index`, so trials can run in any order.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniformly distributed unit vector in `C^dim`.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let coords: Vec<Complex64> =
            (0..dim).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        let norm = coords.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-300 {
            let inv = Complex64::new(1.0 / norm, 0.0);
            return CVector::new(coords.into_iter().map(|c| c * inv).collect()).expect("finite gaussian coordinates");
        }
    }
}

/// Point at the given radius along a random direction, resampled on the
/// rare rounding to norm 1.
pub fn random_point_at_radius<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: f64) -> BallPoint {
    loop {
        let dir = random_direction(rng, dim);
        if let Ok(p) = BallPoint::new(dir.scale(Complex64::new(radius, 0.0))) {
            return p;
        }
    }
}

/// Point drawn from the normalized volume measure of the ball.
pub fn uniform_point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> BallPoint {
    loop {
        let u: f64 = rng.random();
        let r = u.powf(1.0 / (2.0 * dim as f64));
        if r < 1.0 {
            return random_point_at_radius(rng, dim, r);
        }
    }
}

pub fn boundary_point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> BallPoint {
    let r = rng.random_range(BOUNDARY_RADII.0..=BOUNDARY_RADII.1);
    random_point_at_radius(rng, dim, r)
}

/// `n_samples` points: a uniform-in-volume block followed by a near-sphere
/// block holding `round(n_samples * boundary_fraction)` points.
pub fn sample_ball(dim: usize, n_samples: usize, seed: u64, boundary_fraction: f64) -> Vec<BallPoint> {
    assert!(dim >= 1, "dimension must be positive");
    assert!((0.0..=1.0).contains(&boundary_fraction), "boundary fraction must lie in [0, 1]");
    let n_boundary = (n_samples as f64 * boundary_fraction).round() as usize;
    let mut rng = seeded_rng(seed);
    (0..n_samples)
        .map(|i| if i < n_samples - n_boundary { uniform_point(&mut rng, dim) } else { boundary_point(&mut rng, dim) })
        .collect()
}
