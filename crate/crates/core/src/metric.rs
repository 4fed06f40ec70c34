//! Pseudohyperbolic distance on the ball and the Carleson separation check.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{automorphism_phi, check_dims, inner_unchecked, one_minus_inner, BallPoint};
use crate::error::Result;
use crate::sequence::PointSequence;
use crate::tolerances::Tolerances;

/// Above this many factors, products are accumulated as a sum of logarithms.
pub const LOG_PRODUCT_THRESHOLD: usize = 256;

/// `rho(x, y) = sqrt(1 - (1 - |x|^2)(1 - |y|^2) / |1 - <x, y>|^2)`.
///
/// Evaluated as `((1 - |x|^2)|h|^2 + |<h, x>|^2) / |1 - <x, y>|^2` with
/// `h = y - x`, the same quantity with no cancellation in the numerator, so
/// nearby points and points near the sphere keep full accuracy.
pub fn rho_formula(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    check_dims(x.vector(), y.vector())?;
    let h: Vec<Complex64> = y.coords().iter().zip(x.coords()).map(|(b, a)| b - a).collect();
    let hx = inner_unchecked(&h, x.coords());
    let h_sqr = inner_unchecked(&h, &h).re;
    let num = x.defect() * h_sqr + hx.norm_sqr();
    let den = one_minus_inner(x.coords(), y.coords()).norm_sqr();
    Ok((num / den).clamp(0.0, 1.0).sqrt())
}

/// `rho` from the two defects and the gap `1 - <x, y>`.
#[inline]
pub(crate) fn rho_from_gap(defect_x: f64, defect_y: f64, gap: Complex64) -> f64 {
    (1.0 - defect_x * defect_y / gap.norm_sqr()).clamp(0.0, 1.0).sqrt()
}

/// `rho(x, y) = ||phi_y(x)||`, evaluated through the explicit automorphism.
pub fn rho_automorphism(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    Ok(automorphism_phi(y, x)?.norm())
}

/// Classical disc distance `|z - w| / |1 - conj(z) w|`.
pub fn rho_disc(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (Complex64::new(1.0, 0.0) - z.conj() * w).norm()
}

/// Closed form of `<phi_y(x), phi_y(z)>`:
/// `1 - (1 - <x,z>)(1 - <y,y>) / ((1 - <x,y>)(1 - <y,z>))`.
pub fn phi_inner_identity(y: &BallPoint, x: &BallPoint, z: &BallPoint) -> Result<Complex64> {
    check_dims(x.vector(), z.vector())?;
    check_dims(x.vector(), y.vector())?;
    Ok(phi_inner_from_gaps(
        one_minus_inner(x.coords(), z.coords()),
        y.defect(),
        one_minus_inner(x.coords(), y.coords()),
        one_minus_inner(y.coords(), z.coords()),
    ))
}

/// The closed form above from `1 - <x,z>`, `1 - <y,y>`, `1 - <x,y>`, `1 - <y,z>`.
#[inline]
pub(crate) fn phi_inner_from_gaps(xz: Complex64, yy: f64, xy: Complex64, yz: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - xz * yy / (xy * yz)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub delta: f64,
    /// `prod_{k != j} rho(x_k, x_j)` for each `j`, in sequence order.
    pub per_index_products: Vec<f64>,
    pub satisfied: bool,
    pub threshold: f64,
    /// First pair of indices with identical coordinates, if any.
    pub coincident: Option<(usize, usize)>,
}

/// Carleson products and their minimum `delta`.
///
/// A single point has the empty product, so `delta = 1`.
pub fn carleson_delta(seq: &PointSequence, tol: &Tolerances) -> CarlesonReport {
    let points = seq.points();
    let n = points.len();
    let use_logs = n > LOG_PRODUCT_THRESHOLD;

    let rows: Vec<(f64, Option<usize>)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let xj = &points[j];
            let mut prod = 1.0_f64;
            let mut log_sum = 0.0_f64;
            let mut zero_at = None;
            for (k, xk) in points.iter().enumerate() {
                if k == j {
                    continue;
                }
                let gap = one_minus_inner(xk.coords(), xj.coords());
                let r = rho_from_gap(xk.defect(), xj.defect(), gap);
                if zero_at.is_none() && xk.coords() == xj.coords() {
                    zero_at = Some(k);
                }
                if use_logs {
                    log_sum += r.ln();
                } else {
                    prod *= r;
                }
            }
            let value = if use_logs { log_sum.exp() } else { prod };
            (value, zero_at)
        })
        .collect();

    let per_index_products: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let coincident = rows.iter().enumerate().find_map(|(j, r)| r.1.map(|k| (j.min(k), j.max(k))));
    let delta = per_index_products.iter().copied().fold(1.0_f64, f64::min);
    CarlesonReport {
        delta,
        satisfied: coincident.is_none() && delta > tol.delta_min,
        threshold: tol.delta_min,
        per_index_products,
        coincident,
    }
}

/// `1 - ||x_{k+1}|| < c (1 - ||x_k||)` for every consecutive pair, in sequence order.
pub fn hayman_newman_check(seq: &PointSequence, c: f64) -> bool {
    seq.points().windows(2).all(|w| 1.0 - w[1].norm() < c * (1.0 - w[0].norm()))
}

/// Largest consecutive ratio `(1 - ||x_{k+1}||) / (1 - ||x_k||)`; `None` for fewer than two points.
///
/// The Hayman-Newman condition holds for some `c < 1` iff this is below 1,
/// and then for every `c` strictly above it.
pub fn hayman_newman_ratio(seq: &PointSequence) -> Option<f64> {
    seq.points().windows(2).map(|w| (1.0 - w[1].norm()) / (1.0 - w[0].norm())).reduce(f64::max)
}
