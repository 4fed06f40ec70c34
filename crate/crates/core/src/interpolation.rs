//! The linear interpolation operator `T(alpha) = sum_j alpha_j F_j` and
//! sampled estimates of its norm.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::BallPoint;
use crate::beurling::BeurlingSystem;
use crate::error::{Error, Result};
use crate::sampling::sample_ball;

pub use crate::sampling::DEFAULT_BOUNDARY_FRACTION;

/// `f = sum_j alpha_j F_j` over a built system.
#[derive(Debug, Clone)]
pub struct Interpolant<'a> {
    system: &'a BeurlingSystem,
    /// Targets in input order.
    alpha: Vec<Complex64>,
    /// Targets permuted to the system's sorted order.
    alpha_sorted: Vec<Complex64>,
}

impl<'a> Interpolant<'a> {
    /// `alpha` is given in the input order of the sequence the system was built from.
    pub fn new(system: &'a BeurlingSystem, alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.len() != system.len() {
            return Err(Error::LengthMismatch { expected: system.len(), found: alpha.len() });
        }
        if let Some(index) = alpha.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let alpha_sorted = system.perm().iter().map(|&i| alpha[i]).collect();
        Ok(Self { system, alpha, alpha_sorted })
    }

    pub fn system(&self) -> &BeurlingSystem {
        self.system
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn sup_alpha(&self) -> f64 {
        self.alpha.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `f(x)`, summed over the sorted index in fixed order.
    pub fn evaluate(&self, x: &BallPoint) -> Result<Complex64> {
        let values = self.system.f_all(x)?;
        Ok(values.iter().zip(&self.alpha_sorted).fold(Complex64::new(0.0, 0.0), |acc, (f, a)| acc + a * f))
    }

    /// Residuals `|f(x_n) - alpha_n|` in input order.
    pub fn verify_nodes(&self) -> NodeReport {
        let input = self.system.input_sequence();
        let per_node_residuals: Vec<f64> = input
            .points()
            .iter()
            .zip(&self.alpha)
            .map(|(x, a)| (self.evaluate(x).expect("node has system dimension") - a).norm())
            .collect();
        let max_residual = per_node_residuals.iter().copied().fold(0.0, f64::max);
        NodeReport { max_residual, per_node_residuals }
    }
}

pub fn make_interpolant(system: &BeurlingSystem, alpha: Vec<Complex64>) -> Result<Interpolant<'_>> {
    Interpolant::new(system, alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeReport {
    pub max_residual: f64,
    pub per_node_residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// `max` over samples of `sum_j |F_j(x)|`.
    pub empirical_sup: f64,
    pub samples_used: usize,
    pub theoretical_bound: f64,
    pub argmax_point: BallPoint,
}

impl NormEstimate {
    pub fn ratio(&self) -> f64 {
        self.empirical_sup / self.theoretical_bound
    }
}

/// Lower estimate of the interpolation constant from `n_samples` seeded ball points.
///
/// `sum_j |F_j(x)|` is `sup |T(alpha)(x)|` over `||alpha||_inf <= 1` (take
/// `alpha_j` with the conjugate phase of `F_j(x)`), so the sampled maximum
/// is a lower estimate of `||T||`.
pub fn estimate_constant(system: &BeurlingSystem, n_samples: usize, seed: u64, boundary_fraction: f64) -> NormEstimate {
    let samples = sample_ball(system.dim(), n_samples, seed, boundary_fraction);
    estimate_constant_on(system, &samples)
}

/// As [`estimate_constant`] over caller-supplied points. Ties resolve to the
/// earliest sample, so the result does not depend on thread scheduling.
pub fn estimate_constant_on(system: &BeurlingSystem, samples: &[BallPoint]) -> NormEstimate {
    assert!(!samples.is_empty(), "at least one sample is required");
    let sums: Vec<f64> =
        samples.par_iter().map(|x| system.sum_abs_f(x).expect("samples share the system dimension")).collect();
    let (best, empirical_sup) =
        sums.iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    NormEstimate {
        empirical_sup,
        samples_used: samples.len(),
        theoretical_bound: system.bound(),
        argmax_point: samples[best].clone(),
    }
}
