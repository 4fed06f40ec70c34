//! Bounded analytic interpolation on the unit ball of a complex Hilbert space.
//!
//! Given finitely many points `x_1, ..., x_n` of the open unit ball with
//! Carleson constant `delta = min_j prod_{k != j} rho(x_k, x_j) > 0`, this
//! crate builds explicit bounded analytic functions `F_j` with
//! `F_j(x_k) = [j == k]` and `sum_j |F_j(x)| <= 128 / (e delta C_delta)`,
//! then interpolates arbitrary bounded data with `sum_j alpha_j F_j`.
//!
//! Finitely many points span a finite-dimensional subspace, so points are
//! plain coordinate vectors in `C^d`.

pub mod audit;
pub mod ball;
pub mod beurling;
pub mod cli;
pub mod error;
pub mod interpolation;
pub mod metric;
pub mod sampling;
pub mod sequence;
pub mod tolerances;

pub use ball::{automorphism_phi, inner, mobius_m, proj_p, proj_q, BallPoint, CVector, ScaleFactor};
pub use beurling::{c_delta_of, sort_by_norm, theoretical_bound, BeurlingSystem, SystemFile};
pub use error::{Error, Result};
pub use interpolation::{estimate_constant, make_interpolant, Interpolant, NodeReport, NormEstimate};
pub use metric::{
    carleson_delta, hayman_newman_check, phi_inner_identity, rho_automorphism, rho_disc, rho_formula, CarlesonReport,
};
pub use sampling::sample_ball;
pub use sequence::{GeneratorKind, GeneratorSpec, PointSequence};
pub use tolerances::Tolerances;
