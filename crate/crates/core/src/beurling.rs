//! Explicit Beurling functions for a Carleson-separated sequence.
//!
//! After a stable sort by norm, the system for points `x_1, ..., x_n` is
//!
//! ```text
//! g_{k,j}(x) = <phi_{x_k}(x), phi_{x_k}(x_j)>
//! B_j(x)     = prod_{k != j} g_{k,j}(x)
//! q_j(x)     = ((1 - |x_j|^2) / (1 - <x, x_j>))^2
//! A_j(x)     = sum_{k >= j} w_{kj} (1 + <x_k, x>) / (1 - <x_k, x>)
//! w_{kj}     = (1 - |x_k|^2)(1 - |x_j|^2) / (1 - |<x_k, x_j>|^2)
//! F_j(x)     = B_j(x) / B_j(x_j) * q_j(x)^2 * exp(-C (A_j(x) - A_j(x_j)))
//! ```
//!
//! with `C = 1 / (1 + 2 log(1/delta))`. Each `F_j` is bounded analytic,
//! `F_j(x_k) = [j == k]`, and `sum_j |F_j(x)| <= 128 / (e delta C)`.
//!
//! `g_{k,j}` is evaluated from inner products only; the automorphism itself
//! is never formed here.

use std::f64::consts::E;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::{inner_unchecked, one_minus_abs_sqr, one_minus_inner, BallPoint, CVector};
use crate::error::{Error, Result};
use crate::metric::{carleson_delta, phi_inner_from_gaps};
use crate::sequence::PointSequence;
use crate::tolerances::Tolerances;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `C_delta = 1 / (1 + 2 log(1/delta))`.
pub fn c_delta_of(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    Ok(1.0 / (1.0 + 2.0 * (1.0 / delta).ln()))
}

/// Upper bound `128 / (e delta C_delta)` on the constant of interpolation.
pub fn theoretical_bound(delta: f64) -> Result<f64> {
    let c = c_delta_of(delta)?;
    Ok(128.0 / (E * delta * c))
}

/// Stable sort by norm. `perm[s]` is the input index of the point placed at
/// sorted position `s`.
pub fn sort_by_norm(seq: &PointSequence) -> (PointSequence, Vec<usize>) {
    let points = seq.points();
    let mut perm: Vec<usize> = (0..points.len()).collect();
    perm.sort_by(|&a, &b| points[a].norm_sqr().total_cmp(&points[b].norm_sqr()));
    let sorted = perm.iter().map(|&i| points[i].clone()).collect();
    let sorted = PointSequence::new(sorted, seq.label()).expect("permutation of a valid sequence");
    (sorted, perm)
}

/// Inner products `<x, x_k>` and gaps `1 - <x, x_k>` for every node, shared
/// by all per-`j` terms. Gaps are accumulated with compensation so they keep
/// relative accuracy when `x` and `x_k` are both near the sphere.
#[derive(Debug, Clone)]
pub struct EvalContext {
    s: Vec<Complex64>,
    u: Vec<Complex64>,
}

impl EvalContext {
    pub fn inner_with_nodes(&self) -> &[Complex64] {
        &self.s
    }

    pub fn gaps(&self) -> &[Complex64] {
        &self.u
    }
}

/// Beurling functions for a fixed sequence, with node-side quantities precomputed.
#[derive(Debug, Clone)]
pub struct BeurlingSystem {
    label: String,
    points: Vec<BallPoint>,
    perm: Vec<usize>,
    inverse_perm: Vec<usize>,
    delta: f64,
    c_delta: f64,
    bound: f64,
    b_diag: Vec<Complex64>,
    a_diag: Vec<Complex64>,
    /// Row-major `gap[k * n + j] = 1 - <x_k, x_j>`.
    gap: Vec<Complex64>,
    /// Row-major A-series weights `w_{kj}`; only `k >= j` is used.
    weights: Vec<f64>,
}

impl BeurlingSystem {
    /// Sorts `seq`, measures its Carleson constant, and precomputes
    /// `B_j(x_j)` and `A_j(x_j)`.
    pub fn build(seq: &PointSequence, tol: &Tolerances) -> Result<Self> {
        let report = carleson_delta(seq, tol);
        if let Some((first, second)) = report.coincident {
            return Err(Error::CarlesonZero { first, second });
        }
        if report.delta <= tol.delta_min {
            return Err(Error::CarlesonBelowThreshold { delta: report.delta, threshold: tol.delta_min });
        }
        let delta = report.delta;
        let (sorted, perm) = sort_by_norm(seq);
        let sys = Self::assemble(sorted, perm, delta)?;
        sys.check_conditioning(tol)?;
        Ok(sys)
    }

    fn assemble(sorted: PointSequence, perm: Vec<usize>, delta: f64) -> Result<Self> {
        let label = sorted.label().to_string();
        let points = sorted.into_points();
        let n = points.len();

        let mut gap = Vec::with_capacity(n * n);
        let mut weights = vec![0.0; n * n];
        for (k, xk) in points.iter().enumerate() {
            for (j, xj) in points.iter().enumerate() {
                let u = one_minus_inner(xk.coords(), xj.coords());
                if k >= j {
                    let s = inner_unchecked(xk.coords(), xj.coords());
                    weights[k * n + j] = xk.defect() * xj.defect() / one_minus_abs_sqr(s, u);
                }
                gap.push(u);
            }
        }
        let mut inverse_perm = vec![0; n];
        for (s, &i) in perm.iter().enumerate() {
            inverse_perm[i] = s;
        }

        let c_delta = c_delta_of(delta)?;
        let mut sys = Self {
            label,
            points,
            perm,
            inverse_perm,
            delta,
            c_delta,
            bound: theoretical_bound(delta)?,
            b_diag: Vec::new(),
            a_diag: Vec::new(),
            gap,
            weights,
        };
        let mut b_diag = Vec::with_capacity(n);
        let mut a_diag = Vec::with_capacity(n);
        for j in 0..n {
            let ctx = sys.context_unchecked(&sys.points[j]);
            b_diag.push(sys.b_product_ctx(j, &ctx));
            a_diag.push(sys.a_series_ctx(j, &ctx));
        }
        sys.b_diag = b_diag;
        sys.a_diag = a_diag;
        Ok(sys)
    }

    fn check_conditioning(&self, tol: &Tolerances) -> Result<()> {
        let floor = self.delta * self.delta * (1.0 - tol.conditioning_rel);
        for (index, b) in self.b_diag.iter().enumerate() {
            let value = b.norm();
            if !(value >= floor) {
                return Err(Error::Conditioning { index, value, floor });
            }
        }
        let cap = (1.0 + 2.0 * (1.0 / self.delta).ln()) * (1.0 + tol.conditioning_rel);
        for a in &self.a_diag {
            if !(a.re <= cap && a.re > 0.0) {
                return Err(Error::CorruptSystem { field: "A_diag" });
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Nodes in non-decreasing norm order.
    pub fn points(&self) -> &[BallPoint] {
        &self.points
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Sorted position of the point given at input index `i`.
    pub fn sorted_index(&self, i: usize) -> usize {
        self.inverse_perm[i]
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn c_delta(&self) -> f64 {
        self.c_delta
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn b_diag(&self) -> &[Complex64] {
        &self.b_diag
    }

    pub fn a_diag(&self) -> &[Complex64] {
        &self.a_diag
    }

    /// Points restored to input order.
    pub fn input_sequence(&self) -> PointSequence {
        let mut pts = vec![None; self.len()];
        for (s, &i) in self.perm.iter().enumerate() {
            pts[i] = Some(self.points[s].clone());
        }
        PointSequence::new(pts.into_iter().map(Option::unwrap).collect(), self.label.clone())
            .expect("valid permutation")
    }

    pub fn context(&self, x: &BallPoint) -> Result<EvalContext> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        Ok(self.context_unchecked(x))
    }

    fn context_unchecked(&self, x: &BallPoint) -> EvalContext {
        EvalContext {
            s: self.points.iter().map(|xk| inner_unchecked(x.coords(), xk.coords())).collect(),
            u: self.points.iter().map(|xk| one_minus_inner(x.coords(), xk.coords())).collect(),
        }
    }

    #[inline]
    fn gap(&self, k: usize, j: usize) -> Complex64 {
        self.gap[k * self.len() + j]
    }

    fn g_factor_ctx(&self, k: usize, j: usize, ctx: &EvalContext) -> Complex64 {
        // y = x_k, z = x_j in the closed form of <phi_y(x), phi_y(z)>
        phi_inner_from_gaps(ctx.u[j], self.points[k].defect(), ctx.u[k], self.gap(k, j))
    }

    fn b_product_ctx(&self, j: usize, ctx: &EvalContext) -> Complex64 {
        let mut prod = ONE;
        for k in 0..self.len() {
            if k != j {
                prod *= self.g_factor_ctx(k, j, ctx);
            }
        }
        prod
    }

    fn q_ctx(&self, j: usize, ctx: &EvalContext) -> Complex64 {
        let base = self.points[j].defect() / ctx.u[j];
        base * base
    }

    fn b_func_ctx(&self, k: usize, ctx: &EvalContext) -> f64 {
        self.points[k].defect() / one_minus_abs_sqr(ctx.s[k], ctx.u[k])
    }

    /// Cayley term `(1 + <x_k, x>) / (1 - <x_k, x>)` from the gap `u = 1 - <x, x_k>`.
    #[inline]
    fn cayley(u_k: Complex64) -> Complex64 {
        ((2.0 - u_k) / u_k).conj()
    }

    fn a_series_ctx(&self, j: usize, ctx: &EvalContext) -> Complex64 {
        let n = self.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in j..n {
            acc += Self::cayley(ctx.u[k]) * self.weights[k * n + j];
        }
        acc
    }

    /// `Re A_j(x)` from `Re (1 + w)/(1 - w) = (1 - |w|^2) / |1 - w|^2`.
    fn a_series_real_ctx(&self, j: usize, ctx: &EvalContext) -> f64 {
        let n = self.len();
        (j..n)
            .map(|k| {
                let u = ctx.u[k];
                self.weights[k * n + j] * one_minus_abs_sqr(ctx.s[k], u) / u.norm_sqr()
            })
            .sum()
    }

    fn f_ctx(&self, j: usize, ctx: &EvalContext) -> Complex64 {
        let blaschke = self.b_product_ctx(j, ctx) / self.b_diag[j];
        let q = self.q_ctx(j, ctx);
        let damping = (-(self.a_series_ctx(j, ctx) - self.a_diag[j]) * self.c_delta).exp();
        blaschke * (q * q) * damping
    }

    /// `g_{k,j}(x)` for sorted indices `k != j`.
    pub fn g_factor(&self, k: usize, j: usize, x: &BallPoint) -> Result<Complex64> {
        assert_ne!(k, j, "g_{{k,j}} needs distinct indices");
        Ok(self.g_factor_ctx(k, j, &self.context(x)?))
    }

    pub fn b_product(&self, j: usize, x: &BallPoint) -> Result<Complex64> {
        Ok(self.b_product_ctx(j, &self.context(x)?))
    }

    pub fn q_func(&self, j: usize, x: &BallPoint) -> Result<Complex64> {
        Ok(self.q_ctx(j, &self.context(x)?))
    }

    /// `b_k(x) = (1 - |x_k|^2) / (1 - |<x_k, x>|^2)`, in `(0, 1]`.
    pub fn b_func(&self, k: usize, x: &BallPoint) -> Result<f64> {
        Ok(self.b_func_ctx(k, &self.context(x)?))
    }

    pub fn a_series(&self, j: usize, x: &BallPoint) -> Result<Complex64> {
        Ok(self.a_series_ctx(j, &self.context(x)?))
    }

    /// `Re A_j(x)` through the real-part identity instead of the complex sum.
    pub fn a_series_real(&self, j: usize, x: &BallPoint) -> Result<f64> {
        Ok(self.a_series_real_ctx(j, &self.context(x)?))
    }

    /// `F_j(x)` for sorted index `j`.
    pub fn f(&self, j: usize, x: &BallPoint) -> Result<Complex64> {
        Ok(self.f_ctx(j, &self.context(x)?))
    }

    /// All `F_j(x)` in sorted order.
    pub fn f_all(&self, x: &BallPoint) -> Result<Vec<Complex64>> {
        let ctx = self.context(x)?;
        Ok((0..self.len()).map(|j| self.f_ctx(j, &ctx)).collect())
    }

    /// `sum_j |F_j(x)|`, accumulated in sorted index order.
    pub fn sum_abs_f(&self, x: &BallPoint) -> Result<f64> {
        let ctx = self.context(x)?;
        Ok((0..self.len()).map(|j| self.f_ctx(j, &ctx).norm()).sum())
    }

    /// Every intermediate quantity at `x`, for audits and reports.
    pub fn terms(&self, x: &BallPoint) -> Result<Vec<PointTerms>> {
        let ctx = self.context(x)?;
        Ok((0..self.len())
            .map(|j| PointTerms {
                b_product: self.b_product_ctx(j, &ctx),
                q: self.q_ctx(j, &ctx),
                b: self.b_func_ctx(j, &ctx),
                a_series: self.a_series_ctx(j, &ctx),
                a_series_real: self.a_series_real_ctx(j, &ctx),
                f: self.f_ctx(j, &ctx),
            })
            .collect())
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            dim: self.dim(),
            label: self.label.clone(),
            delta: self.delta,
            c_delta: self.c_delta,
            bound: self.bound,
            perm: self.perm.clone(),
            points: self.points.iter().map(|p| p.vector().clone()).collect(),
            b_diag: self.b_diag.clone(),
            a_diag: self.a_diag.clone(),
        }
    }

    /// Rebuilds from the stored nodes and checks every stored derived field.
    pub fn from_file(file: SystemFile, tol: &Tolerances) -> Result<Self> {
        let n = file.points.len();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let mut seen = vec![false; n];
        if file.perm.len() != n {
            return Err(Error::InvalidPermutation);
        }
        for &i in &file.perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        let mut input = vec![None; n];
        for (s, v) in file.points.into_iter().enumerate() {
            if v.dim() != file.dim {
                return Err(Error::DimensionMismatch { expected: file.dim, found: v.dim() });
            }
            input[file.perm[s]] = Some(BallPoint::new(v)?);
        }
        let seq = PointSequence::new(input.into_iter().map(Option::unwrap).collect(), file.label)?;
        let sys = Self::build(&seq, tol)?;

        if sys.perm != file.perm {
            return Err(Error::CorruptSystem { field: "perm" });
        }
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        let close_c = |a: &Complex64, b: &Complex64| (a - b).norm() <= 1e-12 * a.norm().max(1.0);
        if !close(sys.delta, file.delta) {
            return Err(Error::CorruptSystem { field: "delta" });
        }
        if !close(sys.c_delta, file.c_delta) {
            return Err(Error::CorruptSystem { field: "C_delta" });
        }
        if !close(sys.bound, file.bound) {
            return Err(Error::CorruptSystem { field: "bound" });
        }
        if file.b_diag.len() != n || !sys.b_diag.iter().zip(&file.b_diag).all(|(a, b)| close_c(a, b)) {
            return Err(Error::CorruptSystem { field: "B_diag" });
        }
        if file.a_diag.len() != n || !sys.a_diag.iter().zip(&file.a_diag).all(|(a, b)| close_c(a, b)) {
            return Err(Error::CorruptSystem { field: "A_diag" });
        }
        Ok(sys)
    }
}

/// Per-index quantities of the construction at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointTerms {
    pub b_product: Complex64,
    pub q: Complex64,
    pub b: f64,
    pub a_series: Complex64,
    pub a_series_real: f64,
    pub f: Complex64,
}

/// Serialized system. Points are stored in sorted order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub dim: usize,
    #[serde(default)]
    pub label: String,
    pub delta: f64,
    #[serde(rename = "C_delta")]
    pub c_delta: f64,
    pub bound: f64,
    pub perm: Vec<usize>,
    pub points: Vec<CVector>,
    #[serde(rename = "B_diag")]
    pub b_diag: Vec<Complex64>,
    #[serde(rename = "A_diag")]
    pub a_diag: Vec<Complex64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::automorphism_phi;
    use crate::metric::{phi_inner_identity, rho_formula};
    use crate::sampling::sample_ball;

    fn radial(radii: &[f64]) -> PointSequence {
        PointSequence::new(radii.iter().map(|&r| BallPoint::from_real(&[r]).unwrap()).collect(), "radial").unwrap()
    }

    fn pt(coords: &[(f64, f64)]) -> BallPoint {
        BallPoint::from_complex(coords.iter().map(|&(r, i)| Complex64::new(r, i)).collect()).unwrap()
    }

    fn mixed_system() -> BeurlingSystem {
        let seq = PointSequence::new(
            vec![
                pt(&[(0.6, 0.1), (0.0, 0.2)]),
                pt(&[(-0.1, 0.0), (0.3, -0.2)]),
                pt(&[(0.0, -0.5), (-0.6, 0.1)]),
                pt(&[(0.2, 0.2), (0.1, 0.1)]),
            ],
            "mixed",
        )
        .unwrap();
        BeurlingSystem::build(&seq, &Tolerances::default()).unwrap()
    }

    #[test]
    fn c_delta_values() {
        assert_eq!(c_delta_of(1.0).unwrap(), 1.0);
        assert!((c_delta_of((-0.5_f64).exp()).unwrap() - 0.5).abs() <= 1e-15);
        assert!((c_delta_of((-2.0_f64).exp()).unwrap() - 0.2).abs() <= 1e-15);
        assert!(c_delta_of(0.0).is_err());
        assert!(c_delta_of(-1.0).is_err());
        assert!(c_delta_of(1.5).is_err());
        assert!(c_delta_of(0.3).unwrap() < c_delta_of(0.4).unwrap());
    }

    #[test]
    fn bound_values() {
        assert!((theoretical_bound(1.0).unwrap() - 128.0 / E).abs() < 1e-12);
        assert!((theoretical_bound(1.0).unwrap() - 47.088_568_469_944_62).abs() < 1e-12);
        let b = theoretical_bound((-0.5_f64).exp()).unwrap();
        assert!((b - 256.0 / 0.5_f64.exp()).abs() < 1e-10);
        assert!((b - 155.27).abs() < 0.01);
        assert!(theoretical_bound(0.5).unwrap() > theoretical_bound(0.9).unwrap());
        assert!(theoretical_bound(0.0).is_err());
    }

    #[test]
    fn sort_is_stable_and_reports_the_permutation() {
        let (sorted, perm) = sort_by_norm(&radial(&[0.1, 0.5, 0.9]));
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(sorted.points()[2].norm(), 0.9);

        let (_, perm) = sort_by_norm(&radial(&[0.9, 0.5, 0.1]));
        assert_eq!(perm, vec![2, 1, 0]);

        // equal norms keep input order
        let seq = PointSequence::new(vec![pt(&[(0.0, 0.5)]), pt(&[(0.1, 0.0)]), pt(&[(-0.5, 0.0)])], "ties").unwrap();
        let (sorted, perm) = sort_by_norm(&seq);
        assert_eq!(perm, vec![1, 0, 2]);
        assert_eq!(sorted.points()[1], seq.points()[0]);
    }

    #[test]
    fn g_factor_special_points() {
        let sys = mixed_system();
        let pts = sys.points().to_vec();
        for j in 0..sys.len() {
            for k in 0..sys.len() {
                if k == j {
                    continue;
                }
                assert!(sys.g_factor(k, j, &pts[k]).unwrap().norm() < 1e-15);
                let at_j = sys.g_factor(k, j, &pts[j]).unwrap();
                let rho = rho_formula(&pts[k], &pts[j]).unwrap();
                assert!((at_j - Complex64::new(rho * rho, 0.0)).norm() < 1e-14);
            }
        }
        for x in sample_ball(2, 200, 4, 0.5) {
            for j in 0..sys.len() {
                for k in 0..sys.len() {
                    if k != j {
                        assert!(sys.g_factor(k, j, &x).unwrap().norm() <= 1.0 + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn g_factor_matches_explicit_automorphism_inner_product() {
        let sys = mixed_system();
        let pts = sys.points().to_vec();
        for x in sample_ball(2, 50, 8, 0.2) {
            for (k, j) in [(0, 1), (2, 3), (3, 0), (1, 2)] {
                let lhs = automorphism_phi(&pts[k], &x).unwrap();
                let rhs = automorphism_phi(&pts[k], &pts[j]).unwrap();
                let direct = crate::ball::inner(lhs.vector(), rhs.vector()).unwrap();
                let closed = sys.g_factor(k, j, &x).unwrap();
                assert!((direct - closed).norm() < 1e-12, "{direct} vs {closed}");
            }
        }
    }

    #[test]
    fn b_product_by_enumeration() {
        let seq = radial(&[0.1, -0.5, 0.9]);
        let sys = BeurlingSystem::build(&seq, &Tolerances::default()).unwrap();
        let pts = sys.points().to_vec();
        let x = pt(&[(0.2, 0.3)]);
        for j in 0..3 {
            let mut oracle = ONE;
            for k in 0..3 {
                if k != j {
                    oracle *= phi_inner_identity(&pts[k], &x, &pts[j]).unwrap();
                }
            }
            let got = sys.b_product(j, &x).unwrap();
            assert!((got - oracle).norm() < 1e-15, "{got} vs {oracle}");
        }
    }

    #[test]
    fn b_product_two_points_is_a_single_factor() {
        let seq = radial(&[0.2, 0.7]);
        let sys = BeurlingSystem::build(&seq, &Tolerances::default()).unwrap();
        let x = pt(&[(-0.3, 0.4)]);
        assert_eq!(sys.b_product(0, &x).unwrap(), sys.g_factor(1, 0, &x).unwrap());
    }

    #[test]
    fn b_diag_is_the_product_of_squared_distances() {
        let sys = mixed_system();
        let pts = sys.points();
        for j in 0..sys.len() {
            let mut prod = 1.0;
            for k in 0..sys.len() {
                if k != j {
                    prod *= rho_formula(&pts[k], &pts[j]).unwrap().powi(2);
                }
            }
            assert!((sys.b_diag()[j] - Complex64::new(prod, 0.0)).norm() < 1e-14);
            assert!(sys.b_diag()[j].norm() >= sys.delta().powi(2) - 1e-12);
        }
    }

    #[test]
    fn q_and_b_special_values() {
        let sys = mixed_system();
        let pts = sys.points().to_vec();
        let zero = BallPoint::origin(2);
        for j in 0..sys.len() {
            assert_eq!(sys.q_func(j, &pts[j]).unwrap(), ONE);
            let d = pts[j].defect();
            assert!((sys.q_func(j, &zero).unwrap() - Complex64::new(d * d, 0.0)).norm() < 1e-16);
            assert!((sys.b_func(j, &zero).unwrap() - d).abs() < 1e-16);
            let expected = 1.0 / (1.0 + pts[j].norm_sqr());
            assert!((sys.b_func(j, &pts[j]).unwrap() - expected).abs() < 1e-15);
        }
        for x in sample_ball(2, 500, 2, 0.5) {
            for j in 0..sys.len() {
                let b = sys.b_func(j, &x).unwrap();
                assert!(b > 0.0 && b <= 1.0 + 1e-15);
                assert!(sys.q_func(j, &x).unwrap().norm() <= 4.0 * b * b + 1e-12);
            }
        }
    }

    #[test]
    fn a_series_properties() {
        let sys = mixed_system();
        let pts = sys.points().to_vec();
        let n = sys.len();
        for j in 0..n {
            // Re A_j(x_j) = sum_{k >= j} (1 - rho^2(x_k, x_j))
            let expected: f64 = (j..n).map(|k| 1.0 - rho_formula(&pts[k], &pts[j]).unwrap().powi(2)).sum();
            assert!((sys.a_diag()[j].re - expected).abs() < 1e-13);
            let cap = 1.0 + 2.0 * (1.0 / sys.delta()).ln();
            assert!(sys.a_diag()[j].re <= cap + 1e-9);
        }
        for x in sample_ball(2, 500, 6, 0.5) {
            for j in 0..n {
                let a = sys.a_series(j, &x).unwrap();
                let re = sys.a_series_real(j, &x).unwrap();
                assert!(a.re > 0.0);
                assert!((a.re - re).abs() <= 1e-12 * re.max(1.0), "{} vs {re}", a.re);
            }
        }
    }

    #[test]
    fn last_index_a_series_has_one_term() {
        let sys = mixed_system();
        let n = sys.len();
        let last = &sys.points()[n - 1];
        let x = pt(&[(0.1, -0.7), (0.2, 0.0)]);
        let w = last.defect() * last.defect() / (1.0 - last.norm_sqr().powi(2));
        let s = crate::ball::inner(last.vector(), x.vector()).unwrap();
        let expected = (ONE + s) / (ONE - s) * w;
        assert!((sys.a_series(n - 1, &x).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn beurling_functions_interpolate_kronecker_delta() {
        let sys = mixed_system();
        let pts = sys.points().to_vec();
        for j in 0..sys.len() {
            assert_eq!(sys.f(j, &pts[j]).unwrap().re, 1.0);
            for k in 0..sys.len() {
                if k != j {
                    assert!(sys.f(j, &pts[k]).unwrap().norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn single_point_system() {
        let seq = PointSequence::new(vec![pt(&[(0.3, 0.4)])], "one").unwrap();
        let sys = BeurlingSystem::build(&seq, &Tolerances::default()).unwrap();
        assert_eq!(sys.delta(), 1.0);
        assert_eq!(sys.c_delta(), 1.0);
        assert!((sys.bound() - 128.0 / E).abs() < 1e-12);
        assert_eq!(sys.b_diag()[0], ONE);
        let x = pt(&[(-0.2, 0.1)]);
        let q = sys.q_func(0, &x).unwrap();
        let a = sys.a_series(0, &x).unwrap();
        let expected = q * q * (-(a - sys.a_diag()[0])).exp();
        assert!((sys.f(0, &x).unwrap() - expected).norm() < 1e-15);
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = BeurlingSystem::build(&radial(&[0.1, 0.5, 0.1]), &Tolerances::default());
        assert!(matches!(err, Err(Error::CarlesonZero { first: 0, second: 2 })));
    }

    #[test]
    fn near_duplicates_fall_below_threshold() {
        let err = BeurlingSystem::build(&radial(&[0.5, 0.5 + 1e-9]), &Tolerances::default());
        assert!(matches!(err, Err(Error::CarlesonBelowThreshold { .. })));
    }

    #[test]
    fn radial_three_point_system() {
        let sys = BeurlingSystem::build(&radial(&[0.1, 0.5, 0.9]), &Tolerances::default()).unwrap();
        // rho(.1,.5) = .4/.95, rho(.5,.9) = .4/.55, rho(.1,.9) = .8/.91
        let r12: f64 = 0.4 / 0.95;
        let r23 = 0.4 / 0.55;
        let r13 = 0.8 / 0.91;
        let oracle = (r12 * r13).min(r12 * r23).min(r13 * r23);
        assert!((sys.delta() - oracle).abs() < 1e-14);
        assert!((sys.bound() - theoretical_bound(oracle).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn input_order_is_recoverable() {
        let seq = radial(&[0.9, -0.2, 0.5]);
        let sys = BeurlingSystem::build(&seq, &Tolerances::default()).unwrap();
        assert_eq!(sys.perm(), &[1, 2, 0]);
        assert_eq!(sys.input_sequence(), seq);
        for i in 0..3 {
            let s = sys.sorted_index(i);
            assert_eq!(sys.f(s, &seq.points()[i]).unwrap().re, 1.0);
        }
    }

    #[test]
    fn system_file_round_trip_and_tamper_detection() {
        let sys = mixed_system();
        let file = sys.to_file();
        let text = serde_json::to_string(&file).unwrap();
        let parsed: SystemFile = serde_json::from_str(&text).unwrap();
        let back = BeurlingSystem::from_file(parsed.clone(), &Tolerances::default()).unwrap();
        assert_eq!(back.to_file(), file);

        let mut bad = parsed.clone();
        bad.bound *= 1.01;
        assert!(matches!(
            BeurlingSystem::from_file(bad, &Tolerances::default()),
            Err(Error::CorruptSystem { field: "bound" })
        ));
        let mut bad = parsed;
        bad.perm = vec![0, 0, 1, 2];
        assert!(matches!(BeurlingSystem::from_file(bad, &Tolerances::default()), Err(Error::InvalidPermutation)));
    }
}
