//! Randomized falsification checks for the inequalities and identities the
//! construction rests on.
//!
//! Every audit draws its inputs from a per-trial ChaCha stream, so reports
//! are reproducible for a given seed regardless of thread count. Inequality
//! audits record the margin `rhs - lhs` and fail a trial when it drops below
//! `-tol.margin`; identity audits record a relative gap and fail above
//! `tol.identity`.

use std::f64::consts::E;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ball::{inner_unchecked, BallPoint};
use crate::error::{Error, Result};
use crate::metric::carleson_delta;
use crate::sampling::{boundary_point, trial_rng, uniform_point};
use crate::sequence::{generate, GeneratorKind, GeneratorSpec, PointSequence};
use crate::tolerances::Tolerances;

/// Identifiers accepted by [`run_audit`], in the order `all` runs them.
pub const LEMMA_IDS: [&str; 8] =
    ["eq10", "eq11", "min-bound", "sum-integral", "rudin", "factor2", "eighth", "carleson-sums"];

/// Largest `t` sampled by the min-bound audit.
pub const MIN_BOUND_T_MAX: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub lemma_id: String,
    pub trials: usize,
    pub failures: usize,
    /// Smallest margin for inequalities, largest gap for identities.
    pub worst_margin: f64,
    pub worst_case_input: Value,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Copy)]
enum Check {
    /// Fails when `margin < -tol`.
    Inequality(f64),
    /// Fails when `gap > tol`.
    Identity(f64),
}

impl Check {
    fn failed(self, value: f64) -> bool {
        match self {
            Check::Inequality(tol) => !(value >= -tol),
            Check::Identity(tol) => !(value <= tol),
        }
    }

    /// Larger is worse; NaN is worst of all.
    fn badness(self, value: f64) -> f64 {
        if value.is_nan() {
            return f64::INFINITY;
        }
        match self {
            Check::Inequality(_) => -value,
            Check::Identity(_) => value,
        }
    }
}

struct Worst<T> {
    index: usize,
    badness: f64,
    value: f64,
    input: T,
}

fn run_trials<T, F>(lemma_id: &str, trials: usize, seed: u64, check: Check, trial: F) -> AuditReport
where
    T: Serialize + Send,
    F: Fn(usize, &mut ChaCha8Rng) -> (f64, T) + Sync,
{
    let reduced = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let (value, input) = trial(i, &mut rng);
            let failures = usize::from(check.failed(value));
            (failures, Some(Worst { index: i, badness: check.badness(value), value, input }))
        })
        .reduce(
            || (0, None),
            |(fa, wa), (fb, wb)| {
                let worst = match (wa, wb) {
                    (Some(a), Some(b)) => {
                        // deterministic: worse value wins, ties go to the earlier trial
                        if b.badness > a.badness || (b.badness == a.badness && b.index < a.index) {
                            Some(b)
                        } else {
                            Some(a)
                        }
                    }
                    (a, None) => a,
                    (None, b) => b,
                };
                (fa + fb, worst)
            },
        );
    let (failures, worst) = reduced;
    let (worst_margin, worst_case_input) = match worst {
        Some(w) => (w.value, serde_json::to_value(&w.input).expect("serializable input")),
        None => (0.0, Value::Null),
    };
    AuditReport { lemma_id: lemma_id.to_string(), trials, failures, worst_margin, worst_case_input }
}

/// Half the trials sample the volume measure, half sit near the sphere.
fn mixed_point(rng: &mut ChaCha8Rng, dim: usize) -> BallPoint {
    if rng.random_bool(0.5) {
        uniform_point(rng, dim)
    } else {
        boundary_point(rng, dim)
    }
}

fn one_minus(z: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - z
}

/// `1 - x <= -log x` on `(0, 1]`.
pub fn audit_log_inequality(trials: usize, seed: u64, tol: &Tolerances) -> AuditReport {
    run_trials("eq10", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let x = match i % 3 {
            // (0, 1]
            0 => 1.0 - rng.random::<f64>(),
            // log-uniform down to 1e-300
            1 => (-rng.random_range(0.0..690.0_f64)).exp(),
            // close to 1 where both sides vanish
            _ => 1.0 - rng.random::<f64>() * 1e-6,
        };
        (log_inequality_margin(x), json!({ "x": x }))
    })
}

pub fn log_inequality_margin(x: f64) -> f64 {
    -x.ln() - (1.0 - x)
}

/// `Re[(1 + a z) / (1 - a z)] = (1 - |a|^2 |z|^2) / |1 - a z|^2`, `|a| <= 1`, `|z| < 1`.
pub fn audit_re_identity(trials: usize, seed: u64, tol: &Tolerances) -> AuditReport {
    run_trials("eq11", trials, seed, Check::Identity(tol.identity), |i, rng| {
        let ra = if i % 10 == 0 { 1.0 } else { rng.random::<f64>().sqrt() };
        let alpha = Complex64::from_polar(ra, rng.random_range(0.0..std::f64::consts::TAU));
        let z = uniform_point(rng, 1).coords()[0];
        (re_identity_gap(alpha, z), json!({ "alpha": alpha, "z": z }))
    })
}

/// Relative gap between the two sides, scaled by `max(1, |rhs|)`.
pub fn re_identity_gap(alpha: Complex64, z: Complex64) -> f64 {
    let w = alpha * z;
    let lhs = ((Complex64::new(1.0, 0.0) + w) / one_minus(w)).re;
    let rhs = (1.0 - alpha.norm_sqr() * z.norm_sqr()) / one_minus(w).norm_sqr();
    (lhs - rhs).abs() / rhs.abs().max(1.0)
}

/// `h(t) = min{1, 256 / (e^2 t^2)}`.
pub fn h_min(t: f64) -> f64 {
    (256.0 / (E * E * t * t)).min(1.0)
}

/// `int_0^inf h = 16/e + int_{16/e}^inf 256/(e^2 t^2) dt = 32/e`.
pub fn integral_of_h() -> f64 {
    let knee = 16.0 / E;
    knee + 256.0 / (E * E) / knee
}

/// `u^2 exp(-u t / 8) <= h(t)` for `u` in `[0, 1]`, `t > 0`.
pub fn audit_min_bound(trials: usize, seed: u64, tol: &Tolerances) -> AuditReport {
    run_trials("min-bound", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let t = if i % 2 == 0 {
            MIN_BOUND_T_MAX * (1.0 - rng.random::<f64>())
        } else {
            10f64.powf(rng.random_range(-6.0..3.0))
        };
        let u = match i % 5 {
            // the maximizer u = 16/t when it lies in [0, 1]
            0 => (16.0 / t).min(1.0),
            _ => rng.random::<f64>(),
        };
        (min_bound_margin(u, t), json!({ "u": u, "t": t }))
    })
}

pub fn min_bound_margin(u: f64, t: f64) -> f64 {
    h_min(t) - u * u * (-u * t / 8.0).exp()
}

/// `sum_j c_j h(sum_{k >= j} c_k)`.
pub fn tail_sum(c: &[f64]) -> f64 {
    let mut tail = 0.0;
    let mut acc = 0.0;
    for &ck in c.iter().rev() {
        tail += ck;
        acc += ck * h_min(tail);
    }
    acc
}

/// `sum_j c_j h(sum_{k >= j} c_k) <= int_0^inf h` for `c_k` in `(0, 1)`.
pub fn audit_sum_integral(trials: usize, seed: u64, tol: &Tolerances) -> AuditReport {
    let bound = integral_of_h();
    run_trials("sum-integral", trials, seed, Check::Inequality(tol.margin), |_, rng| {
        let len = rng.random_range(0..=100usize);
        let c: Vec<f64> = (0..len)
            .map(|_| loop {
                let v: f64 = rng.random();
                if v > 0.0 {
                    break v;
                }
            })
            .collect();
        (bound - tail_sum(&c), json!({ "c": c }))
    })
}

fn dim_for(i: usize, dims: &[usize]) -> usize {
    dims[i % dims.len()]
}

/// `|1 - <a,b>| <= (sqrt|1 - <a,c>| + sqrt|1 - <b,c>|)^2`.
pub fn audit_rudin_inequality(trials: usize, seed: u64, dims: &[usize], tol: &Tolerances) -> AuditReport {
    assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1));
    run_trials("rudin", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let d = dim_for(i, dims);
        let a = mixed_point(rng, d);
        let b = if i % 7 == 0 { a.clone() } else { mixed_point(rng, d) };
        let c = if i % 11 == 0 { a.clone() } else { mixed_point(rng, d) };
        (rudin_margin(&a, &b, &c), json!({ "a": a, "b": b, "c": c }))
    })
}

pub fn rudin_margin(a: &BallPoint, b: &BallPoint, c: &BallPoint) -> f64 {
    let ab = one_minus(inner_unchecked(a.coords(), b.coords())).norm();
    let ac = one_minus(inner_unchecked(a.coords(), c.coords())).norm();
    let bc = one_minus(inner_unchecked(b.coords(), c.coords())).norm();
    (ac.sqrt() + bc.sqrt()).powi(2) - ab
}

/// Both factor-2 triangle inequalities; the margin is the smaller of the two.
pub fn audit_factor2_inequalities(trials: usize, seed: u64, dims: &[usize], tol: &Tolerances) -> AuditReport {
    assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1));
    run_trials("factor2", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let d = dim_for(i, dims);
        let x1 = mixed_point(rng, d);
        let x2 = if i % 7 == 0 { x1.clone() } else { mixed_point(rng, d) };
        let x3 = if i % 11 == 0 { x1.clone() } else { mixed_point(rng, d) };
        let (m1, m2) = factor2_margins(&x1, &x2, &x3);
        (m1.min(m2), json!({ "x1": x1, "x2": x2, "x3": x3 }))
    })
}

/// Margins of `|1-<x1,x2>| <= 2(|1-<x1,x3>| + |1-<x2,x3>|)` and
/// `1-|<x1,x2>| <= 2(1-|<x1,x3>| + 1-|<x2,x3>|)`.
pub fn factor2_margins(x1: &BallPoint, x2: &BallPoint, x3: &BallPoint) -> (f64, f64) {
    let g12 = inner_unchecked(x1.coords(), x2.coords());
    let g13 = inner_unchecked(x1.coords(), x3.coords());
    let g23 = inner_unchecked(x2.coords(), x3.coords());
    let m1 = 2.0 * (one_minus(g13).norm() + one_minus(g23).norm()) - one_minus(g12).norm();
    let m2 = 2.0 * ((1.0 - g13.norm()) + (1.0 - g23.norm())) - (1.0 - g12.norm());
    (m1, m2)
}

/// For `|x_k| >= |x_j|`:
/// `(1 - |<x_k,x>|^2) / (1 - |<x_k,x_j>|^2) >= (1/8)(1 - |x_k|^2) / (1 - |<x_j,x>|^2)`.
pub fn audit_eighth_comparison(trials: usize, seed: u64, dims: &[usize], tol: &Tolerances) -> AuditReport {
    assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1));
    run_trials("eighth", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let d = dim_for(i, dims);
        let mut xk = mixed_point(rng, d);
        let mut xj = mixed_point(rng, d);
        if i % 13 == 0 {
            xk = xj.clone();
        }
        if xk.norm_sqr() < xj.norm_sqr() {
            std::mem::swap(&mut xk, &mut xj);
        }
        let x = match i % 10 {
            0 => xj.clone(),
            1 => BallPoint::origin(d),
            2 => xk.clone(),
            _ => mixed_point(rng, d),
        };
        (eighth_margin(&xk, &xj, &x), json!({ "x_k": xk, "x_j": xj, "x": x }))
    })
}

pub fn eighth_margin(xk: &BallPoint, xj: &BallPoint, x: &BallPoint) -> f64 {
    let kx = inner_unchecked(xk.coords(), x.coords()).norm_sqr();
    let kj = inner_unchecked(xk.coords(), xj.coords()).norm_sqr();
    let jx = inner_unchecked(xj.coords(), x.coords()).norm_sqr();
    (1.0 - kx) / (1.0 - kj) - 0.125 * xk.defect() / (1.0 - jx)
}

/// Margins of both Carleson sum bounds at index `j`.
pub fn carleson_sum_margins(seq: &PointSequence, delta: f64, j: usize) -> (f64, f64) {
    let pts = seq.points();
    let log_inv = (1.0 / delta).ln();
    let nj = pts[j].norm();
    let ratio = (1.0 + nj) / (1.0 - nj);
    let off: f64 = pts.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.defect()).sum();
    let all = off + pts[j].defect();
    (2.0 * log_inv * ratio - off, (1.0 + 2.0 * log_inv) * ratio - all)
}

/// Carleson sum bounds for every index of one sequence.
pub fn audit_carleson_sums(seq: &PointSequence, tol: &Tolerances) -> Result<AuditReport> {
    let report = carleson_delta(seq, tol);
    if let Some((first, second)) = report.coincident {
        return Err(Error::CarlesonZero { first, second });
    }
    let delta = report.delta;
    if !(delta > 0.0) {
        return Err(Error::CarlesonBelowThreshold { delta, threshold: 0.0 });
    }
    Ok(run_trials("carleson-sums", seq.len(), 0, Check::Inequality(tol.margin), |j, _| {
        let (m15, m16) = carleson_sum_margins(seq, delta, j);
        (m15.min(m16), json!({ "label": seq.label(), "j": j, "delta": delta }))
    }))
}

/// Carleson sum bounds over `trials` generated sequences: radial-geometric
/// sequences with random ratio and first radius, and random-ball sequences.
pub fn audit_carleson_sums_generated(trials: usize, seed: u64, tol: &Tolerances) -> AuditReport {
    let mut rep = run_trials("carleson-sums", trials, seed, Check::Inequality(tol.margin), |i, rng| {
        let seq = generated_sequence(i, rng);
        let report = carleson_delta(&seq, tol);
        let delta = report.delta;
        if !(delta > 0.0) {
            // no hypothesis to test; the trial is vacuous
            return (f64::INFINITY, json!({ "sequence": seq, "skipped": true }));
        }
        let (worst_j, worst) = (0..seq.len())
            .map(|j| {
                let (a, b) = carleson_sum_margins(&seq, delta, j);
                (j, a.min(b))
            })
            .fold((0, f64::INFINITY), |acc, (j, m)| if m < acc.1 { (j, m) } else { acc });
        (worst, json!({ "sequence": seq, "j": worst_j, "delta": delta }))
    });
    rep.lemma_id = "carleson-sums".into();
    rep
}

fn generated_sequence(i: usize, rng: &mut ChaCha8Rng) -> PointSequence {
    let spec = if i % 2 == 0 {
        GeneratorSpec {
            kind: GeneratorKind::RadialGeometric,
            n: rng.random_range(1..=20),
            dim: rng.random_range(1..=4),
            c: rng.random_range(0.05..0.95),
            r0: rng.random_range(0.0..0.9),
            seed: 0,
        }
    } else {
        GeneratorSpec {
            kind: GeneratorKind::RandomBall,
            n: rng.random_range(2..=12),
            dim: rng.random_range(1..=8),
            c: 0.5,
            r0: 0.0,
            seed: rng.random(),
        }
    };
    match generate(&spec) {
        Ok(seq) => seq,
        // radii too close to the sphere: keep the representable prefix
        Err(Error::RadiusUnderflow { index, .. }) => {
            generate(&GeneratorSpec { n: index - 1, ..spec }).expect("shorter prefix is valid")
        }
        Err(e) => unreachable!("generator parameters are valid: {e}"),
    }
}

/// Default trial count for each audit id.
pub fn default_trials(id: &str) -> usize {
    match id {
        "sum-integral" => 10_000,
        "carleson-sums" => 1_000,
        _ => 100_000,
    }
}

/// Dimensions cycled through by the vector audits.
pub const AUDIT_DIMS: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// Runs one audit by id, or every audit for `"all"`. `trials = None` uses
/// [`default_trials`].
pub fn run_audit(id: &str, trials: Option<usize>, seed: u64, tol: &Tolerances) -> Result<Vec<AuditReport>> {
    if id == "all" {
        return LEMMA_IDS.iter().map(|id| run_one(id, trials, seed, tol)).collect();
    }
    Ok(vec![run_one(id, trials, seed, tol)?])
}

fn run_one(id: &str, trials: Option<usize>, seed: u64, tol: &Tolerances) -> Result<AuditReport> {
    let n = trials.unwrap_or_else(|| default_trials(id));
    let report = match id {
        "eq10" => audit_log_inequality(n, seed, tol),
        "eq11" => audit_re_identity(n, seed, tol),
        "min-bound" => audit_min_bound(n, seed, tol),
        "sum-integral" => audit_sum_integral(n, seed, tol),
        "rudin" => audit_rudin_inequality(n, seed, &AUDIT_DIMS, tol),
        "factor2" => audit_factor2_inequalities(n, seed, &AUDIT_DIMS, tol),
        "eighth" => audit_eighth_comparison(n, seed, &AUDIT_DIMS, tol),
        "carleson-sums" => audit_carleson_sums_generated(n, seed, tol),
        other => return Err(Error::UnknownLemma(other.to_string())),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn pt(coords: &[(f64, f64)]) -> BallPoint {
        BallPoint::from_complex(coords.iter().map(|&(r, i)| Complex64::new(r, i)).collect()).unwrap()
    }

    #[test]
    fn log_margin_examples() {
        assert_eq!(log_inequality_margin(1.0), 0.0);
        let m = log_inequality_margin(1.0 / E);
        assert!((m - 1.0 / E).abs() < 1e-15);
    }

    #[test]
    fn re_identity_examples() {
        let c = |r, i| Complex64::new(r, i);
        assert_eq!(re_identity_gap(c(0.0, 0.0), c(0.3, 0.4)), 0.0);
        assert_eq!(re_identity_gap(c(0.6, 0.8), c(0.0, 0.0)), 0.0);
        // Re 3 = 3 and (1 - 0.25) / 0.25 = 3
        let w = c(1.0, 0.0) * c(0.5, 0.0);
        assert_eq!(((c(1.0, 0.0) + w) / (c(1.0, 0.0) - w)).re, 3.0);
        assert!(re_identity_gap(c(1.0, 0.0), c(0.5, 0.0)) < 1e-15);
    }

    #[test]
    fn min_bound_equality_at_maximizer() {
        for t in [16.0, 20.0, 100.0, 999.0] {
            let m = min_bound_margin(16.0 / t, t);
            assert!(m.abs() < 1e-15, "t = {t}: {m}");
        }
        // u = 1, t -> 0: both sides tend to 1
        assert!(min_bound_margin(1.0, 1e-12).abs() < 1e-12);
    }

    #[test]
    fn integral_of_h_by_quadrature() {
        // Midpoint rule on [0, 16/e], exact tail beyond T = 1e6, and a
        // substitution t = 1/s on [16/e, 1e6] where the integrand is constant.
        let knee = 16.0 / E;
        let n = 200_000;
        let step = knee / n as f64;
        let head: f64 = (0..n).map(|i| h_min((i as f64 + 0.5) * step) * step).sum();
        let (s0, s1) = (1.0 / 1e6, 1.0 / knee);
        let ds = (s1 - s0) / n as f64;
        let mid: f64 = (0..n)
            .map(|i| {
                let s = s0 + (i as f64 + 0.5) * ds;
                h_min(1.0 / s) / (s * s) * ds
            })
            .sum();
        let tail = 256.0 / (E * E) / 1e6;
        let quad = head + mid + tail;
        assert!((quad - 32.0 / E).abs() < 1e-9, "{quad}");
        assert!((integral_of_h() - 32.0 / E).abs() < 1e-14);
    }

    #[test]
    fn tail_sum_examples() {
        assert_eq!(tail_sum(&[]), 0.0);
        assert_eq!(tail_sum(&[1.0]), 1.0);
        // c = (0.5, 0.5): 0.5 h(1) + 0.5 h(0.5) = 1
        assert_eq!(tail_sum(&[0.5, 0.5]), 1.0);
    }

    #[test]
    fn rudin_special_configurations() {
        let a = pt(&[(0.3, 0.2), (-0.1, 0.5)]);
        let d = a.defect();
        assert!((rudin_margin(&a, &a, &a) - 3.0 * d).abs() < 1e-15);
        let c = pt(&[(0.7, 0.0), (0.1, -0.2)]);
        let ac = one_minus(inner_unchecked(a.coords(), c.coords())).norm();
        assert!((rudin_margin(&a, &a, &c) - (4.0 * ac - d)).abs() < 1e-15);
        assert!(rudin_margin(&a, &a, &c) >= 0.0);
    }

    #[test]
    fn factor2_special_configurations() {
        let x1 = pt(&[(0.3, 0.2), (-0.1, 0.5)]);
        let x3 = pt(&[(-0.6, 0.1), (0.2, 0.2)]);
        let (m1, m2) = factor2_margins(&x1, &x1, &x3);
        assert!(m1 >= 0.0 && m2 >= 0.0);
        let (m1, m2) = factor2_margins(&x1, &x3, &x1);
        assert!(m1 >= 0.0 && m2 >= 0.0);
    }

    #[test]
    fn eighth_special_configurations() {
        let xj = pt(&[(0.3, 0.2), (-0.1, 0.5)]);
        // x = x_k = x_j: lhs = 1, rhs = (1/8)(1 - |x_j|^2)/(1 - |x_j|^4)
        let m = eighth_margin(&xj, &xj, &xj);
        let expected = 1.0 - 0.125 / (1.0 + xj.norm_sqr());
        assert!((m - expected).abs() < 1e-15);
        assert!(m >= 7.0 / 8.0 - 1e-15);

        let xk = pt(&[(0.8, 0.0), (0.1, -0.3)]);
        let zero = BallPoint::origin(2);
        let kj = inner_unchecked(xk.coords(), xj.coords()).norm_sqr();
        let m = eighth_margin(&xk, &xj, &zero);
        assert!((m - (1.0 / (1.0 - kj) - xk.defect() / 8.0)).abs() < 1e-15);
        assert!(m >= 0.0);
    }

    #[test]
    fn carleson_sums_two_antipodal_points() {
        let seq = PointSequence::new(
            vec![BallPoint::from_real(&[0.9]).unwrap(), BallPoint::from_real(&[-0.9]).unwrap()],
            "antipodal",
        )
        .unwrap();
        let delta = carleson_delta(&seq, &tol()).delta;
        // rho = 1.8 / 1.81
        assert!((delta - 1.8 / 1.81).abs() < 1e-15);
        assert!((delta - 0.994_48).abs() < 1e-5);
        let rep = audit_carleson_sums(&seq, &tol()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.trials, 2);
    }

    #[test]
    fn carleson_sums_single_point() {
        let seq = PointSequence::new(vec![BallPoint::from_real(&[0.4]).unwrap()], "one").unwrap();
        let (m15, _) = carleson_sum_margins(&seq, 1.0, 0);
        assert_eq!(m15, 0.0);
        assert!(audit_carleson_sums(&seq, &tol()).unwrap().passed());
    }

    #[test]
    fn carleson_sums_rejects_duplicates() {
        let p = BallPoint::from_real(&[0.4]).unwrap();
        let seq = PointSequence::new(vec![p.clone(), p], "dup").unwrap();
        assert!(audit_carleson_sums(&seq, &tol()).is_err());
    }

    #[test]
    fn audits_are_deterministic() {
        let a = run_audit("rudin", Some(2_000), 9, &tol()).unwrap();
        let b = run_audit("rudin", Some(2_000), 9, &tol()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(run_audit("lemma-99", None, 1, &tol()), Err(Error::UnknownLemma(_))));
    }

    #[test]
    fn small_runs_of_every_audit_pass() {
        for rep in run_audit("all", Some(2_000), 1, &tol()).unwrap() {
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.trials, 2_000);
        }
    }
}
