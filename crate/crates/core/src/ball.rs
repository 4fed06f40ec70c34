//! Coordinate arithmetic on the open unit ball of `C^d`.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second, so `1 - <x, a>` is analytic in `x`.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex coordinate vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct CVector(Vec<Complex64>);

impl CVector {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(index) = coords.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(coords))
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// `scale * e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize, scale: Complex64) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = scale;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }
}

impl TryFrom<Vec<Complex64>> for CVector {
    type Error = Error;

    fn try_from(coords: Vec<Complex64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<CVector> for Vec<Complex64> {
    fn from(v: CVector) -> Self {
        v.0
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl Add for &CVector {
    type Output = CVector;

    fn add(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CVector {
    type Output = CVector;

    fn sub(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&CVector> for Complex64 {
    type Output = CVector;

    fn mul(self, rhs: &CVector) -> CVector {
        rhs.scale(self)
    }
}

pub(crate) fn check_dims(x: &CVector, y: &CVector) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(())
}

/// `<x, y> = sum_i x_i conj(y_i)`.
pub fn inner(x: &CVector, y: &CVector) -> Result<Complex64> {
    check_dims(x, y)?;
    Ok(inner_unchecked(x.coords(), y.coords()))
}

#[inline]
pub(crate) fn inner_unchecked(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        acc += a * b.conj();
    }
    acc
}

/// `start + sum a_i b_i` with error-free products and sums (FMA two-product,
/// Knuth two-sum), accurate to a few ulps of the result even under cancellation.
pub(crate) fn compensated_dot(start: f64, terms: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let mut sum = start;
    let mut err = 0.0;
    for (a, b) in terms {
        let p = a * b;
        let p_err = a.mul_add(b, -p);
        let t = sum + p;
        let z = t - sum;
        err += (sum - (t - z)) + (p - z) + p_err;
        sum = t;
    }
    sum + err
}

/// `1 - <x, y>` with compensated accumulation; stays accurate when
/// `<x, y>` is close to 1.
pub(crate) fn one_minus_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let re = compensated_dot(1.0, x.iter().zip(y).flat_map(|(a, b)| [(-a.re, b.re), (-a.im, b.im)]));
    let im = compensated_dot(0.0, x.iter().zip(y).flat_map(|(a, b)| [(-a.im, b.re), (a.re, b.im)]));
    Complex64::new(re, im)
}

/// `1 - |s|^2` given `s` and `u = 1 - s`. Near `s = 1` the form
/// `2 Re u - |u|^2` avoids the cancellation of subtracting `|s|^2` from 1.
#[inline]
pub(crate) fn one_minus_abs_sqr(s: Complex64, u: Complex64) -> f64 {
    if u.norm_sqr() <= 1.0 {
        2.0 * u.re - u.norm_sqr()
    } else {
        1.0 - s.norm_sqr()
    }
}

/// A point of the open unit ball with its squared norm and `1 - ||v||^2` cached.
///
/// `norm_sqr` is `Re <v, v>` computed by [`inner`], so formulas that mix the
/// cache with fresh inner products stay bit-consistent. `defect` is computed
/// separately with compensated arithmetic so it keeps full relative accuracy
/// near the sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CVector", into = "CVector")]
pub struct BallPoint {
    v: CVector,
    norm_sqr: f64,
    defect: f64,
}

impl BallPoint {
    pub fn new(v: CVector) -> Result<Self> {
        let norm_sqr = inner_unchecked(v.coords(), v.coords()).re;
        let defect = one_minus_inner(v.coords(), v.coords()).re;
        if !(norm_sqr < 1.0 && defect > 0.0) {
            return Err(Error::OutsideBall { norm: norm_sqr.sqrt() });
        }
        Ok(Self { v, norm_sqr, defect })
    }

    pub fn origin(dim: usize) -> Self {
        Self { v: CVector::zeros(dim), norm_sqr: 0.0, defect: 1.0 }
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(CVector::from_real(coords)?)
    }

    pub fn from_complex(coords: Vec<Complex64>) -> Result<Self> {
        Self::new(CVector::new(coords)?)
    }

    pub fn vector(&self) -> &CVector {
        &self.v
    }

    pub fn coords(&self) -> &[Complex64] {
        self.v.coords()
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.norm_sqr
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr.sqrt()
    }

    /// `1 - ||x||^2`, strictly positive.
    pub fn defect(&self) -> f64 {
        self.defect
    }
}

impl TryFrom<CVector> for BallPoint {
    type Error = Error;

    fn try_from(v: CVector) -> Result<Self> {
        Self::new(v)
    }
}

impl From<BallPoint> for CVector {
    fn from(p: BallPoint) -> Self {
        p.v
    }
}

/// `s_a = sqrt(1 - ||a||^2)`, the dilation applied to the complement of `a`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ScaleFactor(f64);

impl ScaleFactor {
    pub fn of(a: &BallPoint) -> Self {
        Self(a.defect().sqrt())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Orthogonal projection of `x` onto span{a}; the zero map when `a = 0`.
pub fn proj_p(a: &BallPoint, x: &CVector) -> Result<CVector> {
    check_dims(a.vector(), x)?;
    if a.norm_sqr == 0.0 {
        return Ok(CVector::zeros(x.dim()));
    }
    let coef = inner_unchecked(x.coords(), a.coords()) / inner_unchecked(a.coords(), a.coords());
    Ok(a.v.scale(coef))
}

/// `Q_a = Id - P_a`; the identity when `a = 0`.
pub fn proj_q(a: &BallPoint, x: &CVector) -> Result<CVector> {
    let p = proj_p(a, x)?;
    Ok(x - &p)
}

/// `m_a(x) = (a - x) / (1 - <x, a>)`.
pub fn mobius_m(a: &BallPoint, x: &BallPoint) -> Result<CVector> {
    check_dims(a.vector(), x.vector())?;
    let denom = Complex64::new(1.0, 0.0) - inner_unchecked(x.coords(), a.coords());
    let diff = &a.v - &x.v;
    Ok(diff.scale(denom.inv()))
}

/// The involutive automorphism `phi_a = (s_a Q_a + P_a) o m_a`, exchanging `0` and `a`.
pub fn automorphism_phi(a: &BallPoint, x: &BallPoint) -> Result<BallPoint> {
    let m = mobius_m(a, x)?;
    let s = ScaleFactor::of(a).value();
    let p = proj_p(a, &m)?;
    let q = &m - &p;
    let image = &q.scale(Complex64::new(s, 0.0)) + &p;
    let norm_sqr = image.norm_sqr();
    if !(norm_sqr < 1.0) {
        return Err(Error::IllConditioned { norm: norm_sqr.sqrt() });
    }
    BallPoint::new(image)
}
