//! Point sequences: generators, validation, and the JSON interchange files.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::{BallPoint, CVector};
use crate::error::{Error, Result};
use crate::sampling::sample_ball;

/// Smallest `1 - r` a generated radius may have. Below this the radius is
/// too close to 1 for `1 - |x|^2` to carry any accuracy.
pub const MIN_RADIAL_GAP: f64 = 1e-12;

/// An ordered, dimension-consistent list of ball points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceFile", into = "SequenceFile")]
pub struct PointSequence {
    dim: usize,
    label: String,
    points: Vec<BallPoint>,
}

impl PointSequence {
    pub fn new(points: Vec<BallPoint>, label: impl Into<String>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptySequence)?.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        Ok(Self { dim, label: label.into(), points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[BallPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<BallPoint> {
        self.points
    }
}

/// On-disk layout: `{"dim": int, "label": str, "points": [[[re,im],...], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    dim: usize,
    #[serde(default)]
    label: String,
    points: Vec<Vec<Complex64>>,
}

impl TryFrom<SequenceFile> for PointSequence {
    type Error = Error;

    fn try_from(file: SequenceFile) -> Result<Self> {
        if file.points.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut points = Vec::with_capacity(file.points.len());
        for (i, coords) in file.points.into_iter().enumerate() {
            if coords.len() != file.dim {
                return Err(Error::InvalidSequence(format!(
                    "point {i} has dimension {} but the file declares {}",
                    coords.len(),
                    file.dim
                )));
            }
            let point = BallPoint::new(CVector::new(coords)?).map_err(|e| match e {
                Error::OutsideBall { norm } => Error::InvalidSequence(format!("point {i} has norm {norm} >= 1")),
                other => other,
            })?;
            points.push(point);
        }
        PointSequence::new(points, file.label)
    }
}

impl From<PointSequence> for SequenceFile {
    fn from(seq: PointSequence) -> Self {
        Self {
            dim: seq.dim,
            label: seq.label,
            points: seq.points.into_iter().map(|p| CVector::from(p).into()).collect(),
        }
    }
}

/// Target values `{"alpha": [[re, im], ...]}` in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesFile {
    pub alpha: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Points on one ray approaching the sphere geometrically.
    #[value(name = "radial")]
    RadialGeometric,
    /// Radial-geometric radii placed on distinct orthonormal axes.
    #[value(name = "orthogonal")]
    OrthogonalDirections,
    /// Seeded uniform points in the ball.
    #[value(name = "random")]
    RandomBall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub dim: usize,
    /// Ratio of consecutive gaps `1 - r_k`.
    pub c: f64,
    /// First radius.
    pub r0: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidGenerator("n must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidGenerator("dim must be at least 1".into()));
        }
        if self.kind != GeneratorKind::RandomBall {
            if !(self.c > 0.0 && self.c < 1.0) {
                return Err(Error::InvalidGenerator(format!("c = {} must lie in (0, 1)", self.c)));
            }
            if !(self.r0 >= 0.0 && self.r0 < 1.0) {
                return Err(Error::InvalidGenerator(format!("r0 = {} must lie in [0, 1)", self.r0)));
            }
        }
        if self.kind == GeneratorKind::OrthogonalDirections && self.n > self.dim {
            return Err(Error::InvalidGenerator(format!(
                "orthogonal directions need n <= dim, got n = {} and dim = {}",
                self.n, self.dim
            )));
        }
        Ok(())
    }

    fn default_label(&self) -> String {
        match self.kind {
            GeneratorKind::RadialGeometric => {
                format!("radial n={} dim={} c={} r0={}", self.n, self.dim, self.c, self.r0)
            }
            GeneratorKind::OrthogonalDirections => {
                format!("orthogonal n={} dim={} c={} r0={}", self.n, self.dim, self.c, self.r0)
            }
            GeneratorKind::RandomBall => {
                format!("random n={} dim={} seed={}", self.n, self.dim, self.seed)
            }
        }
    }
}

/// Radii with `1 - r_k = (1 - r0) c^(k-1)`, `k = 1..=n`.
fn geometric_radii(spec: &GeneratorSpec) -> Result<Vec<f64>> {
    let mut radii = Vec::with_capacity(spec.n);
    let mut gap = 1.0 - spec.r0;
    for index in 0..spec.n {
        let r = if index == 0 { spec.r0 } else { 1.0 - gap };
        if gap < MIN_RADIAL_GAP || r >= 1.0 {
            return Err(Error::RadiusUnderflow { index: index + 1, gap });
        }
        radii.push(r);
        gap *= spec.c;
    }
    Ok(radii)
}

pub fn generate(spec: &GeneratorSpec) -> Result<PointSequence> {
    match spec.kind {
        GeneratorKind::RadialGeometric => gen_radial_geometric(spec),
        GeneratorKind::OrthogonalDirections => gen_orthogonal_directions(spec),
        GeneratorKind::RandomBall => gen_random_ball(spec),
    }
}

pub fn gen_radial_geometric(spec: &GeneratorSpec) -> Result<PointSequence> {
    spec.validate()?;
    let points = geometric_radii(spec)?
        .into_iter()
        .map(|r| BallPoint::new(CVector::basis(spec.dim, 0, Complex64::new(r, 0.0))))
        .collect::<Result<Vec<_>>>()?;
    PointSequence::new(points, spec.default_label())
}

pub fn gen_orthogonal_directions(spec: &GeneratorSpec) -> Result<PointSequence> {
    spec.validate()?;
    let points = geometric_radii(spec)?
        .into_iter()
        .enumerate()
        .map(|(k, r)| BallPoint::new(CVector::basis(spec.dim, k, Complex64::new(r, 0.0))))
        .collect::<Result<Vec<_>>>()?;
    PointSequence::new(points, spec.default_label())
}

pub fn gen_random_ball(spec: &GeneratorSpec) -> Result<PointSequence> {
    spec.validate()?;
    let points = sample_ball(spec.dim, spec.n, spec.seed, 0.0);
    PointSequence::new(points, spec.default_label())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Compact JSON followed by a newline. Floats use the shortest
/// representation that round-trips.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_line(value)).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let raw = read(path)?;
    serde_json::from_str(&raw).map_err(|source| Error::Json { context: path.display().to_string(), source })
}

pub fn load_sequence(path: &Path) -> Result<PointSequence> {
    read_json(path)
}

pub fn save_sequence(seq: &PointSequence, path: &Path) -> Result<()> {
    write_json(path, seq)
}

pub fn load_values(path: &Path) -> Result<Vec<Complex64>> {
    let file: ValuesFile = read_json(path)?;
    if let Some(index) = file.alpha.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(file.alpha)
}

pub fn save_values(alpha: &[Complex64], path: &Path) -> Result<()> {
    write_json(path, &ValuesFile { alpha: alpha.to_vec() })
}
