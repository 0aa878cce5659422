//! Points, metrics and finite sample sets.
//!
//! A [`SampleSet`] is a finite metric space `A` together with the values
//! `g(a)` attached to each of its points. Every other module consumes these
//! types; they are immutable once built.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("coordinate {c}")));
        }
        Ok(Self(coords))
    }

    /// One-dimensional convenience constructor.
    pub fn scalar(x: f64) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Which metric governs distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MetricKind {
    Euclidean,
    Manhattan,
    Chebyshev,
    PNorm {
        p: f64,
    },
    /// 0 for equal coordinates, 1 otherwise.
    Discrete,
}

impl MetricKind {
    /// Distance between two equally sized coordinate slices.
    ///
    /// No length check is done here; [`Metric::distance`] is the checked entry point.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let diffs = x.iter().zip(y).map(|(a, b)| (a - b).abs());
        match *self {
            MetricKind::Euclidean => {
                // scaled to avoid overflow on large coordinates
                let scale = x.iter().zip(y).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                let sum: f64 = diffs.map(|d| (d / scale) * (d / scale)).sum();
                scale * sum.sqrt()
            }
            MetricKind::Manhattan => diffs.sum(),
            MetricKind::Chebyshev => diffs.fold(0.0, f64::max),
            MetricKind::PNorm { p } => {
                let scale = x.iter().zip(y).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                let sum: f64 = diffs.map(|d| (d / scale).powf(p)).sum();
                scale * sum.powf(1.0 / p)
            }
            MetricKind::Discrete => {
                if x.iter().zip(y).all(|(a, b)| a == b) {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    /// Norm of a single vector, for the metrics induced by a norm.
    pub fn norm(&self, v: &[f64]) -> Option<f64> {
        match self {
            MetricKind::Discrete => None,
            _ => {
                let zero = vec![0.0; v.len()];
                Some(self.eval(v, &zero))
            }
        }
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    /// Parses `euclidean`, `manhattan`, `chebyshev`, `pnorm:P` or `discrete`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "euclidean" | "l2" => Ok(MetricKind::Euclidean),
            "manhattan" | "l1" => Ok(MetricKind::Manhattan),
            "chebyshev" | "linf" => Ok(MetricKind::Chebyshev),
            "discrete" => Ok(MetricKind::Discrete),
            _ => {
                let p = s
                    .strip_prefix("pnorm:")
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown metric '{s}'")))?;
                let p: f64 = p
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad exponent in '{s}'")))?;
                MetricKind::p_norm(p)
            }
        }
    }
}

impl MetricKind {
    pub fn p_norm(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("p-norm needs p >= 1, got {p}")));
        }
        Ok(MetricKind::PNorm { p })
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Euclidean => write!(f, "euclidean"),
            MetricKind::Manhattan => write!(f, "manhattan"),
            MetricKind::Chebyshev => write!(f, "chebyshev"),
            MetricKind::PNorm { p } => write!(f, "pnorm:{p}"),
            MetricKind::Discrete => write!(f, "discrete"),
        }
    }
}

/// A metric on `R^dimension`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metric {
    pub kind: MetricKind,
    pub dimension: usize,
}

impl Metric {
    pub fn new(kind: MetricKind, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if let MetricKind::PNorm { p } = kind {
            MetricKind::p_norm(p)?;
        }
        Ok(Self { kind, dimension })
    }

    pub fn euclidean(dimension: usize) -> Self {
        Self {
            kind: MetricKind::Euclidean,
            dimension,
        }
    }

    pub fn check_dim(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: p.dim(),
            });
        }
        Ok(())
    }

    /// `d(x, y)` per the descriptor.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.kind.eval(x.coords(), y.coords()))
    }
}

/// Free-function form of [`Metric::distance`].
pub fn distance(metric: &Metric, x: &Point, y: &Point) -> Result<f64> {
    metric.distance(x, y)
}

/// A finite metric space with attached real values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    metric: Metric,
    points: Vec<Point>,
    values: Vec<f64>,
}

impl SampleSet {
    /// Builds a sample set, rejecting empty input, dimension mismatches,
    /// non-finite values and coincident points that carry different values.
    pub fn new(metric: Metric, points: Vec<Point>, values: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySamples);
        }
        if points.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        for p in &points {
            metric.check_dim(p)?;
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("value {v}")));
        }
        let set = Self { metric, points, values };
        let report = dedup_check(&set, 0.0);
        if !report.is_ok() {
            return Err(Error::Conflict(report));
        }
        Ok(set)
    }

    /// Samples of a function on the real line under the usual metric.
    pub fn from_scalars(pairs: &[(f64, f64)]) -> Result<Self> {
        let points = pairs
            .iter()
            .map(|&(x, _)| Point::scalar(x))
            .collect::<Result<Vec<_>>>()?;
        let values = pairs.iter().map(|&(_, v)| v).collect();
        Self::new(Metric::euclidean(1), points, values)
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.metric.dimension
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.points.iter().zip(self.values.iter().copied())
    }

    /// Same points, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.metric, self.points.clone(), values)
    }

    /// Distance between sample `i` and sample `j`.
    pub fn pair_distance(&self, i: usize, j: usize) -> f64 {
        self.metric.kind.eval(self.points[i].coords(), self.points[j].coords())
    }
}

/// One offending pair found by [`dedup_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConflictPair {
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    pub value_gap: f64,
}

/// Result of scanning a sample set for coincident points with different values.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct DedupReport {
    pub conflicts: Vec<ConflictPair>,
}

impl DedupReport {
    pub fn is_ok(&self) -> bool {
        self.conflicts.is_empty()
    }
}

impl fmt::Display for DedupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conflicts.is_empty() {
            return write!(f, "no conflicts");
        }
        let shown: Vec<String> = self
            .conflicts
            .iter()
            .take(8)
            .map(|c| format!("({}, {}) d={} |dg|={}", c.i, c.j, c.distance, c.value_gap))
            .collect();
        write!(f, "{} conflicting pair(s): {}", self.conflicts.len(), shown.join("; "))?;
        if self.conflicts.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Reports every pair with `d <= tol` whose values differ by more than `tol`.
pub fn dedup_check(samples: &SampleSet, tol: f64) -> DedupReport {
    let n = samples.len();
    let mut conflicts = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = samples.pair_distance(i, j);
            if d <= tol {
                let gap = (samples.values[i] - samples.values[j]).abs();
                if gap > tol {
                    conflicts.push(ConflictPair {
                        i,
                        j,
                        distance: d,
                        value_gap: gap,
                    });
                }
            }
        }
    }
    DedupReport { conflicts }
}
