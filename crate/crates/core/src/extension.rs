//! McShane and Whitney extensions over a finite sample set.
//!
//! For samples `g` on `A` that are `sigma`-Lipschitz, the lower extension
//!
//! ```text
//! g_lo(x) = max_{a in A} g(a) - sigma * d(x, a)
//! ```
//!
//! is the smallest `sigma`-Lipschitz function agreeing with `g` on `A`, and
//! the upper extension
//!
//! ```text
//! g_hi(x) = min_{a in A} g(a) + sigma * d(x, a)
//! ```
//!
//! is the largest. Every `sigma`-Lipschitz extension lies between the two.
//! The midpoint `(g_lo + g_hi) / 2` is offered as a practical predictor; it is
//! `sigma`-Lipschitz as the average of two such functions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lipschitz::{first_violation, lipschitz_constant};
use crate::metric::{Metric, Point, SampleSet};

/// Default absolute tolerance for inequality checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Which extension to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// McShane: `max g(a) - sigma d(x, a)`.
    Lower,
    /// Whitney: `min g(a) + sigma d(x, a)`.
    Upper,
    Midpoint,
}

impl Side {
    pub fn flipped(self) -> Self {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
            Side::Midpoint => Side::Midpoint,
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Side::Lower),
            "upper" => Ok(Side::Upper),
            "midpoint" => Ok(Side::Midpoint),
            _ => Err(Error::InvalidParameter(format!("unknown side '{s}'"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
            Side::Midpoint => "midpoint",
        })
    }
}

/// `max_a g(a) - sigma d(x, a)` without any validation.
pub(crate) fn lower_kernel(samples: &SampleSet, sigma: f64, x: &[f64]) -> f64 {
    let kind = samples.metric().kind;
    samples
        .iter()
        .map(|(a, g)| g - sigma * kind.eval(x, a.coords()))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `min_a g(a) + sigma d(x, a)` without any validation.
pub(crate) fn upper_kernel(samples: &SampleSet, sigma: f64, x: &[f64]) -> f64 {
    let kind = samples.metric().kind;
    samples
        .iter()
        .map(|(a, g)| g + sigma * kind.eval(x, a.coords()))
        .fold(f64::INFINITY, f64::min)
}

/// A frozen extension: samples, constant and side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionSpec {
    samples: SampleSet,
    sigma: f64,
    side: Side,
}

impl ExtensionSpec {
    /// Builds a spec, rejecting `sigma` below the samples' empirical constant
    /// (beyond `tol`).
    pub fn new(samples: SampleSet, sigma: f64, side: Side, tol: f64) -> Result<Self> {
        check_sigma(sigma)?;
        if let Some(pair) = first_violation(&samples, sigma, tol) {
            let required = lipschitz_constant(&samples)
                .map(|r| r.max_ratio)
                .unwrap_or(f64::INFINITY);
            return Err(Error::SigmaTooSmall { sigma, required, pair });
        }
        Ok(Self { samples, sigma, side })
    }

    /// Uses the samples' own Lipschitz constant (zero for a single point).
    pub fn tight(samples: SampleSet, side: Side) -> Result<Self> {
        let sigma = match lipschitz_constant(&samples) {
            Ok(r) => r.max_ratio,
            Err(Error::NoDistinctPairs) => 0.0,
            Err(e) => return Err(e),
        };
        Ok(Self { samples, sigma, side })
    }

    /// Builds the inf/sup-convolution envelope without requiring the samples
    /// to be `sigma`-Lipschitz.
    ///
    /// The formulas are the same but agreement with the samples is lost: the
    /// upper kernel then lies below the data and the lower kernel above it.
    pub fn envelope(samples: SampleSet, sigma: f64, side: Side) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(Self { samples, sigma, side })
    }

    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn metric(&self) -> &Metric {
        self.samples.metric()
    }

    pub fn with_side(&self, side: Side) -> Self {
        Self { side, ..self.clone() }
    }

    /// Evaluates the spec's own side at `x`.
    pub fn eval(&self, x: &Point) -> Result<f64> {
        self.metric().check_dim(x)?;
        Ok(self.eval_unchecked(x.coords()))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        match self.side {
            Side::Lower => lower_kernel(&self.samples, self.sigma, x),
            Side::Upper => upper_kernel(&self.samples, self.sigma, x),
            Side::Midpoint => {
                0.5 * (lower_kernel(&self.samples, self.sigma, x) + upper_kernel(&self.samples, self.sigma, x))
            }
        }
    }

    pub fn lower(&self, x: &Point) -> Result<f64> {
        self.metric().check_dim(x)?;
        Ok(lower_kernel(&self.samples, self.sigma, x.coords()))
    }

    pub fn upper(&self, x: &Point) -> Result<f64> {
        self.metric().check_dim(x)?;
        Ok(upper_kernel(&self.samples, self.sigma, x.coords()))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sigma must be finite and non-negative, got {sigma}"
        )));
    }
    Ok(())
}

/// McShane (lower) extension at `x`, whatever side the spec carries.
pub fn mcshane_extend(spec: &ExtensionSpec, x: &Point) -> Result<f64> {
    spec.lower(x)
}

/// Whitney (upper) extension at `x`, whatever side the spec carries.
pub fn whitney_extend(spec: &ExtensionSpec, x: &Point) -> Result<f64> {
    spec.upper(x)
}

/// Evaluates the spec's side at every query, in order.
pub fn extend_batch(spec: &ExtensionSpec, queries: &[Point]) -> Result<Vec<f64>> {
    for q in queries {
        spec.metric().check_dim(q)?;
    }
    Ok(queries.iter().map(|q| spec.eval_unchecked(q.coords())).collect())
}

/// `d(x, A)`, the distance from `x` to the sample points.
pub fn dist_to_set(samples: &SampleSet, x: &Point) -> Result<f64> {
    samples.metric().check_dim(x)?;
    let kind = samples.metric().kind;
    Ok(samples
        .points()
        .iter()
        .map(|a| kind.eval(x.coords(), a.coords()))
        .fold(f64::INFINITY, f64::min))
}

/// Worst violations of the sum inequalities over a query set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumBoundReport {
    /// `max (g1+g2)_lo - (g1_lo + g2_lo)`, clipped at zero.
    pub lower_violation: f64,
    /// `max (g1_hi + g2_hi) - (g1+g2)_hi`, clipped at zero.
    pub upper_violation: f64,
    pub queries: usize,
}

impl SumBoundReport {
    pub fn max_violation(&self) -> f64 {
        self.lower_violation.max(self.upper_violation)
    }
}

fn same_points(a: &SampleSet, b: &SampleSet) -> bool {
    a.metric() == b.metric() && a.points() == b.points()
}

/// Checks `(g1+g2)_lo <= g1_lo + g2_lo` and `(g1+g2)_hi >= g1_hi + g2_hi`,
/// where the sum is extended with `sigma1 + sigma2`.
pub fn extension_sum_bound_check(g1: &ExtensionSpec, g2: &ExtensionSpec, queries: &[Point]) -> Result<SumBoundReport> {
    if !same_points(g1.samples(), g2.samples()) {
        return Err(Error::PointSetMismatch);
    }
    let summed: Vec<f64> = g1
        .samples()
        .values()
        .iter()
        .zip(g2.samples().values())
        .map(|(a, b)| a + b)
        .collect();
    let sum = ExtensionSpec {
        samples: g1.samples().with_values(summed)?,
        sigma: g1.sigma + g2.sigma,
        side: Side::Lower,
    };
    let mut lower_violation: f64 = 0.0;
    let mut upper_violation: f64 = 0.0;
    for q in queries {
        let lo = sum.lower(q)? - (g1.lower(q)? + g2.lower(q)?);
        let hi = (g1.upper(q)? + g2.upper(q)?) - sum.upper(q)?;
        lower_violation = lower_violation.max(lo);
        upper_violation = upper_violation.max(hi);
    }
    Ok(SumBoundReport {
        lower_violation,
        upper_violation,
        queries: queries.len(),
    })
}

/// The spec of `lambda * g` with constant `|lambda| sigma`.
///
/// For `lambda < 0` the side flips: `(lambda g)_lo = lambda * g_hi`.
pub fn scale_extension(spec: &ExtensionSpec, lambda: f64) -> Result<ExtensionSpec> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite scale {lambda}")));
    }
    let values = spec.samples.values().iter().map(|v| lambda * v).collect();
    let side = if lambda < 0.0 { spec.side.flipped() } else { spec.side };
    Ok(ExtensionSpec {
        samples: spec.samples.with_values(values)?,
        sigma: lambda.abs() * spec.sigma,
        side,
    })
}

/// Direct and staged evaluations for one side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StagedComparison {
    pub direct: Vec<f64>,
    pub staged: Vec<f64>,
}

impl StagedComparison {
    pub fn max_gap(&self) -> f64 {
        self.direct
            .iter()
            .zip(&self.staged)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepExtension {
    pub lower: StagedComparison,
    pub upper: StagedComparison,
}

impl StepExtension {
    pub fn max_gap(&self) -> f64 {
        self.lower.max_gap().max(self.upper.max_gap())
    }
}

/// Extends `A -> queries` directly and via an intermediate superset `B`.
///
/// The staged route first extends `A -> B`, then treats `B` with the extended
/// values as samples and extends again. Both routes must agree.
pub fn step_extend(samples_a: &SampleSet, points_b: &[Point], sigma: f64, queries: &[Point]) -> Result<StepExtension> {
    check_sigma(sigma)?;
    let metric = *samples_a.metric();
    for p in points_b.iter().chain(queries) {
        metric.check_dim(p)?;
    }
    for (i, a) in samples_a.points().iter().enumerate() {
        if !points_b.iter().any(|b| b == a) {
            return Err(Error::NotSuperset(i));
        }
    }
    let b_lower: Vec<f64> = points_b
        .iter()
        .map(|b| lower_kernel(samples_a, sigma, b.coords()))
        .collect();
    let b_upper: Vec<f64> = points_b
        .iter()
        .map(|b| upper_kernel(samples_a, sigma, b.coords()))
        .collect();
    let staged_lower_set = SampleSet::new(metric, points_b.to_vec(), b_lower)?;
    let staged_upper_set = SampleSet::new(metric, points_b.to_vec(), b_upper)?;

    let run = |f: &dyn Fn(&[f64]) -> f64| queries.iter().map(|q| f(q.coords())).collect();
    Ok(StepExtension {
        lower: StagedComparison {
            direct: run(&|q| lower_kernel(samples_a, sigma, q)),
            staged: run(&|q| lower_kernel(&staged_lower_set, sigma, q)),
        },
        upper: StagedComparison {
            direct: run(&|q| upper_kernel(samples_a, sigma, q)),
            staged: run(&|q| upper_kernel(&staged_upper_set, sigma, q)),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lipschitz::lipschitz_constant;

    fn pt(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn identity_pair() -> SampleSet {
        SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0)]).unwrap()
    }

    fn spec(side: Side) -> ExtensionSpec {
        ExtensionSpec::new(identity_pair(), 1.0, side, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn mcshane_examples() {
        let s = spec(Side::Lower);
        assert_eq!(mcshane_extend(&s, &pt(2.0)).unwrap(), 0.0);
        assert_eq!(mcshane_extend(&s, &pt(1.0)).unwrap(), 1.0);
        assert_eq!(mcshane_extend(&s, &pt(0.5)).unwrap(), 0.5);
    }

    #[test]
    fn whitney_examples() {
        let s = spec(Side::Upper);
        assert_eq!(whitney_extend(&s, &pt(2.0)).unwrap(), 2.0);
        assert_eq!(whitney_extend(&s, &pt(0.0)).unwrap(), 0.0);
        assert_eq!(whitney_extend(&s, &pt(0.5)).unwrap(), 0.5);
    }

    #[test]
    fn batch_examples() {
        let s = spec(Side::Lower);
        let out = extend_batch(&s, &[pt(2.0), pt(1.0), pt(0.5)]).unwrap();
        assert_eq!(out, vec![0.0, 1.0, 0.5]);
        assert!(extend_batch(&s, &[]).unwrap().is_empty());
        let mid = spec(Side::Midpoint);
        assert_eq!(extend_batch(&mid, &[pt(2.0)]).unwrap(), vec![1.0]);
    }

    #[test]
    fn batch_rejects_wrong_dimension() {
        let s = spec(Side::Lower);
        let q = Point::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(extend_batch(&s, &[q]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sigma_below_constant_rejected() {
        let sq = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap();
        match ExtensionSpec::new(sq.clone(), 2.0, Side::Lower, DEFAULT_TOL) {
            Err(Error::SigmaTooSmall { required, pair, .. }) => {
                assert_eq!(required, 3.0);
                assert_eq!(pair, (1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ExtensionSpec::new(sq, 3.0, Side::Lower, DEFAULT_TOL).is_ok());
        assert!(ExtensionSpec::new(identity_pair(), -1.0, Side::Lower, 0.0).is_err());
    }

    #[test]
    fn dist_to_set_examples() {
        let a = identity_pair();
        assert_eq!(dist_to_set(&a, &pt(3.0)).unwrap(), 2.0);
        assert_eq!(dist_to_set(&a, &pt(1.0)).unwrap(), 0.0);
        // constant r = 5 with sigma = 2: upper(3) = min(5 + 6, 5 + 4) = 9, (9 - 5) / 2 = 2
        let r = a.with_values(vec![5.0, 5.0]).unwrap();
        let up = ExtensionSpec::new(r, 2.0, Side::Upper, 0.0).unwrap();
        assert_eq!(up.upper(&pt(3.0)).unwrap(), 9.0);
        assert_eq!((up.upper(&pt(3.0)).unwrap() - 5.0) / 2.0, 2.0);
    }

    #[test]
    fn sum_bound_identity_pair() {
        let s = spec(Side::Lower);
        let rep = extension_sum_bound_check(&s, &s, &[pt(2.0)]).unwrap();
        assert_eq!(rep.max_violation(), 0.0);
        // (g+g)_lo(2) = max(0 - 4, 2 - 2) = 0
        let doubled = identity_pair().with_values(vec![0.0, 2.0]).unwrap();
        let d = ExtensionSpec::new(doubled, 2.0, Side::Lower, 0.0).unwrap();
        assert_eq!(d.lower(&pt(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let s = spec(Side::Lower);
        let zero = ExtensionSpec::new(
            identity_pair().with_values(vec![0.0, 0.0]).unwrap(),
            0.0,
            Side::Lower,
            0.0,
        )
        .unwrap();
        let qs: Vec<Point> = (-6..=6).map(|k| pt(k as f64 * 0.5)).collect();
        let rep = extension_sum_bound_check(&s, &zero, &qs).unwrap();
        assert!(rep.max_violation() <= 1e-12);
    }

    #[test]
    fn sum_bound_needs_same_points() {
        let s = spec(Side::Lower);
        let other = SampleSet::from_scalars(&[(0.0, 0.0), (2.0, 1.0)]).unwrap();
        let o = ExtensionSpec::new(other, 1.0, Side::Lower, 0.0).unwrap();
        assert_eq!(
            extension_sum_bound_check(&s, &o, &[]).unwrap_err(),
            Error::PointSetMismatch
        );
    }

    #[test]
    fn scale_examples() {
        let s = spec(Side::Lower);
        let twice = scale_extension(&s, 2.0).unwrap();
        assert_eq!(twice.sigma(), 2.0);
        assert_eq!(twice.eval(&pt(2.0)).unwrap(), 2.0 * s.eval(&pt(2.0)).unwrap());

        assert_eq!(scale_extension(&s, 1.0).unwrap(), s);

        let neg = scale_extension(&s, -1.0).unwrap();
        assert_eq!(neg.side(), Side::Upper);
        // (-g)_lo(2) = max(0 - 2, -1 - 1) = -2 = -(g_hi(2))
        assert_eq!(neg.lower(&pt(2.0)).unwrap(), -2.0);
        assert_eq!(neg.lower(&pt(2.0)).unwrap(), -s.upper(&pt(2.0)).unwrap());
        assert_eq!(neg.eval(&pt(2.0)).unwrap(), -s.eval(&pt(2.0)).unwrap());

        let zero = scale_extension(&s, 0.0).unwrap();
        assert_eq!(zero.sigma(), 0.0);
        assert_eq!(zero.eval(&pt(7.0)).unwrap(), 0.0);
    }

    #[test]
    fn step_extend_example() {
        let a = identity_pair();
        let b = vec![pt(0.0), pt(1.0), pt(1.5)];
        let r = step_extend(&a, &b, 1.0, &[pt(2.0)]).unwrap();
        assert_eq!(r.lower.direct, vec![0.0]);
        assert_eq!(r.lower.staged, vec![0.0]);
        assert_eq!(r.max_gap(), 0.0);
        let same = step_extend(&a, a.points(), 1.0, &[pt(-3.0), pt(4.0)]).unwrap();
        assert_eq!(same.max_gap(), 0.0);
    }

    #[test]
    fn step_extend_requires_superset() {
        let a = identity_pair();
        let b = vec![pt(0.0), pt(1.5)];
        assert_eq!(step_extend(&a, &b, 1.0, &[pt(2.0)]).unwrap_err(), Error::NotSuperset(1));
    }

    #[test]
    fn tight_uses_empirical_constant() {
        let sq = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap();
        let t = ExtensionSpec::tight(sq.clone(), Side::Upper).unwrap();
        assert_eq!(t.sigma(), lipschitz_constant(&sq).unwrap().max_ratio);
        let single = SampleSet::from_scalars(&[(1.0, 2.0)]).unwrap();
        assert_eq!(ExtensionSpec::tight(single, Side::Lower).unwrap().sigma(), 0.0);
    }
}
