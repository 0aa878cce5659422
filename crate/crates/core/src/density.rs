//! Lipschitz approximation of uniformly continuous functions.
//!
//! Given `f` with a modulus of uniform continuity `omega` and a bound
//! `|f| <= M`, the constant `sigma = 2 M / omega(eps)` makes the envelopes
//!
//! ```text
//! minorant(x) = min_y f(y) + sigma d(x, y)
//! majorant(x) = max_y f(y) - sigma d(x, y)
//! ```
//!
//! `sigma`-Lipschitz and squeezes them into `f - eps <= minorant <= f <=
//! majorant <= f + eps` on the sample. The minorant uses the upper
//! (Whitney) kernel and the majorant the lower (McShane) kernel: with data
//! that is not `sigma`-Lipschitz the two formulas land on the other side of
//! `f`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{ExtensionSpec, Side};
use crate::lipschitz::is_lipschitz;
use crate::metric::{Metric, Point, SampleSet};

type Evaluator = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;
type ModulusFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A black-box uniformly continuous function with its modulus and bound.
#[derive(Clone)]
pub struct UCFunction {
    evaluator: Evaluator,
    omega: ModulusFn,
    bound: f64,
}

impl fmt::Debug for UCFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UCFunction")
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

impl UCFunction {
    pub fn new<F, W>(evaluator: F, omega: W, bound: f64) -> Result<Self>
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
        W: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(bound > 0.0) || !bound.is_finite() {
            return Err(Error::InvalidParameter(format!("bound must be positive, got {bound}")));
        }
        Ok(Self {
            evaluator: Arc::new(evaluator),
            omega: Arc::new(omega),
            bound,
        })
    }

    pub fn eval(&self, x: &Point) -> f64 {
        (self.evaluator)(x)
    }

    /// `omega(eps)`, checked to be positive.
    pub fn omega(&self, eps: f64) -> Result<f64> {
        let d = (self.omega)(eps);
        if !(d > 0.0) || d.is_nan() {
            return Err(Error::InvalidParameter(format!("omega({eps}) = {d} is not positive")));
        }
        Ok(d)
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

/// Built-in functions on `[0, 1]` with known moduli and bounds.
///
/// Names: `sqrt`, `abs`, `sin`, `const:C`, `poly:c0,c1,...` (coefficients
/// of increasing degree).
pub fn builtin(name: &str) -> Result<UCFunction> {
    let first = |p: &Point| p.coords()[0];
    match name {
        "sqrt" => UCFunction::new(move |p| first(p).max(0.0).sqrt(), |e| e * e, 1.0),
        "abs" => UCFunction::new(move |p| first(p).abs(), |e| e, 1.0),
        "sin" => UCFunction::new(move |p| first(p).sin(), |e| e, 1.0),
        _ => {
            if let Some(c) = name.strip_prefix("const:") {
                let c: f64 = c
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad constant in '{name}'")))?;
                return polynomial(vec![c]);
            }
            let coeffs = name
                .strip_prefix("poly:")
                .ok_or_else(|| Error::InvalidParameter(format!("unknown function '{name}'")))?
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad coefficient in '{name}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            polynomial(coeffs)
        }
    }
}

/// Polynomial on `[0, 1]`: bound `sum |c_k|`, modulus `eps / sum |k c_k|`.
fn polynomial(coeffs: Vec<f64>) -> Result<UCFunction> {
    if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("polynomial needs finite coefficients".into()));
    }
    let bound = coeffs.iter().map(|c| c.abs()).sum::<f64>();
    let slope: f64 = coeffs.iter().enumerate().map(|(k, c)| k as f64 * c.abs()).sum();
    let bound = if bound > 0.0 { bound } else { 1.0 };
    UCFunction::new(
        move |p| coeffs.iter().rev().fold(0.0, |acc, c| acc * p.coords()[0] + c),
        move |e| if slope > 0.0 { e / slope } else { 1.0 },
        bound,
    )
}

/// `2 M / omega(eps)`.
pub fn density_sigma(f: &UCFunction, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(2.0 * f.bound() / f.omega(epsilon)?)
}

/// The two Lipschitz envelopes around `f` on a finite sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityApproximation {
    pub epsilon: f64,
    pub sigma: f64,
    /// Below `f`; evaluates the upper kernel.
    pub minorant: ExtensionSpec,
    /// Above `f`; evaluates the lower kernel.
    pub majorant: ExtensionSpec,
}

impl DensityApproximation {
    pub fn samples(&self) -> &SampleSet {
        self.minorant.samples()
    }

    pub fn minorant_at(&self, x: &Point) -> Result<f64> {
        self.minorant.eval(x)
    }

    pub fn majorant_at(&self, x: &Point) -> Result<f64> {
        self.majorant.eval(x)
    }

    pub fn midpoint_at(&self, x: &Point) -> Result<f64> {
        Ok(0.5 * (self.minorant_at(x)? + self.majorant_at(x)?))
    }
}

/// Samples `f` on `points` and builds the minorant/majorant pair.
pub fn lipschitz_approximate(
    f: &UCFunction,
    points: &[Point],
    metric: Metric,
    epsilon: f64,
) -> Result<DensityApproximation> {
    if points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let sigma = density_sigma(f, epsilon)?;
    let mut values = Vec::with_capacity(points.len());
    for (index, p) in points.iter().enumerate() {
        metric.check_dim(p)?;
        let value = f.eval(p);
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("f at sample {index}")));
        }
        if value.abs() > f.bound() {
            return Err(Error::BoundViolated {
                index,
                value,
                bound: f.bound(),
            });
        }
        values.push(value);
    }
    let samples = SampleSet::new(metric, points.to_vec(), values)?;
    Ok(DensityApproximation {
        epsilon,
        sigma,
        minorant: ExtensionSpec::envelope(samples.clone(), sigma, Side::Upper)?,
        majorant: ExtensionSpec::envelope(samples, sigma, Side::Lower)?,
    })
}

/// Worst-case sandwich margins over a set of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub points: usize,
    /// `max (f - minorant)`; at most `eps` when the sandwich holds.
    pub max_below: f64,
    /// `max (majorant - f)`; at most `eps` when the sandwich holds.
    pub max_above: f64,
    /// Largest breach of any of the four inequalities, clipped at zero.
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set for points off the sample, where the sandwich is not guaranteed.
    pub heuristic: bool,
}

fn sandwich_over(
    approx: &DensityApproximation,
    f: &UCFunction,
    points: &[Point],
    tol: f64,
    heuristic: bool,
) -> Result<SandwichReport> {
    let eps = approx.epsilon;
    let mut max_below = f64::NEG_INFINITY;
    let mut max_above = f64::NEG_INFINITY;
    let mut max_violation: f64 = 0.0;
    for x in points {
        let fx = f.eval(x);
        let lo = approx.minorant_at(x)?;
        let hi = approx.majorant_at(x)?;
        max_below = max_below.max(fx - lo);
        max_above = max_above.max(hi - fx);
        for breach in [(fx - eps) - lo, lo - fx, fx - hi, hi - (fx + eps)] {
            max_violation = max_violation.max(breach);
        }
    }
    Ok(SandwichReport {
        points: points.len(),
        max_below,
        max_above,
        max_violation,
        tolerance: tol,
        passed: max_violation <= tol,
        heuristic,
    })
}

/// `f - eps <= minorant <= f <= majorant <= f + eps` at every sample point.
pub fn sandwich_at_samples(approx: &DensityApproximation, f: &UCFunction, tol: f64) -> Result<SandwichReport> {
    sandwich_over(approx, f, approx.samples().points(), tol, false)
}

/// The same inequalities at points off the sample. Not guaranteed; the
/// report is flagged heuristic.
pub fn sandwich_at(
    approx: &DensityApproximation,
    f: &UCFunction,
    points: &[Point],
    tol: f64,
) -> Result<SandwichReport> {
    sandwich_over(approx, f, points, tol, true)
}

/// Random convex combinations of pairs of sample points.
pub fn hull_validation_points(points: &[Point], count: usize, seed: u64) -> Vec<Point> {
    if points.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = &points[rng.gen_range(0..points.len())];
            let b = &points[rng.gen_range(0..points.len())];
            let t: f64 = rng.gen();
            let coords = a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| t * x + (1.0 - t) * y)
                .collect();
            Point::new(coords).expect("convex combination of finite points is finite")
        })
        .collect()
}

/// Result of testing candidate Lipschitz functions against the envelopes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalityReport {
    /// Candidates below `f` on the sample.
    pub lower_candidates: usize,
    /// Candidates above `f` on the sample.
    pub upper_candidates: usize,
    /// `max (e - minorant)` over lower candidates and `max (majorant - e)`
    /// over upper ones, clipped at zero.
    pub max_violation: f64,
    pub passed: bool,
}

/// Every `sigma`-Lipschitz `e <= f` lies below the minorant; every
/// `sigma`-Lipschitz `e >= f` lies above the majorant.
pub fn extremality_check(
    approx: &DensityApproximation,
    candidates: &[ExtensionSpec],
    tol: f64,
) -> Result<ExtremalityReport> {
    let samples = approx.samples();
    let mino: Vec<f64> = samples
        .points()
        .iter()
        .map(|x| approx.minorant_at(x))
        .collect::<Result<_>>()?;
    let majo: Vec<f64> = samples
        .points()
        .iter()
        .map(|x| approx.majorant_at(x))
        .collect::<Result<_>>()?;
    let mut report = ExtremalityReport {
        lower_candidates: 0,
        upper_candidates: 0,
        max_violation: 0.0,
        passed: true,
    };
    for cand in candidates {
        let e: Vec<f64> = samples.points().iter().map(|x| cand.eval(x)).collect::<Result<_>>()?;
        let on_samples = samples.with_values(e.clone())?;
        if !is_lipschitz(&on_samples, approx.sigma, tol) {
            return Err(Error::InvalidParameter(format!(
                "candidate is not {}-Lipschitz on the sample",
                approx.sigma
            )));
        }
        let f = samples.values();
        if e.iter().zip(f).all(|(ei, fi)| *ei <= fi + tol) {
            report.lower_candidates += 1;
            for (ei, mi) in e.iter().zip(&mino) {
                report.max_violation = report.max_violation.max(ei - mi);
            }
        }
        if e.iter().zip(f).all(|(ei, fi)| *ei >= fi - tol) {
            report.upper_candidates += 1;
            for (ei, mi) in e.iter().zip(&majo) {
                report.max_violation = report.max_violation.max(mi - ei);
            }
        }
    }
    report.passed = report.max_violation <= tol;
    Ok(report)
}

/// Empirical modulus of uniform continuity read off the samples: the largest
/// pair distance below the closest pair whose values differ by more than
/// `eps`.
///
/// Not certified: it only reflects the sampled pairs.
pub fn empirical_omega(samples: &SampleSet, eps: f64) -> Option<f64> {
    let n = samples.len();
    let v = samples.values();
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((samples.pair_distance(i, j), (v[i] - v[j]).abs()));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = None;
    for (d, gap) in pairs {
        if gap > eps {
            break;
        }
        if d > 0.0 {
            best = Some(d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Vec<Point> {
        (0..n)
            .map(|k| Point::scalar(k as f64 / (n - 1) as f64).unwrap())
            .collect()
    }

    #[test]
    fn sigma_examples() {
        let sq = UCFunction::new(|_| 0.0, |e| e * e, 1.0).unwrap();
        assert_eq!(density_sigma(&sq, 0.5).unwrap(), 8.0);
        let lin = UCFunction::new(|_| 0.0, |e| e, 1.0).unwrap();
        assert_eq!(density_sigma(&lin, 2.0).unwrap(), 1.0);
        let lin2 = UCFunction::new(|_| 0.0, |e| e, 2.0).unwrap();
        assert_eq!(density_sigma(&lin2, 2.0).unwrap(), 2.0);
        assert!(density_sigma(&lin, 0.0).is_err());
        assert!(density_sigma(&lin, -1.0).is_err());
    }

    #[test]
    fn constant_function_envelopes_are_flat() {
        let f = builtin("const:0.25").unwrap();
        let a = lipschitz_approximate(&f, &grid(11), Metric::euclidean(1), 0.1).unwrap();
        for x in grid(11) {
            assert_eq!(a.minorant_at(&x).unwrap(), 0.25);
            assert_eq!(a.majorant_at(&x).unwrap(), 0.25);
        }
    }

    #[test]
    fn sqrt_sandwich_on_grid() {
        let f = builtin("sqrt").unwrap();
        let a = lipschitz_approximate(&f, &grid(201), Metric::euclidean(1), 0.3).unwrap();
        assert!((a.sigma - 2.0 / 0.09).abs() < 1e-12);
        let r = sandwich_at_samples(&a, &f, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_below <= 0.3 && r.max_above <= 0.3);
    }

    #[test]
    fn lipschitz_input_is_reproduced() {
        // sin is 1-Lipschitz and sigma = 2 / eps >= 1
        let f = builtin("sin").unwrap();
        let pts = grid(51);
        let a = lipschitz_approximate(&f, &pts, Metric::euclidean(1), 0.5).unwrap();
        for p in &pts {
            assert_eq!(a.minorant_at(p).unwrap(), f.eval(p));
            assert_eq!(a.majorant_at(p).unwrap(), f.eval(p));
        }
    }

    #[test]
    fn bound_violation_aborts() {
        let f = UCFunction::new(|p| 3.0 * p.coords()[0], |e| e / 3.0, 1.0).unwrap();
        match lipschitz_approximate(&f, &grid(5), Metric::euclidean(1), 0.1) {
            Err(Error::BoundViolated { index, .. }) => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn extremality_with_shifted_envelopes() {
        let f = builtin("sqrt").unwrap();
        let pts = grid(41);
        let a = lipschitz_approximate(&f, &pts, Metric::euclidean(1), 0.2).unwrap();
        let shifted: Vec<f64> = pts.iter().map(|p| a.minorant_at(p).unwrap() - 0.2).collect();
        let set = a.samples().with_values(shifted).unwrap();
        let below = ExtensionSpec::new(set, a.sigma, Side::Lower, 1e-9).unwrap();
        let r = extremality_check(&a, &[below, a.minorant.clone(), a.majorant.clone()], 1e-9).unwrap();
        // sqrt is sigma-Lipschitz on this grid, so both envelopes equal f there
        assert_eq!(r.lower_candidates, 3);
        assert_eq!(r.upper_candidates, 2);
        assert!(r.passed);
    }

    #[test]
    fn builtin_table() {
        let x = Point::scalar(0.5).unwrap();
        assert_eq!(builtin("abs").unwrap().eval(&x), 0.5);
        let p = builtin("poly:1,2,3").unwrap();
        assert_eq!(p.eval(&x), 1.0 + 1.0 + 0.75);
        assert_eq!(p.bound(), 6.0);
        assert_eq!(p.omega(0.8).unwrap(), 0.1);
        assert!(builtin("tan").is_err());
        assert!(builtin("poly:1,x").is_err());
    }

    #[test]
    fn empirical_omega_on_identity() {
        let s = SampleSet::from_scalars(&[(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]).unwrap();
        assert_eq!(empirical_omega(&s, 0.6), Some(0.5));
        assert_eq!(empirical_omega(&s, 0.1), None);
    }
}
