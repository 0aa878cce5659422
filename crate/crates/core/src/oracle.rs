//! Independent brute-force reference for the extension kernels.
//!
//! Shares nothing with [`crate::extension`] beyond the sample container:
//! distances are recomputed here from the raw coordinates with the textbook
//! formulas, and the loops are written out by hand.

use crate::error::{Error, Result};
use crate::metric::{MetricKind, Point, SampleSet};

fn textbook_distance(kind: MetricKind, x: &[f64], y: &[f64]) -> f64 {
    match kind {
        MetricKind::Euclidean => {
            let mut s = 0.0;
            for i in 0..x.len() {
                s += (x[i] - y[i]) * (x[i] - y[i]);
            }
            s.sqrt()
        }
        MetricKind::Manhattan => {
            let mut s = 0.0;
            for i in 0..x.len() {
                s += (x[i] - y[i]).abs();
            }
            s
        }
        MetricKind::Chebyshev => {
            let mut m = 0.0;
            for i in 0..x.len() {
                let d = (x[i] - y[i]).abs();
                if d > m {
                    m = d;
                }
            }
            m
        }
        MetricKind::PNorm { p } => {
            let mut s = 0.0;
            for i in 0..x.len() {
                s += (x[i] - y[i]).abs().powf(p);
            }
            s.powf(1.0 / p)
        }
        MetricKind::Discrete => {
            for i in 0..x.len() {
                if x[i] != y[i] {
                    return 1.0;
                }
            }
            0.0
        }
    }
}

fn check(samples: &SampleSet, x: &Point) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if x.dim() != samples.dim() {
        return Err(Error::DimensionMismatch {
            expected: samples.dim(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// Reference lower extension: `max_a g(a) - sigma d(x, a)`.
pub fn brute_force_extension_oracle(samples: &SampleSet, sigma: f64, x: &Point) -> Result<f64> {
    check(samples, x)?;
    let kind = samples.metric().kind;
    let pts = samples.points();
    let vals = samples.values();
    let mut best = vals[0] - sigma * textbook_distance(kind, x.coords(), pts[0].coords());
    for i in 1..pts.len() {
        let v = vals[i] - sigma * textbook_distance(kind, x.coords(), pts[i].coords());
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Reference upper extension: `min_a g(a) + sigma d(x, a)`.
pub fn brute_force_upper_oracle(samples: &SampleSet, sigma: f64, x: &Point) -> Result<f64> {
    check(samples, x)?;
    let kind = samples.metric().kind;
    let pts = samples.points();
    let vals = samples.values();
    let mut best = vals[0] + sigma * textbook_distance(kind, x.coords(), pts[0].coords());
    for i in 1..pts.len() {
        let v = vals[i] + sigma * textbook_distance(kind, x.coords(), pts[i].coords());
        if v < best {
            best = v;
        }
    }
    Ok(best)
}

/// Reference distance to the sample points.
pub fn brute_force_dist_to_set(samples: &SampleSet, x: &Point) -> Result<f64> {
    check(samples, x)?;
    let kind = samples.metric().kind;
    let mut best = f64::INFINITY;
    for a in samples.points() {
        let d = textbook_distance(kind, x.coords(), a.coords());
        if d < best {
            best = d;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_instance() {
        let a = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let x = Point::scalar(2.0).unwrap();
        assert_eq!(brute_force_extension_oracle(&a, 1.0, &x).unwrap(), 0.0);
        assert_eq!(brute_force_upper_oracle(&a, 1.0, &x).unwrap(), 2.0);
    }

    #[test]
    fn constant_samples_give_cone() {
        // g = c gives c - sigma d(x, A)
        let a = SampleSet::from_scalars(&[(0.0, 4.0), (1.0, 4.0), (3.0, 4.0)]).unwrap();
        for k in -10..=10 {
            let x = Point::scalar(k as f64 * 0.7).unwrap();
            let d = brute_force_dist_to_set(&a, &x).unwrap();
            assert_eq!(brute_force_extension_oracle(&a, 2.0, &x).unwrap(), 4.0 - 2.0 * d);
        }
    }

    #[test]
    fn dimension_checked() {
        let a = SampleSet::from_scalars(&[(0.0, 0.0)]).unwrap();
        let x = Point::new(vec![1.0, 2.0]).unwrap();
        assert!(brute_force_extension_oracle(&a, 1.0, &x).is_err());
    }
}
