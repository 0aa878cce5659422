//! Empirical Lipschitz analysis of finite samples.
//!
//! On a finite set the supremum of the difference quotients is a maximum, so
//! the least admissible constant is read off directly from all pairs. The set
//! of admissible constants is `[max_ratio, inf)` and the set of lower
//! constants is `[0, min_ratio]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::SampleSet;

/// Summary of the pairwise difference quotients `|g(x) - g(y)| / d(x, y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    /// The Lipschitz constant of the samples.
    pub max_ratio: f64,
    pub min_ratio: f64,
    /// Lowest index pair attaining `max_ratio`.
    pub argmax_pair: (usize, usize),
    /// Number of pairs at positive distance.
    pub pair_count: usize,
}

impl RatioReport {
    /// Whether `sigma` is an admissible Lipschitz constant for the samples.
    pub fn admits(&self, sigma: f64) -> bool {
        sigma >= self.max_ratio
    }
}

/// Difference quotient of samples `i` and `j`.
pub fn pairwise_ratio(samples: &SampleSet, i: usize, j: usize) -> Result<f64> {
    let n = samples.len();
    if i >= n || j >= n {
        return Err(Error::InvalidParameter(format!(
            "pair ({i}, {j}) out of range for {n} samples"
        )));
    }
    let d = samples.pair_distance(i, j);
    if d == 0.0 {
        return Err(Error::ZeroDistance(i, j));
    }
    let v = samples.values();
    Ok((v[i] - v[j]).abs() / d)
}

/// Brute-force scan of every pair.
///
/// Pairs at distance exactly zero with equal values (duplicated rows) are
/// skipped.
pub fn lipschitz_constant(samples: &SampleSet) -> Result<RatioReport> {
    let n = samples.len();
    let values = samples.values();
    let mut max_ratio = f64::NEG_INFINITY;
    let mut min_ratio = f64::INFINITY;
    let mut argmax_pair = (0, 0);
    let mut pair_count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = samples.pair_distance(i, j);
            let gap = (values[i] - values[j]).abs();
            if d == 0.0 {
                if gap != 0.0 {
                    return Err(Error::Conflict(crate::metric::dedup_check(samples, 0.0)));
                }
                continue;
            }
            pair_count += 1;
            let r = gap / d;
            if r > max_ratio {
                max_ratio = r;
                argmax_pair = (i, j);
            }
            min_ratio = min_ratio.min(r);
        }
    }
    if pair_count == 0 {
        return Err(Error::NoDistinctPairs);
    }
    Ok(RatioReport {
        max_ratio,
        min_ratio,
        argmax_pair,
        pair_count,
    })
}

/// True iff every pair satisfies `|dg| <= sigma * d + tol`.
pub fn is_lipschitz(samples: &SampleSet, sigma: f64, tol: f64) -> bool {
    first_violation(samples, sigma, tol).is_none()
}

/// First pair (in index order) breaking the `sigma` bound, if any.
pub(crate) fn first_violation(samples: &SampleSet, sigma: f64, tol: f64) -> Option<(usize, usize)> {
    let n = samples.len();
    let values = samples.values();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = samples.pair_distance(i, j);
            if (values[i] - values[j]).abs() > sigma * d + tol {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use crate::metric::{Metric, Point};

    fn line(pairs: &[(f64, f64)]) -> SampleSet {
        SampleSet::from_scalars(pairs).unwrap()
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(pairwise_ratio(&line(&[(0.0, 0.0), (1.0, 1.0)]), 0, 1).unwrap(), 1.0);
        assert_eq!(pairwise_ratio(&line(&[(0.0, 0.0), (2.0, 4.0)]), 0, 1).unwrap(), 2.0);
        assert_eq!(pairwise_ratio(&line(&[(0.0, 5.0), (1.0, 5.0)]), 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn pairwise_zero_distance() {
        let s = line(&[(0.0, 1.0), (0.0, 1.0)]);
        assert_eq!(pairwise_ratio(&s, 0, 1).unwrap_err(), Error::ZeroDistance(0, 1));
    }

    #[test]
    fn constant_of_square_samples() {
        // ratios: (0,1) -> 1, (0,2) -> 2, (1,2) -> 3
        let r = lipschitz_constant(&line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)])).unwrap();
        assert_eq!(r.max_ratio, 3.0);
        assert_eq!(r.min_ratio, 1.0);
        assert_eq!(r.argmax_pair, (1, 2));
        assert_eq!(r.pair_count, 3);
    }

    #[test]
    fn constant_samples_have_zero_constant() {
        let r = lipschitz_constant(&line(&[(0.0, 2.5), (1.0, 2.5), (5.0, 2.5)])).unwrap();
        assert_eq!(r.max_ratio, 0.0);
    }

    #[test]
    fn identity_samples() {
        let r = lipschitz_constant(&line(&[(0.0, 0.0), (1.0, 1.0)])).unwrap();
        assert_eq!((r.max_ratio, r.min_ratio), (1.0, 1.0));
    }

    #[test]
    fn duplicates_skipped_and_degenerate_rejected() {
        let r = lipschitz_constant(&line(&[(0.0, 0.0), (0.0, 0.0), (1.0, 2.0)])).unwrap();
        assert_eq!(r.pair_count, 2);
        assert_eq!(r.max_ratio, 2.0);
        assert_eq!(
            lipschitz_constant(&line(&[(3.0, 1.0)])).unwrap_err(),
            Error::NoDistinctPairs
        );
        assert_eq!(
            lipschitz_constant(&line(&[(3.0, 1.0), (3.0, 1.0)])).unwrap_err(),
            Error::NoDistinctPairs
        );
    }

    #[test]
    fn membership() {
        let id = line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert!(is_lipschitz(&id, 1.0, 0.0));
        let sq = line(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]);
        assert!(!is_lipschitz(&sq, 2.0, 0.0));
        assert!(is_lipschitz(&sq, 3.0, 0.0));
    }

    fn arb_samples() -> impl Strategy<Value = SampleSet> {
        (1usize..4, 2usize..12).prop_flat_map(|(dim, n)| {
            (
                prop::collection::vec(prop::collection::vec(-5.0f64..5.0, dim), n),
                prop::collection::vec(-10.0f64..10.0, n),
            )
                .prop_map(move |(pts, vals)| {
                    let pts = pts.into_iter().map(|c| Point::new(c).unwrap()).collect();
                    SampleSet::new(Metric::euclidean(dim), pts, vals).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn max_ratio_is_least_constant(s in arb_samples()) {
            let r = lipschitz_constant(&s).unwrap();
            prop_assert!(r.min_ratio <= r.max_ratio);
            prop_assert!(is_lipschitz(&s, r.max_ratio, 1e-12));
            if r.max_ratio > 0.0 {
                prop_assert!(!is_lipschitz(&s, r.max_ratio * (1.0 - 1e-6), 0.0));
            }
            // lower constants
            let v = s.values();
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    let d = s.pair_distance(i, j);
                    prop_assert!(r.min_ratio * d <= (v[i] - v[j]).abs() * (1.0 + 1e-12) + 1e-300);
                }
            }
        }

        #[test]
        fn permutation_invariant(s in arb_samples(), rot in 0usize..12) {
            let n = s.len();
            let k = rot % n;
            let mut pts = s.points().to_vec();
            let mut vals = s.values().to_vec();
            pts.rotate_left(k);
            vals.rotate_left(k);
            let t = SampleSet::new(*s.metric(), pts, vals).unwrap();
            let a = lipschitz_constant(&s).unwrap();
            let b = lipschitz_constant(&t).unwrap();
            prop_assert_eq!(a.max_ratio, b.max_ratio);
            prop_assert_eq!(a.min_ratio, b.min_ratio);
        }

        #[test]
        fn scaling_values_scales_constant(s in arb_samples(), lambda in -4.0f64..4.0) {
            let scaled = s.with_values(s.values().iter().map(|v| lambda * v).collect()).unwrap();
            let a = lipschitz_constant(&s).unwrap().max_ratio;
            let b = lipschitz_constant(&scaled).unwrap().max_ratio;
            prop_assert!((b - lambda.abs() * a).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }
}
