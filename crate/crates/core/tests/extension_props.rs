use lipext_core::oracle::{brute_force_extension_oracle, brute_force_upper_oracle};
use lipext_core::{lipschitz_constant, ExtensionSpec, Metric, MetricKind, Point, SampleSet, Side};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = MetricKind> {
    prop_oneof![
        Just(MetricKind::Euclidean),
        Just(MetricKind::Manhattan),
        Just(MetricKind::Chebyshev),
        (1.0f64..6.0).prop_map(|p| MetricKind::PNorm { p }),
    ]
}

/// Points with arbitrary values and a sigma at or above their constant.
fn tight_instance() -> impl Strategy<Value = (SampleSet, f64, Vec<Point>)> {
    (1usize..4, kind()).prop_flat_map(|(dim, kind)| {
        let pts = prop::collection::vec(prop::collection::vec(-10.0f64..10.0, dim), 2..25);
        let queries = prop::collection::vec(prop::collection::vec(-12.0f64..12.0, dim), 1..10);
        (pts, queries, 0.0f64..2.0).prop_filter_map("coincident points", move |(pts, queries, extra)| {
            let vals: Vec<f64> = pts.iter().map(|p| p.iter().map(|c| c.sin() * 3.0).sum()).collect();
            let points: Vec<Point> = pts.into_iter().map(|c| Point::new(c).unwrap()).collect();
            let samples = SampleSet::new(Metric::new(kind, dim).unwrap(), points, vals).ok()?;
            let l = lipschitz_constant(&samples).ok()?.max_ratio;
            let queries = queries.into_iter().map(|c| Point::new(c).unwrap()).collect();
            Some((samples, l + extra, queries))
        })
    })
}

proptest! {
    #[test]
    fn kernels_match_reference((samples, sigma, queries) in tight_instance()) {
        let spec = ExtensionSpec::new(samples.clone(), sigma, Side::Lower, 1e-9).unwrap();
        for q in &queries {
            let lo = spec.lower(q).unwrap();
            let hi = spec.upper(q).unwrap();
            prop_assert!((lo - brute_force_extension_oracle(&samples, sigma, q).unwrap()).abs() <= 1e-12 * (1.0 + lo.abs()));
            prop_assert!((hi - brute_force_upper_oracle(&samples, sigma, q).unwrap()).abs() <= 1e-12 * (1.0 + hi.abs()));
            prop_assert!(lo <= hi + 1e-9);
        }
    }

    #[test]
    fn any_lipschitz_extension_lies_between((samples, sigma, queries) in tight_instance()) {
        // the midpoint is itself a sigma-Lipschitz extension
        let spec = ExtensionSpec::new(samples.clone(), sigma, Side::Midpoint, 1e-9).unwrap();
        for q in &queries {
            let m = spec.eval(q).unwrap();
            prop_assert!(spec.lower(q).unwrap() <= m + 1e-12 && m <= spec.upper(q).unwrap() + 1e-12);
        }
        for (a, g) in samples.iter() {
            prop_assert!((spec.eval(a).unwrap() - g).abs() <= 1e-9);
        }
    }

    #[test]
    fn larger_sigma_widens_the_gap((samples, sigma, queries) in tight_instance(), more in 0.0f64..3.0) {
        let tight = ExtensionSpec::new(samples.clone(), sigma, Side::Lower, 1e-9).unwrap();
        let loose = ExtensionSpec::new(samples, sigma + more, Side::Lower, 1e-9).unwrap();
        for q in &queries {
            prop_assert!(loose.lower(q).unwrap() <= tight.lower(q).unwrap() + 1e-12);
            prop_assert!(loose.upper(q).unwrap() >= tight.upper(q).unwrap() - 1e-12);
        }
    }
}
