//! Instance generators shared by the benchmarks.

use lipext_core::suite::{line_in_plane_problem, random_instance, Instance};
use lipext_core::{MetricKind, SubspaceProblem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A seeded random Lipschitz sample of `n` points in `[-5, 5]^dim`.
pub fn instance(dim: usize, n: usize, queries: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, dim, n, queries, MetricKind::Euclidean).expect("valid instance")
}

/// `span{e1}` in the Euclidean plane with `g(t e1) = t`.
pub fn line_problem() -> SubspaceProblem {
    line_in_plane_problem().expect("valid problem")
}
