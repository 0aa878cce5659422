//! Lipschitz extension of real-valued functions on metric spaces.
//!
//! The McShane and Whitney kernels extend a function sampled on a finite set
//! to the whole space without increasing its Lipschitz constant. Around them
//! sit moduli of continuity, uniform approximation of continuous functions by
//! Lipschitz envelopes, and grid-based approximate extension from subspaces of
//! finite-dimensional normed spaces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod extension;
pub mod lipschitz;
pub mod metric;
pub mod modulus;
pub mod normed;
pub mod oracle;
pub mod suite;

pub use density::{
    builtin, density_sigma, lipschitz_approximate, sandwich_at, sandwich_at_samples, DensityApproximation,
    SandwichReport, UCFunction,
};
pub use error::{Error, Result};
pub use extension::{
    dist_to_set, extend_batch, extension_sum_bound_check, mcshane_extend, scale_extension, step_extend, whitney_extend,
    ExtensionSpec, Side, DEFAULT_TOL,
};
pub use lipschitz::{is_lipschitz, lipschitz_constant, pairwise_ratio, RatioReport};
pub use metric::{dedup_check, distance, DedupReport, Metric, MetricKind, Point, SampleSet};
pub use modulus::{is_nu_continuous, nu_extend_lower, nu_extend_upper, validate_modulus, Modulus, NuExtension};
pub use normed::{
    approx_extend, approx_mcshane, approx_whitney, hahn_banach_like, ApproxExtensionResult, GridOptions, Norm,
    NormedSpace, SubspaceFunction, SubspaceProblem,
};
pub use suite::{run_suite, CheckReport, Profile, SuiteConfig};
