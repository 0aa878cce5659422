use thiserror::Error;

use crate::metric::DedupReport;

/// Errors raised by the extension machinery.
///
/// Variants are grouped by what went wrong with the caller's data so that
/// front ends can map them onto distinct exit statuses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate or value: {0}")]
    NonFinite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("need >= 2 distinct points")]
    NoDistinctPairs,

    #[error("points {0} and {1} coincide; the ratio is undefined")]
    ZeroDistance(usize, usize),

    #[error("conflicting values at coincident points: {0}")]
    Conflict(DedupReport),

    #[error(
        "sigma {sigma} is below the empirical constant {required} (pair {}, {})",
        pair.0,
        pair.1
    )]
    SigmaTooSmall {
        sigma: f64,
        required: f64,
        pair: (usize, usize),
    },

    #[error(
        "samples violate the modulus at pair ({}, {}): |dg| = {delta} > nu(d) = {bound}",
        pair.0,
        pair.1
    )]
    ModulusViolated {
        pair: (usize, usize),
        delta: f64,
        bound: f64,
    },

    #[error("|f| = {value} exceeds the declared bound {bound} at sample {index}")]
    BoundViolated { index: usize, value: f64, bound: f64 },

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("point {0} of the inner set is missing from the outer set")]
    NotSuperset(usize),

    #[error("extensions are defined over different point sets")]
    PointSetMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
