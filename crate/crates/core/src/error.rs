use alloc::vec::Vec;

use crate::quaternion::PureQuaternion;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what}: argument {value} is outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// A quaternion matrix failed the self-duality check.
    #[error("matrix is not self-dual (max deviation {deviation:e}, tolerance {tolerance:e})")]
    NotSelfDual { deviation: f64, tolerance: f64 },
    /// The Moore expansion was asked for a matrix larger than configured.
    #[error("matrix size {size} exceeds the configured maximum {max}")]
    UnsupportedSize { size: usize, max: usize },
    /// Exact-coefficient evaluation requested beyond its supported degree.
    #[error("degree {n} exceeds the exact-coefficient range (max {max}); use the closed-form kernel instead")]
    ExactRange { n: usize, max: usize },
    /// A point configuration has the wrong number of points.
    #[error("configuration has {got} points but the kernel with n = {n} requires {expected}")]
    PointCount {
        n: usize,
        got: usize,
        expected: usize,
    },
    /// The sampler saw an acceptance ratio above one.
    #[error("rejection envelope violated: acceptance ratio {ratio} exceeds 1")]
    Envelope {
        ratio: f64,
        points: Vec<PureQuaternion>,
    },
    /// Some other documented precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        expected,
    }
}
