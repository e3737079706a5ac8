//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("the ambient dimension must satisfy n >= 2 (got n = {n})")]
    InvalidDimension { n: usize },

    #[error("vectors belong to different algebra contexts (n = {left} vs n = {right})")]
    ContextMismatch { left: usize, right: usize },

    #[error("matrix is not an element of su(1,n): {0}")]
    NotInAmbientAlgebra(String),

    #[error("vector has components outside the parabolic subalgebra k0 + a + n")]
    OutsideParabolic,

    #[error("argument lies outside the required subspace: {0}")]
    Domain(String),

    #[error("generators do not close under the bracket: [g{i}, g{j}] leaves the span")]
    NotClosed { i: usize, j: usize },

    #[error("operation requires a subalgebra of a + n, but a k0-component is present")]
    UnsupportedDomain,

    #[error("subspace is not totally real: <J w{i}, w{j}> = {value} != 0")]
    NotTotallyReal { i: usize, j: usize, value: String },

    #[error("constructor rejected its input: {0}")]
    Constructor(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
