//! Error type shared by every module.
//!
//! Validation failures carry the violated quantity as `f64` so reports read
//! the same regardless of the scalar type in use.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is not supported (expected 2, 4 or 8)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("Kronecker product of dimensions {left} x {right} exceeds 8")]
    KronTooLarge { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |m - adjoint(m)| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace} instead of 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector norm is {norm}, not 1")]
    NotNormalized { norm: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("qubit index {qubit} is not in 1..={count}")]
    BadQubit { qubit: usize, count: usize },

    #[error("({a}, {b}) is not a pair of distinct qubits in 1..=3")]
    BadPair { a: usize, b: usize },

    #[error("Kraus operators do not resolve the identity: max deviation {deviation:e}")]
    IncompleteKraus { deviation: f64 },

    #[error("witness {0} requires a rotation angle")]
    MissingAngle(&'static str),

    #[error("witness {0} has no angle parameter to optimize")]
    NotParameterized(&'static str),

    #[error("family {family} does not support quantity {quantity}")]
    UnsupportedQuantity {
        family: &'static str,
        quantity: &'static str,
    },

    #[error("detector changed sign {sign_changes} times over the scan; no single threshold")]
    Oscillating { sign_changes: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
