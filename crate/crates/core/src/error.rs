//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building states, observables, or
/// statistics. Each variant names the violated invariant and carries the
/// measured residual or the offending value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix that must be Hermitian is not.
    #[error("matrix is not Hermitian: max |A - A†| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    /// A density matrix whose trace differs from one.
    #[error("density matrix trace is {trace} (|trace - 1| = {residual:.3e})")]
    TraceNotOne { trace: f64, residual: f64 },

    /// A density matrix with a negative eigenvalue beyond tolerance.
    #[error("density matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// A matrix that must be unitary is not.
    #[error("matrix is not unitary: max |U†U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    /// A scalar argument outside its admissible interval.
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Physically meaningless input (non-positive temperature, field, ...).
    #[error("non-physical parameter: {0}")]
    NonPhysical(String),

    /// A count above the supported range of an exact algorithm.
    #[error("{name} = {value} exceeds the supported maximum {max}")]
    TooLarge {
        name: &'static str,
        value: u64,
        max: u64,
    },
}
