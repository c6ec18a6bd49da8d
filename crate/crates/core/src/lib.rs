//! Simulation and analysis of superdense coding over weakly polarized
//! two-spin ensembles.
//!
//! The crate models the full pipeline of a magnetization-readout dense
//! coding experiment on mixed states:
//!
//! - [`linalg`]: fixed-size complex matrices, a Hermitian eigensolver,
//!   tensor products, and partial transposition.
//! - [`protocol`]: thermal initial states, the gate set, and the
//!   entangle → encode → disentangle evolution.
//! - [`ensemble`]: magnetization measurement over n molecules as binomial
//!   statistics, with log-domain error probabilities and a seeded sampler.
//! - [`witness`]: the success-probability threshold, the witness function F
//!   with its simultaneously measurable observables, and the
//!   partial-transpose cross-check.
//! - [`decomposition`]: expressing the conventional witness as a rotated
//!   combination of spin magnetizations measurable in a single run.
//! - [`hardware`]: spectrometer signal and Nyquist noise amplitudes and the
//!   molecule-count detectability bound.
//!
//! All computations are pure functions over immutable values and are safe
//! to call concurrently. Randomized routines take explicit seeds and are
//! bit-reproducible.

pub mod constants;
pub mod decomposition;
pub mod ensemble;
pub mod error;
pub mod hardware;
pub mod linalg;
pub mod protocol;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigensystem, kron, partial_transpose, validate_density, ComplexMatrix2,
    ComplexMatrix4, ComplexVector4, DensityMatrix4, EigenSystem4, Subsystem,
};
pub use protocol::{
    bell_state, encoder, gate, magnetization_expectations, occupation_probs, run_protocol,
    thermal_polarization, thermal_state, Gate, Message, ProtocolTrace, ThermalConfig,
};
