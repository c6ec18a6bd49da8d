//! Physical constants pinned to CODATA 2018 values so that every numerical
//! result in this crate is bit-stable across builds.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant, J / K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Vacuum permeability, H / m.
pub const MU_0: f64 = 1.25663706212e-6;

/// Proton gyromagnetic ratio, rad s⁻¹ T⁻¹.
pub const PROTON_GAMMA: f64 = 2.6752218744e8;
