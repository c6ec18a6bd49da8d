//! Entanglement detection for the dense-coding states: the success
//! probability condition, the magnetization-based witness function F with
//! its observables W₁ and W₂, the conventional projector witness, and the
//! partial-transpose cross-check.

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigensystem, kron, partial_transpose, ComplexMatrix4, DensityMatrix4, Subsystem,
};
use crate::protocol::{
    gate, magnetization_expectations, pauli_i, pauli_x, pauli_y, pauli_z, run_protocol, Gate,
    Message, ThermalConfig,
};

/// Everything one protocol run says about entanglement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessReport {
    /// ⟨W₁⟩ = ⟨Z_I⟩ on the decoded state.
    pub w1: f64,
    /// ⟨W₂⟩ = ⟨Z_S⟩ on the decoded state.
    pub w2: f64,
    /// F = 1/2 − (1+|⟨W₁⟩|)(1+|⟨W₂⟩|)/4; negative exactly on entangled runs.
    pub f_value: f64,
    /// Success probability p_I p_S of decoding inside a single molecule.
    pub success_prob: f64,
    /// Minimum eigenvalue of the partial transpose of the encoded state.
    pub min_pt_eigenvalue: f64,
    pub entangled: bool,
}

/// Single-molecule success probability p_I p_S. Dense coding beats one bit
/// of classical communication plus a coin flip exactly when this exceeds 1/2.
pub fn success_probability(cfg: &ThermalConfig) -> Result<f64> {
    let (eps_i, eps_s) = cfg.polarizations()?;
    Ok(((1.0 + eps_i) / 2.0) * ((1.0 + eps_s) / 2.0))
}

/// Slack accepted on |⟨Z⟩| ≤ 1 before rejecting; expectation values computed
/// from traces carry rounding at this scale.
const EXPECTATION_SLACK: f64 = 1e-9;

/// F(⟨Z_I⟩, ⟨Z_S⟩) = 1/2 − (1 + |⟨Z_I⟩|)(1 + |⟨Z_S⟩|)/4.
///
/// Absolute values make the same formula cover all four messages.
pub fn witness_f(z_i: f64, z_s: f64) -> Result<f64> {
    for (name, v) in [("z_i", z_i), ("z_s", z_s)] {
        if !v.is_finite() || v.abs() > 1.0 + EXPECTATION_SLACK {
            return Err(Error::OutOfRange {
                name,
                value: v,
                min: -1.0,
                max: 1.0,
            });
        }
    }
    let a = z_i.abs().min(1.0);
    let b = z_s.abs().min(1.0);
    Ok(0.5 - (1.0 + a) * (1.0 + b) / 4.0)
}

/// The two simultaneously measurable witness observables, obtained by
/// pulling the magnetizations back through the disentangler:
/// W₁ = U_Bell† (Z⊗I) U_Bell and W₂ = U_Bell† (I⊗Z) U_Bell.
///
/// These evaluate to X⊗X and Z⊗Z; the conjugated form is returned so tests
/// can verify the identity rather than assume it.
pub fn observables_w1_w2() -> (ComplexMatrix4, ComplexMatrix4) {
    let u_bell = gate(Gate::BellMeasure);
    let w1 = kron(&pauli_z(), &pauli_i()).conjugate_by(&u_bell.adjoint());
    let w2 = kron(&pauli_i(), &pauli_z()).conjugate_by(&u_bell.adjoint());
    (w1, w2)
}

/// The conventional entanglement witness for the Bell state carrying
/// message (z, x):
/// W = (I⊗I + (−1)^z̄ X⊗X + (−1)^z̄(−1)^x̄ Y⊗Y + (−1)^x̄ Z⊗Z)/4.
pub fn conventional_witness(m: Message) -> ComplexMatrix4 {
    let sz = -m.sign_z(); // (−1)^z̄
    let sx = -m.sign_x(); // (−1)^x̄
    let ii = kron(&pauli_i(), &pauli_i());
    let xx = kron(&pauli_x(), &pauli_x());
    let yy = kron(&pauli_y(), &pauli_y());
    let zz = kron(&pauli_z(), &pauli_z());
    ii.add(&xx.scale_re(sz))
        .add(&yy.scale_re(sz * sx))
        .add(&zz.scale_re(sx))
        .scale_re(0.25)
}

/// Minimum eigenvalue of the partial transpose (taken on spin S).
///
/// Negative iff the state is entangled; for two qubits this criterion is
/// exact, and the spectrum does not depend on which side is transposed.
pub fn negativity_check(rho: &DensityMatrix4) -> f64 {
    let pt = partial_transpose(rho, Subsystem::S);
    hermitian_eigensystem(&pt)
        .expect("partial transpose of a Hermitian matrix is Hermitian")
        .eigenvalues[0]
}

/// Run the protocol and evaluate every witness quantity on the outcome.
pub fn evaluate(cfg: &ThermalConfig, m: Message) -> Result<WitnessReport> {
    let trace = run_protocol(cfg, m)?;
    let (w1, w2) = magnetization_expectations(&trace.rho3);
    let f_value = witness_f(w1, w2)?;
    Ok(WitnessReport {
        w1,
        w2,
        f_value,
        success_prob: trace.p_i * trace.p_s,
        min_pt_eigenvalue: negativity_check(&trace.rho2),
        entangled: f_value < 0.0,
    })
}

/// F along the symmetric diagonal ε_I = ε_S = ε.
fn f_symmetric(eps: f64) -> f64 {
    0.5 - (1.0 + eps) * (1.0 + eps) / 4.0
}

/// Polarization at which F crosses zero for ε_I = ε_S, found by bisection
/// on the closed form. Analytically √2 − 1.
pub fn symmetric_threshold() -> f64 {
    bisect(f_symmetric, 0.0, 1.0)
}

/// For a fixed ε_I, the ε_S at which F crosses zero, or `None` when no
/// crossing exists inside [0, 1].
pub fn f_zero_eps_s(eps_i: f64) -> Option<f64> {
    let f = |eps_s: f64| 0.5 - (1.0 + eps_i) * (1.0 + eps_s) / 4.0;
    if !(0.0..=1.0).contains(&eps_i) || f(0.0) < 0.0 || f(1.0) > 0.0 {
        return None;
    }
    Some(bisect(f, 0.0, 1.0))
}

/// Bisection for a decreasing function with f(lo) ≥ 0 ≥ f(hi); runs to
/// floating-point exhaustion.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
