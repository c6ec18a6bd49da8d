//! Thermal two-spin initial states, the dense-coding gate set, and the full
//! entangle → encode → disentangle state evolution.
//!
//! Basis order is fixed to |00⟩, |01⟩, |10⟩, |11⟩ with spin I as the left
//! (most significant) factor throughout the crate.

use num_complex::Complex64;

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix2, ComplexMatrix4, ComplexVector4, DensityMatrix4};

/// Two-bit classical message: `z` selects the phase bit, `x` the flip bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Message {
    pub z: bool,
    pub x: bool,
}

impl Message {
    pub fn new(z: bool, x: bool) -> Self {
        Self { z, x }
    }

    /// All four messages, ordered by [`Message::index`].
    pub fn all() -> [Message; 4] {
        [
            Message::new(false, false),
            Message::new(false, true),
            Message::new(true, false),
            Message::new(true, true),
        ]
    }

    /// Computational-basis index of |z x⟩ (also the diagonal slot the
    /// decoded state occupies).
    pub fn index(&self) -> usize {
        2 * usize::from(self.z) + usize::from(self.x)
    }

    /// (-1)^z
    pub fn sign_z(&self) -> f64 {
        if self.z {
            -1.0
        } else {
            1.0
        }
    }

    /// (-1)^x
    pub fn sign_x(&self) -> f64 {
        if self.x {
            -1.0
        } else {
            1.0
        }
    }
}

impl std::fmt::Display for Message {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", u8::from(self.z), u8::from(self.x))
    }
}

/// How the initial thermal state is specified: either the two polarizations
/// directly, or per-spin gyromagnetic ratios with field and temperature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThermalConfig {
    Direct {
        eps_i: f64,
        eps_s: f64,
    },
    Physical {
        /// rad s⁻¹ T⁻¹
        gamma_i: f64,
        /// rad s⁻¹ T⁻¹
        gamma_s: f64,
        /// tesla
        field: f64,
        /// kelvin
        temperature: f64,
    },
}

impl ThermalConfig {
    pub fn direct(eps_i: f64, eps_s: f64) -> Self {
        Self::Direct { eps_i, eps_s }
    }

    /// Resolve to the pair of polarizations (ε_I, ε_S).
    pub fn polarizations(&self) -> Result<(f64, f64)> {
        match *self {
            Self::Direct { eps_i, eps_s } => {
                check_polarization("eps_i", eps_i)?;
                check_polarization("eps_s", eps_s)?;
                Ok((eps_i, eps_s))
            }
            Self::Physical {
                gamma_i,
                gamma_s,
                field,
                temperature,
            } => {
                if field <= 0.0 {
                    return Err(Error::NonPhysical(format!(
                        "static field must be positive, got {field} T"
                    )));
                }
                Ok((
                    thermal_polarization(gamma_i, field, temperature)?,
                    thermal_polarization(gamma_s, field, temperature)?,
                ))
            }
        }
    }
}

fn check_polarization(name: &'static str, eps: f64) -> Result<()> {
    if !eps.is_finite() || eps.abs() > 1.0 {
        return Err(Error::OutOfRange {
            name,
            value: eps,
            min: -1.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Thermal equilibrium polarization ε = tanh(γħB₀ / 2k_BT).
///
/// The sign is fixed so that a positive gyromagnetic ratio yields a positive
/// polarization; downstream statistics all treat ε as the positive signal
/// scale, with the message signs carried explicitly.
pub fn thermal_polarization(gamma: f64, field: f64, temperature: f64) -> Result<f64> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(Error::NonPhysical(format!(
            "temperature must be positive, got {temperature} K"
        )));
    }
    Ok((gamma * HBAR * field / (2.0 * BOLTZMANN * temperature)).tanh())
}

/// Occupation probabilities p = (1+ε)/2, q = (1−ε)/2 of |0⟩ and |1⟩.
pub fn occupation_probs(epsilon: f64) -> Result<(f64, f64)> {
    check_polarization("epsilon", epsilon)?;
    Ok(((1.0 + epsilon) / 2.0, (1.0 - epsilon) / 2.0))
}

/// The diagonal thermal product state diag(p_I p_S, p_I q_S, q_I p_S, q_I q_S).
pub fn thermal_state(cfg: &ThermalConfig) -> Result<DensityMatrix4> {
    let (eps_i, eps_s) = cfg.polarizations()?;
    let (p_i, q_i) = occupation_probs(eps_i)?;
    let (p_s, q_s) = occupation_probs(eps_s)?;
    DensityMatrix4::new(ComplexMatrix4::from_diagonal([
        p_i * p_s,
        p_i * q_s,
        q_i * p_s,
        q_i * q_s,
    ]))
}

pub fn pauli_i() -> ComplexMatrix2 {
    ComplexMatrix2::from_real_rows([[1.0, 0.0], [0.0, 1.0]])
}

pub fn pauli_x() -> ComplexMatrix2 {
    ComplexMatrix2::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix2 {
    ComplexMatrix2::from_rows([
        [Complex64::ZERO, Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), Complex64::ZERO],
    ])
}

pub fn pauli_z() -> ComplexMatrix2 {
    ComplexMatrix2::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
}

pub fn hadamard() -> ComplexMatrix2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix2::from_real_rows([[h, h], [h, -h]])
}

/// The named two-spin gates of the protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Hadamard on spin I.
    HadamardI,
    /// Controlled-NOT, control I, target S.
    Cnot,
    /// Entangler: CNOT · (H ⊗ I).
    Entangle,
    /// Disentangler: (H ⊗ I) · CNOT.
    BellMeasure,
}

pub fn gate(g: Gate) -> ComplexMatrix4 {
    match g {
        Gate::HadamardI => kron(&hadamard(), &pauli_i()),
        Gate::Cnot => ComplexMatrix4::from_real_rows([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]),
        Gate::Entangle => gate(Gate::Cnot).mul(&gate(Gate::HadamardI)),
        Gate::BellMeasure => gate(Gate::HadamardI).mul(&gate(Gate::Cnot)),
    }
}

/// Bob's encoding unitary (Zᶻ Xˣ) ⊗ I acting on spin I alone.
pub fn encoder(m: Message) -> ComplexMatrix4 {
    let mut op = pauli_i();
    if m.x {
        op = pauli_x().mul(&op);
    }
    if m.z {
        op = pauli_z().mul(&op);
    }
    kron(&op, &pauli_i())
}

/// The Bell state (|0,x⟩ + (−1)ᶻ |1,x̄⟩)/√2.
pub fn bell_state(m: Message) -> ComplexVector4 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amp = [0.0; 4];
    amp[usize::from(m.x)] = h;
    amp[2 + usize::from(!m.x)] = m.sign_z() * h;
    ComplexVector4::from_real(amp)
}

/// The four states of one protocol run together with the occupation
/// probabilities that generated them.
#[derive(Clone, Copy, Debug)]
pub struct ProtocolTrace {
    pub message: Message,
    /// Thermal product state.
    pub rho0: DensityMatrix4,
    /// Shared Bell-diagonal state after entangling.
    pub rho1: DensityMatrix4,
    /// Bell-diagonal state after Bob's encoding.
    pub rho2: DensityMatrix4,
    /// Computational-diagonal state after disentangling.
    pub rho3: DensityMatrix4,
    pub p_i: f64,
    pub q_i: f64,
    pub p_s: f64,
    pub q_s: f64,
}

/// Run the full circuit on a thermal input:
/// ρ₁ = U_ent ρ₀ U_ent†, ρ₂ = U_zx ρ₁ U_zx†, ρ₃ = U_Bell ρ₂ U_Bell†.
pub fn run_protocol(cfg: &ThermalConfig, m: Message) -> Result<ProtocolTrace> {
    let (eps_i, eps_s) = cfg.polarizations()?;
    let (p_i, q_i) = occupation_probs(eps_i)?;
    let (p_s, q_s) = occupation_probs(eps_s)?;

    let rho0 = thermal_state(cfg)?;
    let rho1 = rho0.evolve(&gate(Gate::Entangle))?;
    let rho2 = rho1.evolve(&encoder(m))?;
    let rho3 = rho2.evolve(&gate(Gate::BellMeasure))?;

    Ok(ProtocolTrace {
        message: m,
        rho0,
        rho1,
        rho2,
        rho3,
        p_i,
        q_i,
        p_s,
        q_s,
    })
}

/// Single-molecule magnetization expectations on the decoded state:
/// (⟨Z_I⟩, ⟨Z_S⟩) = (Tr ρ₃ Z⊗I, Tr ρ₃ I⊗Z).
pub fn magnetization_expectations(rho3: &DensityMatrix4) -> (f64, f64) {
    let z_i = kron(&pauli_z(), &pauli_i());
    let z_s = kron(&pauli_i(), &pauli_z());
    (rho3.expectation(&z_i), rho3.expectation(&z_s))
}

/// Matrix elements of ρ in the Bell basis: ⟨β_row| ρ |β_col⟩ indexed by
/// [`Message::index`]. Used to check Bell-diagonality.
pub fn bell_basis_element(rho: &DensityMatrix4, row: Message, col: Message) -> Complex64 {
    let br = bell_state(row);
    let bc = bell_state(col);
    br.dot(&ComplexVector4::matvec(rho.matrix(), &bc))
}

/// Largest off-diagonal modulus of ρ in the Bell basis.
pub fn bell_off_diagonal_residual(rho: &DensityMatrix4) -> f64 {
    let mut worst = 0.0_f64;
    for a in Message::all() {
        for b in Message::all() {
            if a != b {
                worst = worst.max(bell_basis_element(rho, a, b).norm());
            }
        }
    }
    worst
}
