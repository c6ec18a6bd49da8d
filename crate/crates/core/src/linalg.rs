//! Dense complex 2×2 / 4×4 matrix arithmetic, Hermitian eigensolving, tensor
//! products, and partial transposition.
//!
//! Everything here is fixed-size: the protocol lives entirely in the Hilbert
//! space of two spins 1/2, so there is no need for dynamic dimensions. The
//! eigensolver is a cyclic complex Jacobi iteration, which at dimension four
//! converges to machine precision in a handful of sweeps.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (products, traces, hermiticity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Tolerance for results of the iterative eigensolver.
pub const EIGEN_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix<const N: usize> {
    entries: [[Complex64; N]; N],
}

/// 2×2 complex matrix (single-spin operators).
pub type ComplexMatrix2 = SquareMatrix<2>;

/// 4×4 complex matrix (two-spin operators and states).
pub type ComplexMatrix4 = SquareMatrix<4>;

impl<const N: usize> SquareMatrix<N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[Complex64::ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = Complex64::ONE;
        }
        m
    }

    pub fn from_rows(entries: [[Complex64; N]; N]) -> Self {
        Self { entries }
    }

    /// Build from real row entries (imaginary parts zero).
    pub fn from_real_rows(rows: [[f64; N]; N]) -> Self {
        Self {
            entries: rows.map(|row| row.map(|x| Complex64::new(x, 0.0))),
        }
    }

    pub fn from_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, value) in diag.iter().enumerate() {
            m.entries[i][i] = Complex64::new(*value, 0.0);
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row][col] = value;
    }

    pub fn row(&self, row: usize) -> [Complex64; N] {
        self.entries[row]
    }

    pub fn diagonal(&self) -> [Complex64; N] {
        std::array::from_fn(|i| self.entries[i][i])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = Complex64::ZERO;
                for k in 0..N {
                    acc += self.entries[i][k] * other.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] += other.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] -= other.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] *= factor;
            }
        }
        out
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    /// Conjugation U · self · U†.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                m = m.max(self.entries[i][j].norm());
            }
        }
        m
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// max |A - A†|, zero for Hermitian matrices.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// max |U†U - I|, zero for unitary matrices.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().mul(self).max_abs_diff(&Self::identity())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Equality up to a single global phase: self ≈ e^{iφ} · other.
    ///
    /// The phase is read off the largest entry of `other`; it must have
    /// modulus comparable to the matching entry of `self`.
    pub fn approx_eq_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        let mut best = (0, 0);
        let mut best_mod = 0.0;
        for i in 0..N {
            for j in 0..N {
                let m = other.entries[i][j].norm();
                if m > best_mod {
                    best_mod = m;
                    best = (i, j);
                }
            }
        }
        if best_mod == 0.0 {
            return self.max_abs() <= tol;
        }
        let ratio = self.entries[best.0][best.1] / other.entries[best.0][best.1];
        if (ratio.norm() - 1.0).abs() > tol {
            return false;
        }
        let phase = ratio / ratio.norm();
        self.approx_eq(&other.scale(phase), tol)
    }

    /// Swap two columns (used to permute eigenvectors and unitaries).
    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.entries.iter_mut() {
            row.swap(a, b);
        }
    }
}

impl<const N: usize> std::ops::Index<(usize, usize)> for SquareMatrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

/// Length-4 complex column vector (two-spin pure states).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexVector4 {
    entries: [Complex64; 4],
}

impl ComplexVector4 {
    pub fn new(entries: [Complex64; 4]) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: [f64; 4]) -> Self {
        Self {
            entries: entries.map(|x| Complex64::new(x, 0.0)),
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut v = Self::new([Complex64::ZERO; 4]);
        v.entries[index] = Complex64::ONE;
        v
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self|other⟩ with the left argument conjugated.
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |self⟩⟨other|.
    pub fn outer(&self, other: &Self) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, self.entries[i] * other.entries[j].conj());
            }
        }
        m
    }

    /// |self⟩⟨self|.
    pub fn projector(&self) -> ComplexMatrix4 {
        self.outer(self)
    }

    pub fn matvec(m: &ComplexMatrix4, v: &Self) -> Self {
        let mut out = [Complex64::ZERO; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *slot += m.get(i, j) * v.entries[j];
            }
        }
        Self { entries: out }
    }
}

/// Kronecker product. The first factor indexes spin I (most significant
/// qubit), so the basis order is |00⟩, |01⟩, |10⟩, |11⟩.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    out.set(2 * i1 + i2, 2 * j1 + j2, a.get(i1, j1) * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian 4×4 matrix.
///
/// Eigenvalues ascend; the columns of `eigenvectors` are the matching
/// orthonormal eigenvectors. Within a degenerate cluster the columns are an
/// arbitrary orthonormal basis of the eigenspace, so callers must only rely
/// on the spectrum and on reconstruction, never on specific vectors.
#[derive(Clone, Copy, Debug)]
pub struct EigenSystem4 {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: ComplexMatrix4,
}

impl EigenSystem4 {
    /// V · diag(λ) · V†.
    pub fn reconstruct(&self) -> ComplexMatrix4 {
        let d = ComplexMatrix4::from_diagonal(self.eigenvalues);
        self.eigenvectors.mul(&d).mul(&self.eigenvectors.adjoint())
    }
}

/// Sum of squared moduli of the off-diagonal entries.
fn off_diagonal_norm_sq(m: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += m.get(i, j).norm_sqr();
            }
        }
    }
    s
}

/// Cyclic complex Jacobi eigensolver for Hermitian 4×4 matrices.
///
/// Sweeps over every off-diagonal pair, annihilating each entry with a
/// complex plane rotation, until the off-diagonal norm falls below the
/// working threshold. Convergence is quadratic; a handful of sweeps reaches
/// machine precision at this dimension.
pub fn hermitian_eigensystem(a: &ComplexMatrix4) -> Result<EigenSystem4> {
    let residual = a.hermiticity_residual();
    if residual > 1e-10 {
        return Err(Error::NotHermitian { residual });
    }

    // Work on the exactly Hermitian average (A + A†)/2 so rounding in the
    // caller cannot leak into the iteration.
    let mut h = a.add(&a.adjoint()).scale_re(0.5);
    let mut v = ComplexMatrix4::identity();

    let scale = h.max_abs().max(1.0);
    let threshold = (1e-13 * scale) * (1e-13 * scale);

    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sq(&h) <= threshold {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = h.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = h.get(p, p).re;
                let aqq = h.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                // Smaller-magnitude root of t² - 2τt - 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut g = ComplexMatrix4::identity();
                g.set(p, p, Complex64::new(c, 0.0));
                g.set(p, q, -phase * s);
                g.set(q, p, phase.conj() * s);
                g.set(q, q, Complex64::new(c, 0.0));

                h = g.adjoint().mul(&h).mul(&g);
                v = v.mul(&g);
            }
        }
    }

    // Sort ascending and permute eigenvector columns to match.
    let mut order = [0usize, 1, 2, 3];
    let diag: [f64; 4] = std::array::from_fn(|i| h.get(i, i).re);
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues = order.map(|i| diag[i]);
    let mut eigenvectors = ComplexMatrix4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..4 {
            eigenvectors.set(row, dst, v.get(row, src));
        }
    }

    Ok(EigenSystem4 {
        eigenvalues,
        eigenvectors,
    })
}

/// The tensor factor a partial transpose acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    /// Spin I, the left (most significant) factor.
    I,
    /// Spin S, the right factor.
    S,
}

fn partial_transpose_matrix(m: &ComplexMatrix4, subsystem: Subsystem) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let value = m.get(2 * a + b, 2 * c + d);
                    match subsystem {
                        // ⟨a b| ρ^{T_S} |c d⟩ = ⟨a d| ρ |c b⟩
                        Subsystem::S => out.set(2 * a + d, 2 * c + b, value),
                        // ⟨a b| ρ^{T_I} |c d⟩ = ⟨c b| ρ |a d⟩
                        Subsystem::I => out.set(2 * c + b, 2 * a + d, value),
                    }
                }
            }
        }
    }
    out
}

/// Transpose one tensor factor of a density matrix in the computational
/// basis. The result is Hermitian but in general not positive; a negative
/// eigenvalue certifies entanglement (exact for two qubits).
pub fn partial_transpose(rho: &DensityMatrix4, subsystem: Subsystem) -> ComplexMatrix4 {
    partial_transpose_matrix(rho.matrix(), subsystem)
}

/// A validated 4×4 density matrix: Hermitian, unit trace, positive
/// semidefinite (within the documented tolerances).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4 {
    matrix: ComplexMatrix4,
}

impl DensityMatrix4 {
    /// Validate and wrap a raw matrix; this is the only way to build one.
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonPhysical(
                "density matrix has non-finite entries".into(),
            ));
        }
        let residual = matrix.hermiticity_residual();
        if residual > ALGEBRAIC_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace().re;
        let trace_residual = (trace - 1.0).abs();
        if trace_residual > ALGEBRAIC_TOL {
            return Err(Error::TraceNotOne {
                trace,
                residual: trace_residual,
            });
        }
        let eigen = hermitian_eigensystem(&matrix)?;
        let min_eigenvalue = eigen.eigenvalues[0];
        if min_eigenvalue < -1e-10 {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    /// Tr(ρ O) for a Hermitian observable; the imaginary part is discarded
    /// (it vanishes up to rounding).
    pub fn expectation(&self, observable: &ComplexMatrix4) -> f64 {
        self.matrix.mul(observable).trace().re
    }

    /// Evolve by a unitary: U ρ U†. Re-validates the result.
    pub fn evolve(&self, u: &ComplexMatrix4) -> Result<Self> {
        Self::new(self.matrix.conjugate_by(u))
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigensystem(&self.matrix)
            .expect("validated density matrix is Hermitian")
            .eigenvalues
    }
}

/// Enforce the density-matrix invariants on a raw matrix.
pub fn validate_density(m: ComplexMatrix4) -> Result<DensityMatrix4> {
    DensityMatrix4::new(m)
}
