//! Quantum states: pure statevectors, density matrices, and traceless NMR
//! deviation matrices.

use nalgebra::DVector;

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{
    hermitian_eigen, is_hermitian, psd_sqrt, trace_product, CMatrix, DenseOperator, C64, ONE, ZERO,
};
use crate::pauli::PauliString;

pub const STATE_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Statevector,
    Density,
    Deviation,
}

/// A validated quantum state.
///
/// `Deviation` holds the traceless part of an NMR density operator. It is
/// not a state in the strict sense; fidelities between deviation matrices
/// are normalized Hilbert–Schmidt overlaps.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Statevector(DVector<C64>),
    Density(CMatrix),
    Deviation(CMatrix),
}

impl QuantumState {
    pub fn statevector(amplitudes: DVector<C64>) -> Result<Self> {
        check_power_of_two(amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > STATE_TOLERANCE {
            return Err(PdcsError::validation(format!(
                "statevector norm is {norm}, expected 1"
            )));
        }
        Ok(QuantumState::Statevector(amplitudes))
    }

    /// Normalizes the amplitudes before validating.
    pub fn normalized(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(PdcsError::validation("cannot normalize a zero statevector"));
        }
        QuantumState::statevector(amplitudes / C64::new(norm, 0.0))
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Self {
        let dim = 1usize << n;
        assert!(index < dim);
        let mut v = DVector::from_element(dim, ZERO);
        v[index] = ONE;
        QuantumState::Statevector(v)
    }

    pub fn density(rho: CMatrix) -> Result<Self> {
        check_square_power_of_two(&rho)?;
        if !is_hermitian(&rho, STATE_TOLERANCE) {
            return Err(PdcsError::validation("density matrix is not Hermitian"));
        }
        let trace = rho.trace();
        if (trace - ONE).norm() > STATE_TOLERANCE {
            return Err(PdcsError::validation(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let (values, _) = hermitian_eigen(&rho);
        if let Some(min) = values.iter().cloned().reduce(f64::min) {
            if min < -PSD_TOLERANCE {
                return Err(PdcsError::validation(format!(
                    "density matrix has negative eigenvalue {min}"
                )));
            }
        }
        Ok(QuantumState::Density(rho))
    }

    pub fn deviation(rho: CMatrix) -> Result<Self> {
        check_square_power_of_two(&rho)?;
        if !is_hermitian(&rho, STATE_TOLERANCE) {
            return Err(PdcsError::validation("deviation matrix is not Hermitian"));
        }
        let scale = rho.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        if rho.trace().norm() > STATE_TOLERANCE * scale * rho.nrows() as f64 {
            return Err(PdcsError::validation("deviation matrix must be traceless"));
        }
        if rho.iter().all(|v| v.norm() == 0.0) {
            return Err(PdcsError::validation("deviation matrix is zero"));
        }
        Ok(QuantumState::Deviation(rho))
    }

    /// Weighted sum of Pauli strings as a deviation matrix, e.g. `(XII+IXI+IIX)/2`.
    pub fn deviation_from_paulis(terms: &[(&str, f64)]) -> Result<Self> {
        let mut acc: Option<CMatrix> = None;
        for (label, weight) in terms {
            let p = PauliString::parse_label(label)?;
            if p.is_identity() {
                return Err(PdcsError::validation("deviation terms must be traceless"));
            }
            let m = p.dense()?.into_matrix() * C64::new(*weight, 0.0);
            acc = Some(match acc {
                None => m,
                Some(a) => {
                    ensure_same_dim(a.nrows(), m.nrows())?;
                    a + m
                }
            });
        }
        QuantumState::deviation(acc.ok_or_else(|| PdcsError::validation("no terms"))?)
    }

    pub fn kind(&self) -> StateKind {
        match self {
            QuantumState::Statevector(_) => StateKind::Statevector,
            QuantumState::Density(_) => StateKind::Density,
            QuantumState::Deviation(_) => StateKind::Deviation,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Statevector(v) => v.len(),
            QuantumState::Density(m) | QuantumState::Deviation(m) => m.nrows(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// `|ψ⟩⟨ψ|` for statevectors, the stored matrix otherwise.
    pub fn to_density_matrix(&self) -> CMatrix {
        match self {
            QuantumState::Statevector(v) => v * v.adjoint(),
            QuantumState::Density(m) | QuantumState::Deviation(m) => m.clone(),
        }
    }

    /// Rank-one within tolerance. Deviation matrices are never pure.
    pub fn is_pure(&self) -> bool {
        match self {
            QuantumState::Statevector(_) => true,
            QuantumState::Density(m) => (trace_product(m, m).re - 1.0).abs() <= 1e-10,
            QuantumState::Deviation(_) => false,
        }
    }

    /// `U|ψ⟩` or `UρU†`, preserving the variant.
    pub fn evolve(&self, u: &DenseOperator) -> Result<QuantumState> {
        ensure_same_dim(self.dim(), u.dim())?;
        let u = u.matrix();
        Ok(match self {
            QuantumState::Statevector(v) => QuantumState::Statevector(u * v),
            QuantumState::Density(m) => QuantumState::Density(u * m * u.adjoint()),
            QuantumState::Deviation(m) => QuantumState::Deviation(u * m * u.adjoint()),
        })
    }

    /// `Tr[ρ·O]` (or `⟨ψ|O|ψ⟩`).
    pub fn expectation(&self, observable: &DenseOperator) -> Result<C64> {
        ensure_same_dim(self.dim(), observable.dim())?;
        Ok(match self {
            QuantumState::Statevector(v) => (v.adjoint() * observable.matrix() * v)[(0, 0)],
            QuantumState::Density(m) | QuantumState::Deviation(m) => {
                trace_product(m, observable.matrix())
            }
        })
    }

    /// `‖ψ‖` for vectors, `Tr ρ` for density matrices, Frobenius norm for
    /// deviation matrices; all are conserved by unitary evolution.
    pub fn conserved_norm(&self) -> f64 {
        match self {
            QuantumState::Statevector(v) => v.norm(),
            QuantumState::Density(m) => m.trace().re,
            QuantumState::Deviation(m) => m.norm(),
        }
    }
}

fn check_power_of_two(dim: usize) -> Result<()> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(PdcsError::validation(format!(
            "state dimension {dim} is not a power of two"
        )));
    }
    Ok(())
}

fn check_square_power_of_two(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(PdcsError::validation("state matrix must be square"));
    }
    check_power_of_two(m.nrows())
}

/// Uhlmann fidelity `Tr√(√a·b·√a)`; equals `|⟨ψ_a|ψ_b⟩|` for pure states.
///
/// Two deviation matrices are compared by their normalized Hilbert–Schmidt
/// overlap, clamped at zero. Mixing a deviation matrix with a proper state
/// is rejected.
pub fn state_fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    ensure_same_dim(a.dim(), b.dim())?;
    use QuantumState::*;
    let f = match (a, b) {
        (Statevector(u), Statevector(v)) => u.dotc(v).norm(),
        (Statevector(u), other) | (other, Statevector(u)) => {
            if matches!(other, Deviation(_)) {
                return Err(mixed_kinds());
            }
            let rho = other.to_density_matrix();
            (u.adjoint() * rho * u)[(0, 0)].re.max(0.0).sqrt()
        }
        (Density(x), Density(y)) => {
            if a.is_pure() || b.is_pure() {
                trace_product(x, y).re.max(0.0).sqrt()
            } else {
                uhlmann(x, y)
            }
        }
        (Deviation(x), Deviation(y)) => deviation_overlap(x, y).max(0.0),
        _ => return Err(mixed_kinds()),
    };
    Ok(f.clamp(0.0, 1.0))
}

fn mixed_kinds() -> PdcsError {
    PdcsError::validation("cannot compare a deviation matrix with a normalized state")
}

pub(crate) fn uhlmann(a: &CMatrix, b: &CMatrix) -> f64 {
    let sa = psd_sqrt(a);
    let inner = &sa * b * &sa;
    let (values, _) = hermitian_eigen(&inner);
    values.iter().map(|v| v.max(0.0).sqrt()).sum()
}

pub(crate) fn deviation_overlap(a: &CMatrix, b: &CMatrix) -> f64 {
    trace_product(a, b).re / (a.norm() * b.norm())
}

/// Named states used by the examples and the command line.
pub mod presets {
    use super::*;

    pub fn zero(n: usize) -> QuantumState {
        QuantumState::basis(n, 0)
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> QuantumState {
        ghz(2)
    }

    pub fn ghz(n: usize) -> QuantumState {
        let dim = 1usize << n;
        let mut v = DVector::from_element(dim, ZERO);
        v[0] = ONE;
        v[dim - 1] = ONE;
        QuantumState::normalized(v).expect("nonzero")
    }

    /// Equal superposition of the `n` single-excitation basis states.
    pub fn w(n: usize) -> QuantumState {
        let dim = 1usize << n;
        let mut v = DVector::from_element(dim, ZERO);
        for q in 0..n {
            v[1 << q] = ONE;
        }
        QuantumState::normalized(v).expect("nonzero")
    }

    /// Polarization on spin 1 (`ZI`) to be transferred to spin 2 (`IZ`).
    pub fn inept_pair() -> (QuantumState, QuantumState) {
        (
            QuantumState::deviation_from_paulis(&[("ZI", 1.0)]).expect("valid"),
            QuantumState::deviation_from_paulis(&[("IZ", 1.0)]).expect("valid"),
        )
    }

    /// Initial/target pair by name: `bell`, `ghz`, `w`, or `inept`.
    pub fn transfer(name: &str) -> Result<(QuantumState, QuantumState)> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "bell" => (zero(2), bell()),
            "ghz" => (zero(3), ghz(3)),
            "w" => (zero(3), w(3)),
            "inept" => inept_pair(),
            other => return Err(PdcsError::UnknownPreset(other.to_string())),
        })
    }

    /// A single named state: the transfer targets above plus `zero2`,
    /// `zero3`, `inept-initial`, `inept-target`.
    pub fn named(name: &str) -> Result<QuantumState> {
        let lower = name.to_ascii_lowercase();
        if let Some(n) = lower.strip_prefix("zero") {
            let n: usize = n
                .parse()
                .map_err(|_| PdcsError::UnknownPreset(name.to_string()))?;
            if n == 0 || n > crate::pauli::DEFAULT_DENSE_CAP {
                return Err(PdcsError::UnknownPreset(name.to_string()));
            }
            return Ok(zero(n));
        }
        Ok(match lower.as_str() {
            "bell" => bell(),
            "ghz" => ghz(3),
            "w" => w(3),
            "inept-initial" => inept_pair().0,
            "inept-target" => inept_pair().1,
            _ => return Err(PdcsError::UnknownPreset(name.to_string())),
        })
    }
}
