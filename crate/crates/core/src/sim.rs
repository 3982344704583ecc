//! Stroboscopic simulation of the three-spin Hamiltonian
//! `H = 2π ω_x (XII + IXI + IIX) + 2π J ZZZ`.
//!
//! Hamiltonian coefficients are angular frequencies (rad/s); the preset
//! takes Hz and multiplies by 2π.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{CMatrix, DenseOperator, C64};
use crate::pauli::PauliString;
use crate::rotor::Decomposition;
use crate::state::QuantumState;
use crate::synth::{synthesize_unitary, SynthesisConfig, SynthesisReport};
use crate::trotter::{exact_propagator, HamiltonianSpec, HamiltonianTerm};

pub const THREE_BODY_J123_HZ: f64 = 5.0;
pub const THREE_BODY_OMEGA_X_HZ: f64 = 1.0;
pub const THREE_BODY_TAU_S: f64 = 0.8;

/// Unit convention recorded in output metadata.
pub const UNIT_CONVENTION: &str = "coefficients in rad/s; Hz inputs scaled by 2*pi";

/// `[X part, ZZZ part]` of the three-body Hamiltonian.
pub fn three_body_groups(j123: f64, omega_x: f64) -> Result<Vec<HamiltonianSpec>> {
    let x = 2.0 * PI * omega_x;
    let term = |label: &str, c: f64| -> Result<HamiltonianTerm> {
        Ok(HamiltonianTerm {
            pauli: PauliString::parse_label(label)?,
            coefficient: c,
        })
    };
    Ok(vec![
        HamiltonianSpec::new(3, vec![term("XII", x)?, term("IXI", x)?, term("IIX", x)?])?,
        HamiltonianSpec::new(3, vec![term("ZZZ", 2.0 * PI * j123)?])?,
    ])
}

pub fn three_body_preset(j123: f64, omega_x: f64) -> Result<HamiltonianSpec> {
    HamiltonianSpec::combine(&three_body_groups(j123, omega_x)?)
}

/// `Σ_i X_i / 2`.
pub fn magnetization_x(n: usize) -> DenseOperator {
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for q in 0..n {
        let label: String = (0..n).map(|k| if k == q { 'X' } else { 'I' }).collect();
        m += PauliString::parse_label(&label)
            .expect("valid label")
            .dense_matrix()
            * C64::new(0.5, 0.0);
    }
    DenseOperator::from_matrix_unchecked(m)
}

/// The deviation state `(XII + IXI + IIX)/2`.
pub fn three_body_initial_state() -> QuantumState {
    QuantumState::deviation(magnetization_x(3).into_matrix()).expect("traceless Hermitian")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Divides every value by the first one.
    pub fn normalized(&self) -> Result<TimeSeries> {
        let first = *self
            .values
            .first()
            .ok_or_else(|| PdcsError::validation("empty series"))?;
        if first.abs() < 1e-300 {
            return Err(PdcsError::validation(
                "cannot normalize: first value is zero",
            ));
        }
        Ok(TimeSeries {
            times: self.times.clone(),
            values: self.values.iter().map(|v| v / first).collect(),
        })
    }

    pub fn max_abs_difference(&self, other: &TimeSeries) -> Result<f64> {
        ensure_same_dim(self.len(), other.len())?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// `Tr[ρ_k O]` for `ρ_k = S^k ρ0 S^k†`, `k = 0..=k_max`, at times `k·τ`.
///
/// Fails when an expectation has an imaginary part above 1e-10, which
/// signals a non-Hermitian observable.
pub fn evolve_series(
    step: &DenseOperator,
    rho0: &QuantumState,
    observable: &DenseOperator,
    k_max: usize,
    tau: f64,
) -> Result<TimeSeries> {
    ensure_same_dim(rho0.dim(), step.dim())?;
    ensure_same_dim(rho0.dim(), observable.dim())?;
    let mut state = rho0.clone();
    let mut times = Vec::with_capacity(k_max + 1);
    let mut values = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            state = state.evolve(step)?;
        }
        let e = state.expectation(observable)?;
        if e.im.abs() > 1e-10 * e.re.abs().max(1.0) {
            return Err(PdcsError::validation(format!(
                "expectation at k={k} has imaginary part {:.3e}",
                e.im
            )));
        }
        times.push(k as f64 * tau);
        values.push(e.re);
    }
    Ok(TimeSeries { times, values })
}

pub fn evolve_series_decomposed(
    step: &Decomposition,
    rho0: &QuantumState,
    observable: &DenseOperator,
    k_max: usize,
    tau: f64,
) -> Result<TimeSeries> {
    evolve_series(&step.unitary(), rho0, observable, k_max, tau)
}

/// Rotor synthesis of `exp(-i H τ)`.
pub fn pdcs_step_propagator(
    h: &HamiltonianSpec,
    tau: f64,
    config: &SynthesisConfig,
) -> Result<(Decomposition, SynthesisReport)> {
    let u = exact_propagator(h, tau)?;
    let (mut d, report) = synthesize_unitary(&u, config)?;
    d.metadata_mut()
        .insert("units".into(), UNIT_CONVENTION.into());
    d.metadata_mut().insert("tau_s".into(), tau.to_string());
    Ok((d, report))
}
