//! Decomposition of unitaries and state transfers into rotors, i.e.
//! exponentials of commuting Pauli subsets, with Trotter baselines and a
//! stroboscopic simulation harness.
//!
//! Qubit 1 is the leftmost letter of a Pauli label and the most
//! significant bit of a basis index.

pub mod cli;
pub mod error;
pub mod gates;
pub mod io;
pub mod operator;
pub mod optimize;
pub mod pauli;
pub mod rotor;
pub mod sim;
pub mod state;
pub mod subsets;
pub mod synth;
pub mod trotter;

pub use error::{PdcsError, Result};
pub use gates::{standard_gate, CircuitSpec, StandardGate};
pub use operator::{DenseOperator, C64};
pub use pauli::{all_pauli_strings, pauli_trace, PauliString, Phase};
pub use rotor::{fidelity_unitary, Decomposition, Rotor};
pub use state::{state_fidelity, QuantumState};
pub use subsets::{enumerate_maximal_subsets, maximal_subset_count, CommutingSubset};
pub use synth::{
    synthesize_state, synthesize_unitary, SubsetMode, SynthesisConfig, SynthesisReport,
};
