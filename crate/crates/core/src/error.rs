use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum PdcsError {
    #[error("invalid Pauli label: unexpected {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("empty Pauli label")]
    EmptyLabel,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} with {n} qubits exceeds the configured cap of {cap}{hint}")]
    Capacity {
        what: &'static str,
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("candidate list is empty")]
    EmptyCandidates,

    #[error("unknown gate {0:?}")]
    UnknownGate(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("gate {gate}: rotor budget exhausted at fidelity {fidelity:.6}")]
    BudgetExhausted { gate: usize, fidelity: f64 },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl PdcsError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        PdcsError::Validation(msg.into())
    }

    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        PdcsError::Json {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by bad user input rather than the environment.
    pub fn is_validation(&self) -> bool {
        !matches!(self, PdcsError::Io(_) | PdcsError::Csv(_))
    }
}

pub type Result<T> = std::result::Result<T, PdcsError>;

pub(crate) fn ensure_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(PdcsError::DimensionMismatch { expected, found })
    }
}
