use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse Pauli string: {reason} (at `{token}`)")]
    Parse { token: String, reason: String },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),

    #[error("invalid stabilizer tableau: {0}")]
    InvalidTableau(String),

    #[error("excitation not unbiased: {0}")]
    NotUnbiased(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),

    #[error("hamiltonian file rejected: {0}")]
    Schema(String),

    #[error("no word operator found: {0}")]
    NoWordOperator(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used by the command-line front end for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Resource(_) => ErrorKind::Resource,
            Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
