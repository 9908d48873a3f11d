use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("dimension cap exceeded: {qubits} qubits requested, at most {cap} supported")]
    CapExceeded { qubits: usize, cap: usize },

    #[error("party subsets overlap at site {0}")]
    OverlappingParties(usize),

    #[error("invalid correlation table: {0}")]
    InvalidTable(String),

    #[error("linear program failed: {0}")]
    SolverFailure(String),
}
