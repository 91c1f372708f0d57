use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes for the stated qubit count, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("qubit count must be between 1 and {max}, got {got}")]
    QubitCount { got: usize, max: usize },

    #[error("basis label {0:?} is not an n-character bitstring")]
    BadBasis(String),

    #[error("basis label {0:?} appears more than once")]
    DuplicateBasis(String),

    #[error("zero vector")]
    ZeroVector,

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("{what} needs at least {min} qubits, got {got}")]
    TooFewQubits {
        what: &'static str,
        min: usize,
        got: usize,
    },

    #[error("Dicke excitation count {l} out of range 1..={max} for {n} qubits", max = n - 1)]
    DickeOutOfRange { l: usize, n: usize },

    #[error("not a permutation of the {n} qubits: {perm:?}")]
    NotAPermutation { n: usize, perm: Vec<usize> },

    #[error("{what} is only defined for an even number of qubits, got {n}")]
    OddQubitCount { what: &'static str, n: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("unsupported matrix dimension {dim} (max {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("polynomial coefficients must be monic with degree 1..=4")]
    BadPolynomial,

    #[error("root iteration did not converge after {iterations} iterations (residuals {residuals:?})")]
    NonConvergence {
        iterations: usize,
        residuals: Vec<f64>,
    },

    #[error("invalid qubit subset {keep:?} for {n} qubits")]
    BadSubset { n: usize, keep: Vec<usize> },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("{mode} evaluation is not available for {n} qubits (budget: {allowed})")]
    BudgetExceeded {
        mode: &'static str,
        n: usize,
        allowed: &'static str,
    },

    #[error("operator set has {got} operators, state has {expected} qubits")]
    OperatorCount { expected: usize, got: usize },

    #[error("local operator is not an invertible 2x2 matrix")]
    BadOperator,
}
