use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("trigonometric polynomials are defined over different frequency bases")]
    BasisMismatch,

    #[error("invalid frequency basis: {0}")]
    InvalidBasis(String),

    #[error("frequency {lambda} is closer to zero than the margin {margin}; the antiderivative may not be almost periodic")]
    FrequencyNearZero { lambda: f64, margin: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid equation parameters: {0}")]
    InvalidParams(String),

    #[error("resonance at frequency {lambda}")]
    Resonance { lambda: f64 },

    #[error("unsupported regime: {0}")]
    UnsupportedCase(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("neither contraction criterion holds (L = {lipschitz}, thresholds {classical_threshold} and {derived_threshold})")]
    NonContractive {
        lipschitz: f64,
        classical_threshold: f64,
        derived_threshold: f64,
    },

    #[error("iterate {iteration} left the ball of radius {radius} (sup = {sup})")]
    RadiusExceeded {
        iteration: usize,
        radius: f64,
        sup: f64,
    },

    #[error("no convergence after {iterations} iterations (last increment {increment})")]
    MaxIterations { iterations: usize, increment: f64 },

    #[error("singular harmonic-balance system: {0}")]
    SingularSystem(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),

    #[error("verification mismatch: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
