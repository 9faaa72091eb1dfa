use thiserror::Error;

/// Failures raised by the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PstError {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid edge #{index} ({i}, {j}): {reason}")]
    InvalidEdge {
        index: usize,
        i: usize,
        j: usize,
        reason: String,
    },

    #[error(
        "disconnected graph: vertex {vertex} is unreachable from reference vertex {reference}"
    )]
    DisconnectedGraph { vertex: usize, reference: usize },

    #[error(
        "quotient closure violation at layer {layer}: residual {residual:.3e} exceeds {bound:.3e}; \
         the network is not layer-regular from this reference vertex"
    )]
    QuotientClosureViolation {
        layer: usize,
        residual: f64,
        bound: f64,
    },

    #[error("degenerate Jacobi sequence: {0}")]
    DegenerateSequence(String),

    #[error("evaluation point lies within {distance:.3e} of spectral atom {atom}")]
    PoleProximity { atom: f64, distance: f64 },

    #[error("invalid search window: {0}")]
    InvalidWindow(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_norm:.3e})"
    )]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = PstError> = std::result::Result<T, E>;
