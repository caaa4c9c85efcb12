use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter or configuration field is out of range.
    #[error("{field} {message}")]
    InvalidParameter { field: String, message: String },

    #[error("degenerate excitons (splitting = {splitting_mev} meV): {context}")]
    Degenerate {
        splitting_mev: f64,
        context: &'static str,
    },

    #[error("integration failed at t = {time_fs} fs: {reason}")]
    Integration { time_fs: f64, reason: String },

    #[error("density-matrix invariant violated at t = {time_fs} fs: {reason}")]
    InvariantViolation { time_fs: f64, reason: String },

    #[error("steady state is not unique: Liouvillian null space has dimension {null_dim}")]
    NonUniqueSteadyState { null_dim: usize },

    #[error("steady-state residual {residual:e} exceeds {limit:e}")]
    SteadyStateResidual { residual: f64, limit: f64 },

    #[error("no half-life within grid")]
    NoHalfLife,

    #[error("unknown figure id `{0}` (expected fig1, fig2 or fig3)")]
    UnknownFigure(String),

    #[error("malformed config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status for this error under the CLI contract:
    /// 1 = I/O, 2 = invalid input, 3 = numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            Error::InvalidParameter { .. }
            | Error::Degenerate { .. }
            | Error::UnknownFigure(_)
            | Error::Config(_)
            | Error::Json(_) => 2,
            Error::Integration { .. }
            | Error::InvariantViolation { .. }
            | Error::NonUniqueSteadyState { .. }
            | Error::SteadyStateResidual { .. }
            | Error::NoHalfLife => 3,
        }
    }
}
