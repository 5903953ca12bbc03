use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too coarse for degree {l_max}: {detail}")]
    GridTooCoarse { l_max: usize, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("field must be strictly positive on the grid (min value {min:.3e})")]
    NonPositiveField { min: f64 },

    #[error("director must be a unit vector (|n| = {norm})")]
    NonUnitDirector { norm: f64 },

    #[error("linear solve failed: {0}")]
    SingularSystem(String),

    #[error("eigen decomposition failed: {0}")]
    EigenFailure(String),

    #[error(
        "Hilbert corrector solvability violated: kernel projection residual {residual:.3e} \
         exceeds {threshold:.3e} (tumbling parameter inconsistent with the director path)"
    )]
    Solvability { residual: f64, threshold: f64 },

    #[error("time integration failed: {0}")]
    Integration(String),

    #[error("kernel structure is only characterized on the stable branch (got {0})")]
    UnstableBranch(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
