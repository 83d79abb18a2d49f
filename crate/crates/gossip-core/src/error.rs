use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("matrix not symmetric: max asymmetry {0:e}")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    EigenNoConvergence(usize),

    #[error("no sign change found: {0}")]
    RootNotFound(String),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("no analytic closed form: {0}")]
    UnsupportedAnalytic(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("too many free variables: {0} (limit {1})")]
    TooManyFreeVariables(usize, usize),

    #[error("size guard exceeded: coefficient space dimension {0} > {1}")]
    SizeGuard(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
