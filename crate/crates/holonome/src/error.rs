use thiserror::Error;

/// Crate-wide error type. Mathematical check failures are not errors; they
/// are reported in the relevant report structs. Errors are malformed input,
/// unsupported constructions and numerical breakdowns.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported series/rank combination: {0}")]
    UnsupportedRootSystem(String),
    #[error("unsupported representation kind: {0}")]
    UnsupportedRep(String),
    #[error("dimension cap exceeded: {dim} > {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("q too close to a root of unity (order {0})")]
    RootOfUnity(u32),
    #[error("q-exponential undefined: |q - q^-1| < 1e-6")]
    QDegenerate,
    #[error("weight function is not Weyl-invariant on root orbits")]
    WeightsNotInvariant,
    #[error("basepoint lies on a wall or outside the fundamental chamber")]
    BasepointOnWall,
    #[error("could not find a path with positive wall clearance after {0} attempts")]
    ClearanceFailure(u32),
    #[error("step size underflow at t = {0}; path too close to a wall for the requested tolerance")]
    StepUnderflow(f64),
    #[error("non-finite value encountered during integration")]
    NonFinite,
    #[error("intertwiner solve failed: singular system (convention bug)")]
    IntertwinerSolve,
    #[error("identification dimension mismatch: {0}")]
    IdentificationMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
