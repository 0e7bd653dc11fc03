use thiserror::Error;

/// Errors raised by the geometry, enumeration, construction and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported ambient dimension {0} (supported: 1..=8)")]
    UnsupportedDimension(usize),

    #[error("point set spans an affine subspace of dimension {found}, need {required}")]
    DimensionDeficiency { found: usize, required: usize },

    #[error("point is not on the boundary (distance {distance:.3e})")]
    NotOnBoundary { distance: f64 },

    #[error("direction is not tangent at the base point (normal component {normal_component:.3e})")]
    NotTangent { normal_component: f64 },

    #[error("chord is not a double normal: {0}")]
    NotDoubleNormal(String),

    #[error("chord is not certified maximizing: {0}")]
    NotMaximizing(String),

    #[error("body is not strictly convex: {0}")]
    NotStrictlyConvex(String),

    #[error("point {index} is not an extreme point of the hull")]
    NotExtreme { index: usize },

    #[error(
        "Kuiper count violated: {found} non-oriented double normals, at least {required} expected"
    )]
    KuiperViolation { found: usize, required: usize },

    #[error("no multistart refinement converged; residual histogram (log10 bin, count): {histogram:?}")]
    NonConvergence { histogram: Vec<(i32, usize)> },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cap graft exceeds tolerance: Pompeiu-Hausdorff distance {distance:.6} >= {epsilon}")]
    CapGraftExceeds { distance: f64, epsilon: f64 },

    #[error("rectangle too wide to certify: separation {separation:.3e} at {foot}")]
    WidthTooLarge { separation: f64, foot: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
