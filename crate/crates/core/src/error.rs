use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is real (or within {tol:e} of the real axis)")]
    RealInput { tol: f64 },

    #[error("imaginary unit -i has no finite chart coordinate")]
    SouthPole,

    #[error("pole: division by zero while evaluating {context}")]
    Pole { context: String },

    #[error("square root argument within {margin:e} of its branch cut")]
    BranchCut { margin: f64 },

    #[error("point {re}+{im}i is outside the domain")]
    OutOfDomain { re: f64, im: f64 },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("representation units J and K coincide")]
    DegenerateUnits,

    #[error("stem parity check failed (residual {residual:e})")]
    NotAStem { residual: f64 },

    #[error("slice functions are defined on different domains")]
    DomainMismatch,

    #[error("normal function vanishes at the evaluation point")]
    ZeroNormal,

    #[error("transformation is not invertible (determinant {det:e})")]
    NotInvertible { det: f64 },

    #[error("plane has c2 = c3 = 0 and cannot contain a lift")]
    DegeneratePlane,

    #[error("no square-root sign pairing satisfies the middle equation (residual {residual:e})")]
    BranchInconsistent { residual: f64 },

    #[error("request of {requested} cells exceeds the limit of {limit}")]
    TooLarge { requested: usize, limit: usize },

    #[error("xi_6 vanishes on the curve at {re}+{im}i")]
    XiSixVanishes { re: f64, im: f64 },

    #[error("slice derivative is not slice constant (residual {residual:e})")]
    NotSliceAffine { residual: f64 },

    #[error("differential is singular (rank {rank})")]
    SingularDifferential { rank: usize },

    #[error("quaternion has q1 <= 0; outside the image half-space")]
    WrongHalfSpace,

    #[error("operation needs an expression-built slice function")]
    NotExpressionBuilt,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
