use thiserror::Error;

/// Errors raised by parsing, resolution and linear-system computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous (found total degrees {0} and {1})")]
    NotHomogeneous(u32, u32),
    #[error("the zero form does not define a curve")]
    ZeroForm,
    #[error("form is not squarefree")]
    NotSquarefree,
    #[error("curve appears to be reducible")]
    Reducible,
    #[error("singular point without rational coordinates")]
    NonRationalSingularity,
    #[error("singular locus is positive dimensional")]
    PositiveDimensionalSingularLocus,
    #[error("blow-up depth bound {0} exceeded")]
    DepthExceeded(usize),
    #[error("subset of points with weight > 1 is not a cluster")]
    NotClosed,
    #[error("no nonzero form satisfies the conditions")]
    EmptySystem,
    #[error("linear system has a fixed component")]
    FixedComponentPresent,
    #[error("base point without rational coordinates")]
    NonRationalBasePoint,
    #[error("form is not a member of the linear system")]
    NotMember,
    #[error("curve is not of nonnegative type")]
    NotNonnegativeType,
    #[error("curve is not rational")]
    NotRational,
    #[error("geometric genus came out negative ({0}); input is probably reducible")]
    GenusNegative(i64),
    #[error("forms have mismatched degrees")]
    DegreeMismatch,
}

impl Error {
    /// Stable machine-readable name, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::NotHomogeneous(..) => "NotHomogeneous",
            Error::ZeroForm => "ZeroForm",
            Error::NotSquarefree => "NotSquarefree",
            Error::Reducible => "Reducible",
            Error::NonRationalSingularity => "NonRationalSingularity",
            Error::PositiveDimensionalSingularLocus => "PositiveDimensionalSingularLocus",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::NotClosed => "NotClosed",
            Error::EmptySystem => "EmptySystem",
            Error::FixedComponentPresent => "FixedComponentPresent",
            Error::NonRationalBasePoint => "NonRationalBasePoint",
            Error::NotMember => "NotMember",
            Error::NotNonnegativeType => "NotNonnegativeType",
            Error::NotRational => "NotRational",
            Error::GenusNegative(_) => "GenusNegative",
            Error::DegreeMismatch => "DegreeMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
