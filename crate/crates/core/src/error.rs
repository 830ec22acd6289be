use std::fmt;

/// Errors raised by the algebra kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("ideal is not maximal: {0}")]
    NotMaximal(String),
    #[error("module has infinite length at the given point")]
    InfiniteLength,
    #[error("ideal is positive-dimensional (dimension {0})")]
    PositiveDimensional(i64),
    #[error("polynomial degree {degree} exceeds the configured factorization bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("computation exceeded its resource budget: {0}")]
    ResourceExhausted(String),
    #[error("improper-intersection")]
    ImproperIntersection,
    #[error("cycles live on different schemes")]
    SchemeMismatch,
    #[error("support is positive-dimensional and no candidate components were supplied")]
    MissingComponents,
    #[error("candidate components do not cover the support: {0}")]
    ComponentsIncomplete(String),
    #[error("codimension condition violated: {0}")]
    Codimension(String),
    #[error("morphism is not flagged flat")]
    NotFlat,
    #[error("not in good position: {0}")]
    GoodPosition(String),
    #[error("morphism does not respect defining ideals")]
    InvalidMorphism,
    #[error("element is not a unit: {0}")]
    NonUnit(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("map is not monotone")]
    NonMonotone,
    #[error("consecutive boundary maps do not compose to zero")]
    NonZeroComposition,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable kind, used by result records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::DuplicateVariable(_) => "duplicate-variable",
            Error::UnknownVariable(_) => "unknown-variable",
            Error::Parse { .. } => "parse",
            Error::RingMismatch => "ring-mismatch",
            Error::DivisionByZero => "division-by-zero",
            Error::ZeroSaturator => "zero-saturator",
            Error::NotMaximal(_) => "non-maximal",
            Error::InfiniteLength => "infinite-length",
            Error::PositiveDimensional(_) => "positive-dimensional",
            Error::DegreeBound { .. } => "degree-bound",
            Error::NotUnivariate => "not-univariate",
            Error::ResourceExhausted(_) => "resource-exhausted",
            Error::ImproperIntersection => "improper-intersection",
            Error::SchemeMismatch => "scheme-mismatch",
            Error::MissingComponents => "missing-components",
            Error::ComponentsIncomplete(_) => "components-incomplete",
            Error::Codimension(_) => "codimension",
            Error::NotFlat => "not-flat",
            Error::GoodPosition(_) => "good-position",
            Error::InvalidMorphism => "invalid-morphism",
            Error::NonUnit(_) => "non-unit",
            Error::Precision(_) => "precision",
            Error::UnsupportedField(_) => "unsupported-field",
            Error::BoundExceeded(_) => "bound-exceeded",
            Error::NonMonotone => "non-monotone",
            Error::NonZeroComposition => "nonzero-composition",
            Error::Invalid(_) => "invalid",
        }
    }

    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::Invalid(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
