use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quantum integer [{0}] is undefined for nonpositive arguments")]
    NonPositiveQuantumInteger(i64),
    #[error("limit at y = -1 is a pole")]
    PoleAtMinusOne,
    #[error("quotient is not a Laurent polynomial")]
    NotPolynomial,
    #[error("substitution q = i gives a nonreal value")]
    NonRealAtI,
    #[error("degenerate polygon")]
    DegeneratePolygon,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("polygon parse error: {0}")]
    PolygonParse(String),
    #[error("curve is not trivalent")]
    NotTrivalent,
    #[error("curve has a flat vertex")]
    FlatVertex,
    #[error("unfixed end of weight {0} > 1")]
    UnfixedEndWeight(u64),
    #[error("real part of the curve is empty")]
    EmptyRealPart,
    #[error("vanishing conditions unmet: {0}")]
    VanishingConditionsUnmet(String),
    #[error("dimension mismatch: conditions have total {got}, expected {expected}")]
    DimensionMismatch { expected: i64, got: i64 },
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("tangency profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
