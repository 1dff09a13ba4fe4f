use thiserror::Error;

use crate::algebra::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("field mismatch: expected {expected:?}, got {actual:?}")]
    FieldMismatch { expected: Field, actual: Field },

    #[error("operation requires the real field, got {0:?}")]
    RequiresRealField(Field),

    #[error("vector is not negative under the form (<z,z> = {0})")]
    NotNegative(f64),

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("degenerate geodesic segment: endpoints coincide")]
    DegenerateSegment,

    #[error("degenerate root problem: alpha = beta = 0")]
    DegenerateRoots,

    #[error("metric is not of negative type: Gram eigenvalue {eigenvalue}")]
    NotNegativeType { eigenvalue: f64 },

    #[error("enumeration budget exceeded: {count} vectors > {budget}; try bound <= {suggested_bound} or fewer points")]
    BudgetExceeded {
        count: u128,
        budget: u128,
        suggested_bound: u32,
    },

    #[error("mixed point types or spaces in one configuration")]
    MixedSpaces,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("isometry construction failed after {0} attempts")]
    IsometryConstruction(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
