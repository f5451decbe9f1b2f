use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("shape mismatch: series over {left_vars} variables at degree {left_degree} vs {right_vars} variables at degree {right_degree}")]
    ShapeMismatch { left_vars: usize, left_degree: u32, right_vars: usize, right_degree: u32 },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("multi-index has length {got}, expected {expected}")]
    IndexLength { got: usize, expected: usize },
    #[error("total degree {got} exceeds truncation degree {max}")]
    DegreeOutOfRange { got: u32, max: u32 },
    #[error("series must have zero constant term")]
    NonZeroConstantTerm,
    #[error("series is not invertible: constant term is zero")]
    NotAUnit,
    #[error("logarithm needs constant term 1, got {0}")]
    ConstantTermNotOne(String),
    #[error("expected {expected} series, got {got}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("matrix must be square with consistent rows")]
    NotSquare,
    #[error("matrix size {size} exceeds the determinant limit {limit}")]
    MatrixTooLarge { size: usize, limit: usize },
    #[error("matrix constant term is not the identity")]
    NotNearIdentity,
}
