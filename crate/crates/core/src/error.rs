use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::MAX_DIM)]
    DimOutOfRange(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("vector index {index} is outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("grade {grade} is outside 0..={dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("expected a homogeneous grade-1 multivector")]
    NotAVector,

    #[error("tensor is not antisymmetric (deviation {deviation:e})")]
    NotAntisymmetric { deviation: f64 },

    #[error("tensor rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("tensor rank {rank} exceeds dimension {dim}")]
    RankTooLarge { rank: usize, dim: usize },

    #[error("matrix must be {dim}x{dim}")]
    NotSquare { dim: usize },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("gram matrix is not positive definite: Cholesky pivot {pivot} is {value:e}")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("basis vectors are linearly dependent or ill-conditioned")]
    SingularBasis,

    #[error("Cayley tables are limited to dimension {max}, got {dim}", max = crate::cayley::TABLE_MAX_DIM)]
    TableTooLarge { dim: usize },

    #[error("invalid metric description: {0}")]
    Format(String),
}
