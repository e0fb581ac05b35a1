use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,

    #[error("quaternion is not unit length (|q| = {norm})")]
    NotUnit { norm: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not skew-symmetric (deviation {deviation:e})")]
    NotSkewSymmetric { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    Singular { pivot: f64, threshold: f64 },

    #[error("complex matrix lacks quaternion adjoint block structure (deviation {deviation:e})")]
    AdjointStructure { deviation: f64 },

    #[error("complex adjoint spectrum does not pair (gap {gap:e} exceeds {tol:e})")]
    PairingGap { gap: f64, tol: f64 },

    #[error("positive eigenvalue cluster near {value:e} has odd size {count}")]
    OddCluster { value: f64, count: usize },

    #[error("all-zero skew triple: Z != O required")]
    ZeroTriple,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
