use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("degree-inconsistent matrix: {0}")]
    DegreeInconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("module is not of finite length: {0}")]
    NotFiniteLength(String),
    #[error("zero module where a nonzero one is required")]
    ZeroModule,
    #[error("characteristic guard violated: algebra dimension {dim} >= p = {p}; raise the prime")]
    CharacteristicGuard { dim: usize, p: u32 },
    #[error("algebra is not local")]
    NotLocal,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("module is decomposable")]
    Decomposable,
    #[error("module has depth zero")]
    DepthZero,
    #[error("ring has dimension zero")]
    DimensionZero,
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
