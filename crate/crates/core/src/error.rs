use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image list is not a permutation of 0..{degree}")]
    NotAPermutation { degree: usize },

    #[error("group closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("group order {order} is not a power of {p}")]
    NotAPGroup { order: usize, p: u32 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("p = {0} must be a prime greater than 3")]
    BadPrime(u32),

    #[error("invalid group family: {0}")]
    InvalidFamily(String),

    #[error("rank mismatch: expected {expected} exponents, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("automorphism violates the relation {0}")]
    RelationViolated(String),

    #[error("map is not bijective")]
    NotBijective,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not invariant under the automorphism")]
    NotInvariant,

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not contained in the fixed points of the automorphism")]
    NotInFix,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("specs live over different groups")]
    GroupMismatch,

    #[error("row {row} is not a permutation")]
    RowNotPermutation { row: usize },

    #[error("idempotence fails at {0}")]
    NotIdempotent(usize),

    #[error("left distributivity fails at ({0}, {1}, {2})")]
    NotLeftDistributive(usize, usize, usize),

    #[error("table entry out of range at ({row}, {col})")]
    EntryOutOfRange { row: usize, col: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("partition is not a congruence: {0}")]
    NotCongruence(String),

    #[error("subgroup is not in Norm(Q): {0}")]
    NotInNorm(String),

    #[error("quandle is not connected")]
    NotConnected,

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("size {n} exceeds the cap {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
