use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index must be nonzero")]
    ZeroIndex,
    #[error("index {index} is outside the ranks of {signature}")]
    IndexOutOfRank { index: i32, signature: String },
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    #[error("element is not homogeneous in the Z2-grading")]
    NotHomogeneous,
    #[error("weight is not in h^vee for {0}")]
    InvalidWeight(String),
    #[error("{0} is not a root of {1}")]
    NotARoot(String, String),
    #[error("root {0} is not odd and isotropic")]
    NotOddIsotropic(String),
    #[error("operation needs finite ranks; pass a truncation")]
    InfiniteRank,
    #[error("operation needs both ranks infinite")]
    FiniteRank,
    #[error("element is outside the acting algebra {0}")]
    OutsideActingAlgebra(String),
    #[error("vector is outside the module support")]
    OutsideModule,
    #[error("wrong module kind: expected {0}")]
    WrongKind(String),
    #[error("degree cap {0} exceeds the supported maximum {1}")]
    CapExceeded(usize, usize),
    #[error("coset does not meet the module support")]
    EmptyCoset,
    #[error("support is not a product set")]
    NonProductSupport,
    #[error("class is not of spinor or oscillator type")]
    NotTwinType,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid pair sequence: {0}")]
    InvalidPairs(String),
    #[error("boxes differ")]
    BoxMismatch,
    #[error("class set is infinite")]
    InfiniteClassSet,
    #[error("filtration layer is not a single class")]
    NonSimpleLayer,
    #[error("weight space of dimension {0} at {1}")]
    Multiplicity(usize, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
