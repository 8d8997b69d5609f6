use thiserror::Error;

/// Errors raised while building or analysing graded rings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid basis name `{0}`")]
    InvalidName(String),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("unsupported characteristic {0}")]
    BadCharacteristic(u64),
    #[error("additive order {order} of `{name}` does not divide the characteristic")]
    BadOrder { name: String, order: u64 },
    #[error("coefficient `{0}` is not representable")]
    BadCoefficient(String),
    #[error("periodicity degree must be positive")]
    BadPeriod,
    #[error("product {left}*{right} has a term in degree {found}, expected {expected}")]
    DegreeMismatch {
        left: usize,
        right: usize,
        found: i64,
        expected: i64,
    },
    #[error("product {left}*{right} is not compatible with the additive orders")]
    OrderViolation { left: usize, right: usize },
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("graded commutativity fails on basis pair ({0}, {1})")]
    CommutativityViolation(usize, usize),
    #[error("no two-sided unit of degree 0")]
    NoUnit,
    #[error("declared unit is not a two-sided identity")]
    BadUnit,
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("ring is not local")]
    NotLocal,
    #[error("primitive idempotent refinement did not terminate")]
    NotSemiperfect,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration of {0} elements exceeds the configured cap")]
    SizeCapExceeded(u128),
}

/// Errors from the finite-module layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("map does not respect the relations of its source")]
    IllFormedMap,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("ring is not quasi-Frobenius")]
    NotQuasiFrobenius,
    #[error("brute-force search over {0} candidates exceeds the size cap")]
    SizeCapExceeded(u128),
    #[error("modules must live over a finite ungraded ring")]
    NotFiniteUngraded,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors from the differential graded layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgError {
    #[error("parity obstruction: {0}")]
    ParityObstruction(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("u-exponent {found} exceeds the weight bound {bound}")]
    WeightOverflow { found: u32, bound: u32 },
    #[error("window of width {width} needs a weight bound of at least {needed}, got {bound}")]
    WindowTooWideForWeightBound { width: i64, needed: u32, bound: u32 },
    #[error("map is not a chain map at generator {0}")]
    NotChainMap(usize),
    #[error("differential does not square to zero at generator {0}")]
    NotDifferential(usize),
    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        found: i64,
        expected: i64,
    },
    #[error("input is not a map of free modules: {0}")]
    NotProjectiveInput(String),
    #[error("cannot lift entry ({row}, {col})")]
    LiftFailure { row: usize, col: usize },
    #[error("homology class in degree {degree} escaped the weight truncation")]
    Truncation { degree: i64 },
}

/// Errors from the stable-module / generating hypothesis layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenHypError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("empty degree window")]
    WindowEmpty,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("Tate cohomology does not have the expected shape: {0}")]
    ShapeMismatch(String),
}
