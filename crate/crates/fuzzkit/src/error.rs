use thiserror::Error;

/// Errors produced by fuzzy set construction and the reasoning operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("grade {0} is outside [0, 1]")]
    GradeOutOfRange(f64),

    #[error("universe {0:?} has no points")]
    EmptyUniverse(String),

    #[error("duplicate point label {label:?} in universe {universe:?}")]
    DuplicatePointLabel { universe: String, label: String },

    #[error("universe {0:?} mixes points with and without numeric coordinates")]
    PartialCoordinates(String),

    #[error("coordinates of universe {0:?} are not strictly increasing")]
    CoordinatesNotIncreasing(String),

    #[error("universe mismatch: {left:?} vs {right:?}")]
    UniverseMismatch { left: String, right: String },

    #[error("grade count {grades} does not match point count {points} of universe {universe:?}")]
    GradeCountMismatch {
        universe: String,
        points: usize,
        grades: usize,
    },

    #[error("cannot normalize an all-zero fuzzy set")]
    NormalizeZeroSet,

    #[error("scalar factor {factor} overflows: height {height} would exceed 1")]
    ScalarOverflow { factor: f64, height: f64 },

    #[error("kernel has no image for support point {0:?}")]
    KernelMissingImage(String),

    #[error("universe {0:?} has no numeric coordinates")]
    NonNumericUniverse(String),

    #[error("operation requires a set that is not all zero")]
    AllZeroSet,

    #[error("no rule firings supplied")]
    EmptyFirings,

    #[error("total weight is zero; weighted mean is undefined")]
    ZeroTotalWeight,

    #[error("no input supplied for rule slot {0:?}")]
    MissingInput(String),

    #[error("singleton coordinate {coord} is outside the range of universe {universe:?}")]
    CoordinateOutOfRange { universe: String, coord: f64 },

    #[error("rule base is empty")]
    EmptyRuleBase,

    #[error("assignment length {got} does not match formula arity {arity}")]
    ArityMismatch { arity: usize, got: usize },

    #[error("variable index {index} outside declared arity {arity}")]
    VariableOutOfRange { arity: usize, index: usize },

    #[error("unsupported formula node for this operation: {0}")]
    UnsupportedNode(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent constraint atom: {0}")]
    InconsistentAtom(String),

    #[error("unknown word {0:?} in noun phrase")]
    UnknownWord(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("name {0:?} is not bound")]
    UnboundName(String),

    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("partition must satisfy 0 = a_0 < a_1 < … < a_n = 1")]
    InvalidPartition,

    #[error("class index {index} outside 1..={classes}")]
    ClassIndexOutOfRange { index: usize, classes: usize },
}

impl FuzzyError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        FuzzyError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, FuzzyError>;
