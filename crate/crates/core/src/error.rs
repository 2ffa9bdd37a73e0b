use thiserror::Error;

/// Errors raised by network validation, clustering and the file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix shape does not match labels: {0}")]
    ShapeMismatch(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("network must contain at least one node")]
    EmptyNetwork,
    #[error("diagonal entry ({row}, {col}) is {value}, expected 0")]
    NonZeroDiagonal { row: usize, col: usize, value: f64 },
    #[error("off-diagonal entry ({row}, {col}) is {value}, expected a positive value")]
    NonPositiveOffDiagonal { row: usize, col: usize, value: f64 },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("scale factor {0} must be positive and finite")]
    NonPositiveScale(f64),

    #[error("ultrametric is not symmetric at ({0}, {1})")]
    NotSymmetric(String, String),
    #[error("ultrametric identity violated at ({0}, {1})")]
    IdentityViolation(String, String),
    #[error("strong triangle inequality violated: u({0}, {1}) > max(u({0}, {2}), u({2}, {1}))")]
    StrongTriangleViolation(String, String, String),
    #[error("malformed merge sequence: {0}")]
    MalformedMergeSequence(String),
    #[error("resolution {0} must be non-negative")]
    NegativeResolution(f64),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("block must contain at least one node")]
    EmptyBlock,

    #[error("hop bound t = {0} must be at least 2")]
    InvalidHopBound(usize),
    #[error("single linkage requires a symmetric network, asymmetric at ({0}, {1})")]
    AsymmetricInput(String, String),
    #[error("grafting threshold beta = {0} must be positive and finite")]
    NonPositiveBeta(f64),

    #[error("representer is not weakly connected")]
    NotWeaklyConnected,
    #[error("arc {from} -> {to} has weight {weight}, expected a positive finite value")]
    NonPositiveArc { from: String, to: String, weight: f64 },
    #[error("representer needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("representer has no arcs")]
    NoArcs,
    #[error("self arc on `{0}` is not allowed")]
    SelfArc(String),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(String, String),
    #[error("representer family must have at least one member")]
    EmptyFamily,
    #[error("cycle length {0} must be at least 2")]
    InvalidLength(usize),
    #[error("ratio r = {0} must be greater than 1")]
    InvalidRatio(f64),
    #[error("node map does not match representer/network: {0}")]
    InvalidNodeMap(String),
    #[error("map enumeration needs {maps} evaluations, budget is {budget}")]
    ComplexityGuard { maps: u128, budget: u64 },

    #[error("relation is not a correspondence: {0}")]
    NotTotal(String),
    #[error("exact distance needs {bits} relation bits, cap is {cap}")]
    TooLargeForExact { bits: usize, cap: usize },
    #[error("correspondence count overflows for sizes {0} x {1}")]
    Overflow(usize, usize),

    #[error("map is not dissimilarity reducing at ({0}, {1})")]
    NotReducing(String, String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sector `{0}` has no inputs (zero column sum)")]
    ZeroColumn(String),
    #[error("zero use entry from `{0}` to `{1}`")]
    ZeroUseEntry(String, String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("{location}: {source}")]
    Located {
        location: String,
        #[source]
        source: Box<Error>,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn located(self, location: impl Into<String>) -> Self {
        Error::Located {
            location: location.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
