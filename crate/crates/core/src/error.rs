use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,

    #[error("non-finite input")]
    NonFinite,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("too few samples: {got} (need at least {min})")]
    TooFewSamples { got: usize, min: usize },

    #[error("bin count must be at least 2, got {0}")]
    BinCountTooSmall(usize),

    #[error("no valid bin pairs")]
    NoValidBinPairs,

    /// Accumulated rounding should never push MI below -1e-12; anything
    /// larger in magnitude means the histogram itself is inconsistent.
    #[error("mutual information is negative beyond rounding tolerance: {0}")]
    NegativeMutualInformation(f64),

    #[error("window larger than dataset")]
    WindowTooLarge,

    #[error("window size must be at least 4, got {0}")]
    WindowTooSmall(usize),

    #[error("stride must be at least 1")]
    ZeroStride,

    #[error("window index {index} out of range (profile has {windows} windows)")]
    WindowIndexOutOfRange { index: usize, windows: usize },

    #[error("undefined correlation")]
    UndefinedCorrelation,

    #[error("coefficient count mismatch for {class}: expected {expected}, got {got}")]
    CoefficientArity {
        class: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("gaussian width must be positive")]
    NonPositiveWidth,

    #[error("invalid generation range: x_low must be below x_high")]
    InvalidRange,

    #[error("noise standard deviation must be nonnegative")]
    NegativeNoise,

    #[error("incompatible embeddings")]
    IncompatibleEmbeddings,

    #[error("degenerate embedding")]
    DegenerateEmbedding,

    #[error("unlabeled embedding at index {0}")]
    UnlabeledEmbedding(usize),

    #[error("class {0} has fewer than 2 embeddings")]
    ClassTooSmall(&'static str),

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("k must be between 1 and the training-set size, got {k} with {train} embeddings")]
    InvalidNeighborCount { k: usize, train: usize },

    #[error("zero variance")]
    ZeroVariance,

    #[error("need at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },

    #[error("unknown relationship class: {0}")]
    UnknownClass(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
