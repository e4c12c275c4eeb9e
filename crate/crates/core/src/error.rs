use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Every variant maps to a stable integer code (see [`CsbmError::code`]) so
/// that the C ABI can report failures without passing Rust types across.
#[derive(Debug, Error)]
pub enum CsbmError {
    #[error("community prior must have entries in (0,1) summing to 1: {0}")]
    NonStochasticPrior(String),
    #[error("connectivity matrix is not symmetric at ({0},{1})")]
    AsymmetricP(usize, usize),
    #[error("connection probability P[{0}][{1}] = {2} is outside (0,1)")]
    ProbabilityOutOfRange(usize, usize, f64),
    #[error("reveal intensity t must be positive, got {0}")]
    NonPositiveT(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("assignment concentration not reached after {0} resamples")]
    ResampleLimitExceeded(usize),
    #[error("reveal probability t*log(n)/n = {0} exceeds 1")]
    RevealProbabilityExceedsOne(f64),
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("entry {0} must be strictly positive, got {1}")]
    NonPositiveEntry(usize, f64),
    #[error("entry {0} must be nonnegative, got {1}")]
    NegativeEntry(usize, f64),
    #[error("community {0} out of range for k = {1}")]
    CommunityOutOfRange(usize, usize),
    #[error("communities {0} and {1} are indistinguishable (divergence {2:e})")]
    IndistinguishableCommunities(usize, usize, f64),
    #[error("profile set is empty")]
    EmptyProfileSet,
    #[error("anchor dissonance {0} exceeds level {1}")]
    AnchorOutsideRange(f64, f64),
    #[error("encoding parameter y must be positive, got {0}")]
    NonPositiveY(f64),
    #[error("encoding y = {0} lies in the exception set (zero or repeated reduced eigenvalue)")]
    ExceptionSetViolation(f64),
    #[error("no valid encoding parameter found after {0} draws")]
    NoValidEncoding(usize),
    #[error("eigensolver did not converge: {0}")]
    EigensolverFailure(String),
    #[error("spectral bundle and expected spectrum are not aligned: {0}")]
    AlignmentMismatch(String),
    #[error("parameters outside the one-matrix success regime: {0}")]
    RegimeViolation(String),
    #[error("the two encoding parameters must differ, both are {0}")]
    EqualEncodings(f64),
    #[error("too many score vectors ({0} > {1})")]
    TooManyVectors(usize, usize),
    #[error("too many communities for sign enumeration ({0} > {1})")]
    TooManyCommunities(usize, usize),
    #[error("reduced matrix lacks k distinct nonzero eigenvalues at y = {0}")]
    SpectralConditionViolation(f64),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("format violation at line {line}: {msg}")]
    FormatViolation { line: usize, msg: String },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, CsbmError>;

impl CsbmError {
    /// Stable numeric code, used by the C ABI. Zero is reserved for success.
    pub fn code(&self) -> i32 {
        use CsbmError::*;
        match self {
            NonStochasticPrior(_) => 1,
            AsymmetricP(..) => 2,
            ProbabilityOutOfRange(..) => 3,
            NonPositiveT(_) => 4,
            DimensionMismatch(_) => 5,
            InvalidArgument(_) => 6,
            ResampleLimitExceeded(_) => 7,
            RevealProbabilityExceedsOne(_) => 8,
            VertexOutOfRange(..) => 9,
            LengthMismatch(..) => 10,
            NonPositiveEntry(..) => 11,
            NegativeEntry(..) => 12,
            CommunityOutOfRange(..) => 13,
            IndistinguishableCommunities(..) => 14,
            EmptyProfileSet => 15,
            AnchorOutsideRange(..) => 16,
            NonPositiveY(_) => 17,
            ExceptionSetViolation(_) => 18,
            NoValidEncoding(_) => 19,
            EigensolverFailure(_) => 20,
            AlignmentMismatch(_) => 21,
            RegimeViolation(_) => 22,
            EqualEncodings(_) => 23,
            TooManyVectors(..) => 24,
            TooManyCommunities(..) => 25,
            SpectralConditionViolation(_) => 26,
            Io(_) => 27,
            FormatViolation { .. } => 28,
            InvalidConfig(_) => 29,
        }
    }

    /// Short machine-readable name, used in result CSVs.
    pub fn kind(&self) -> &'static str {
        use CsbmError::*;
        match self {
            NonStochasticPrior(_) => "NonStochasticPrior",
            AsymmetricP(..) => "AsymmetricP",
            ProbabilityOutOfRange(..) => "ProbabilityOutOfRange",
            NonPositiveT(_) => "NonPositiveT",
            DimensionMismatch(_) => "DimensionMismatch",
            InvalidArgument(_) => "InvalidArgument",
            ResampleLimitExceeded(_) => "ResampleLimitExceeded",
            RevealProbabilityExceedsOne(_) => "RevealProbabilityExceedsOne",
            VertexOutOfRange(..) => "VertexOutOfRange",
            LengthMismatch(..) => "LengthMismatch",
            NonPositiveEntry(..) => "NonPositiveEntry",
            NegativeEntry(..) => "NegativeEntry",
            CommunityOutOfRange(..) => "CommunityOutOfRange",
            IndistinguishableCommunities(..) => "IndistinguishableCommunities",
            EmptyProfileSet => "EmptyProfileSet",
            AnchorOutsideRange(..) => "AnchorOutsideRange",
            NonPositiveY(_) => "NonPositiveY",
            ExceptionSetViolation(_) => "ExceptionSetViolation",
            NoValidEncoding(_) => "NoValidEncoding",
            EigensolverFailure(_) => "EigensolverFailure",
            AlignmentMismatch(_) => "AlignmentMismatch",
            RegimeViolation(_) => "RegimeViolation",
            EqualEncodings(_) => "EqualEncodings",
            TooManyVectors(..) => "TooManyVectors",
            TooManyCommunities(..) => "TooManyCommunities",
            SpectralConditionViolation(_) => "SpectralConditionViolation",
            Io(_) => "IoFailure",
            FormatViolation { .. } => "FormatViolation",
            InvalidConfig(_) => "InvalidConfig",
        }
    }
}
