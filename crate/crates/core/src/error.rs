use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("unknown element name `{0}`")]
    UnknownElementName(String),
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("carrier of {size} elements exceeds the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("no meet exists for the given elements")]
    NoMeet,
    #[error("meet of the empty set requires a top element")]
    EmptyWithoutTop,
    #[error("the given set is not an upset")]
    NotAnUpset,
    #[error("the poset is not a meet semilattice")]
    NotMeetSemilattice,
    #[error("the poset is not a lattice")]
    NotLattice,
    #[error("the algebra is not distributive")]
    NotDistributive,
    #[error("the upset is not an n-filter")]
    NotAnNFilter,
    #[error("no prime decomposition: {0}")]
    NoDecomposition(String),
    #[error("the upset is not prime")]
    NotPrime,
    #[error("the filter and the ideal are not disjoint")]
    NotDisjoint,
    #[error("the given set is not an ideal")]
    NotIdeal,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("homomorphism is not strict")]
    NotStrict,
    #[error("the selected elements do not form a subalgebra")]
    NotSubalgebra,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("designated set must be non-empty for this signature")]
    EmptyDesignated,
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("rule has {found} variables, at most {max} supported")]
    TooManyVariables { found: usize, max: usize },
    #[error("splitting dichotomy violated: {0}")]
    DichotomyViolated(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
