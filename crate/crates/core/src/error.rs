use thiserror::Error;

/// Where a presentation file stopped making sense.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("generator `{0}` is not declared on the gens line")]
    UndeclaredGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("zero exponent")]
    ZeroExponent,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("`gens` must be the first directive and appear at most once")]
    MisplacedGens,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid Milnor group parameters: {0}")]
    InvalidMilnorSpec(String),
    #[error("({p}, {q}) is not a {predicate} pair")]
    NotZaremba { p: u64, q: u64, predicate: &'static str },
    #[error("x = {a}·log2(x) + {c} has no real root")]
    NoRoot { a: f64, c: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
