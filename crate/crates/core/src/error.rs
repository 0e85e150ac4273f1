use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a supported prime (2 <= p <= 97)")]
    InvalidCharacteristic(u32),
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("relation `{0}` has a nonzero constant term")]
    RelationNotInMaximalIdeal(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("Frobenius exponent e must be at least 1")]
    ZeroFrobeniusExponent,
    #[error("e = {e} is not a multiple of the generating degree {e0}")]
    DegreeNotMultiple { e: u32, e0: u32 },
    #[error("pair is not effective in degree e = {0}: Fedder ideal is empty")]
    NonEffective(u32),
    #[error("invalid Cartier data: {0}")]
    InvalidCartier(String),
    #[error("quotient S/(m^[q] + I) is not finite-dimensional")]
    InfiniteTruncation,
    #[error("operation requires a regular ambient (no relations): {0}")]
    RequiresRegular(String),
    #[error("basis does not close: {0}")]
    BasisDoesNotClose(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("no free generator of Hom_R(S,R) found among constant combinations of dual basis elements")]
    NoFreeGenerator,
    #[error("section is not an S-multiple of the free generator")]
    NotAMultiple,
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
    #[error("pair is not F-pure: splitting prime is the unit ideal")]
    NotFPure,
}

pub type Result<T> = std::result::Result<T, Error>;
