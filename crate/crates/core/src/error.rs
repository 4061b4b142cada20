use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is not bound by the substitution")]
    UnboundVariable(String),
    #[error("negative exponent on non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("cannot invert `{0}`: only Laurent monomials are invertible")]
    NotInvertible(String),
    #[error("requested truncation {requested} exceeds the available precision {available}")]
    TruncationTooHigh { requested: u32, available: u32 },
    #[error("classical ideal of `{ring}` is not zero-dimensional (no leading term is a pure power of `{var}`)")]
    NotZeroDimensional { ring: String, var: String },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("not a linear combination of degree-2 generators: {0}")]
    NotDegreeTwo(String),
    #[error("Gröbner step cap of {0} reductions reached")]
    StepCap(u64),
    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
    #[error("power series evaluation did not stabilise within {0} terms")]
    NoConvergence(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
