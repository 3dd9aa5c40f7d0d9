use alloc::string::String;

/// Errors raised by the exact-algebra substrate and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mismatched cyclotomic primes: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("polynomial is not homogeneous of the required degree: {0}")]
    NotHomogeneous(String),
    #[error("unsupported field order q = {0}")]
    UnsupportedField(u32),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("field element {value} out of range for q = {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("invalid error label: {0}")]
    InvalidLabel(String),
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("stabilizer closure contains a nontrivial scalar multiple of the identity")]
    InconsistentPhase,
    #[error("polynomial is not invariant under sigma")]
    NotInvariant,
    #[error("no expression found: {0}")]
    NoExpression(String),
    #[error("degree {degree} exceeds the expression cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("unsupported invariant case: {0}")]
    UnsupportedCase(String),
}

pub type Result<T> = core::result::Result<T, Error>;
