use thiserror::Error;

/// Errors produced by the symbolic layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable mismatch: {0}")]
    VarMismatch(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVar(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("`{divisor}` does not divide `{dividend}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("square-free part of the zero polynomial is undefined")]
    SquarefreeOfZero,
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("cannot homogenize: degree {deg} exceeds target {target}")]
    DegreeTooLarge { deg: u32, target: u32 },
    #[error("homogenization variable `{0}` already occurs in the polynomial")]
    HomogenizationVarOccurs(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid vector field: {0}")]
    InvalidField(String),
    #[error("invalid linear system: {0}")]
    InvalidSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the first extactic curve vanishes identically: a first integral of degree 1 exists and every line is invariant")]
    FirstExtacticVanishes,
    #[error("the lines-through-point determinant vanishes identically: a pencil of invariant lines passes through the point")]
    PencilThroughPoint,
}

pub type Result<T> = std::result::Result<T, Error>;
