//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("parameter `{0}` is not defined in this context")]
    MissingParameter(String),
    #[error("values belong to different phase contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {0} exceeds the supported range")]
    ExponentTooLarge(u64),
    #[error("cannot differentiate in parameter `{0}`; only phase variables are admissible")]
    ParameterDerivative(String),
    #[error("cannot substitute for parameter `{0}`; only phase variables are admissible")]
    ParameterSubstitution(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution produced a zero denominator (bindings for {0})")]
    SubstitutionPole(String),
    #[error("variable `{0}` is not bound at the evaluation point")]
    UnboundVariable(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("expression is not polynomial in the momentum variables")]
    NotPolynomialInMomenta,
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("metric is singular (determinant is identically zero)")]
    SingularMetric,
    #[error("metric determinant has no rational square root")]
    NoRationalSqrt,
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("point transformation has an identically singular Jacobian")]
    SingularJacobian,
    #[error("forward and inverse maps do not compose to the identity")]
    InverseMismatch,
    #[error("cotangent lift does not preserve the tautological one-form")]
    OneFormViolation,
    #[error("operator does not preserve the vertical polarization")]
    NotPolarizationPreserving,
    #[error("restricted operator has derivative order {0}; only order <= 2 is discretizable")]
    OrderTooHigh(usize),
    #[error("operation requires a one-dimensional base space, got n = {0}")]
    NotOneDimensional(usize),
    #[error("not a self-adjoint second-order form: {0}")]
    NonSymmetricCase(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("eigenvalue solve failed to converge within {0} iterations")]
    ConvergenceFailure(usize),
    #[error("value is not real at the sample point (imaginary part {0})")]
    NotReal(f64),
}
