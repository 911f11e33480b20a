use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("determinant is not a nonzero constant")]
    NonConstantDeterminant,
    #[error("lower parameter c = {0} is a pole of the terminating series")]
    PoleInC(String),
    #[error("C + {0}·I is singular")]
    SingularStep(usize),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("closing relation violated for mu = {0}")]
    ClosingViolated(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("argument {0} outside the domain (-1, 1]")]
    OutOfDomain(f64),
    #[error("discriminant {0} is a perfect square")]
    PerfectSquareDiscriminant(String),
    #[error("quadrature needs at least {required} nodes, got {given}")]
    InsufficientNodes { required: usize, given: usize },
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
