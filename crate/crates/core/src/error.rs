use alloc::string::String;

use crate::rational::Rational;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(Rational),
    #[error("graph has zero total weight; the approximation ratio is undefined")]
    ZeroTotalWeight,
    #[error("instance of size {size} exceeds the configured limit {limit}")]
    InstanceTooLarge { size: usize, limit: usize },
    #[error("empty input list")]
    EmptyList,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("value {0} is outside [0, 1]")]
    OutOfUnitInterval(Rational),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),
    #[error("invalid 2-AND instance: {0}")]
    InvalidInstance(String),
    #[error("function is not antisymmetric")]
    NotAntisymmetric,
    #[error("solver stopped: {0}")]
    Solver(String),
    #[error("numerically singular basis")]
    SingularBasis,
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
