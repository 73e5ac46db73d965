use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the evaluation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("log-gamma pole: z = {0} is a non-positive integer")]
    Pole(Complex64),
    #[error("Kummer series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("1F1 parameter b = {0} is a non-positive integer")]
    ParameterPole(Complex64),
    #[error("operation does not support this oscillator kind")]
    UnsupportedKind,
    #[error("argument outside the operation domain: {0}")]
    Domain(String),
    #[error("quadrature did not reach tolerance: estimated error {estimate:.3e} > {target:.3e}")]
    Quadrature { estimate: f64, target: f64 },
    #[error("transformation seed vanishes near x = {0}")]
    SeedZero(f64),
    #[error("Wronskian vanishes near x = {0}")]
    WronskianZero(f64),
    #[error("w(x) vanishes near x = {0}")]
    WZero(f64),
    #[error("factorization energy {eps} is excluded: {reason}")]
    ExcludedEpsilon { eps: Complex64, reason: &'static str },
    #[error("non-finite value produced at x = {0}")]
    NonFinite(f64),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
