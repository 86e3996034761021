use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator must be >= 1")]
    InvalidDenominator,

    #[error("beta0 + beta1 = 0: the base wavenumber k0 is undefined")]
    UndefinedK0,

    #[error("(1+b0*b1)/(b0+b1) = {re}{im:+}i is not real in [-1,1]; complex spectra are unsupported")]
    ComplexSpectrumUnsupported { re: f64, im: f64 },

    #[error("boundary pair is periodic-degenerate (gamma = 1); use the periodic solver")]
    PeriodicDegenerate,

    #[error("eigenfunction normalization tau degenerates for this boundary pair")]
    DegenerateNormalization,

    #[error("Robin parameter b must lie in [0,1], got {0}")]
    InvalidRobinParameter(f64),

    #[error("b = {0} is a Neumann/Dirichlet limit; use the direct eigenfunction solver")]
    RobinLimitCase(f64),

    #[error("m_b = b/(1-b) = {0} exceeds the overflow guard of 700")]
    ParameterOverflow(f64),

    #[error("invalid quasi-periodicity parameter: {0}")]
    InvalidTheta(String),

    #[error("{n} samples cannot resolve window radius {m} (need at least {need})")]
    AliasingRisk { n: usize, m: usize, need: usize },

    #[error("grid of {n} samples is too coarse: {reason}")]
    GridTooCoarse { n: usize, reason: &'static str },

    #[error("incompatible grids: {0}")]
    GridMismatch(String),

    #[error("fewer than 4 dyadic scales in the requested range")]
    InsufficientScales,

    #[error("coefficient tail is identically zero: decay exponent undefined")]
    UndefinedDecay,

    #[error("invalid piecewise-constant data: {0}")]
    InvalidPiecewise(String),

    #[error("invalid grid data: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
