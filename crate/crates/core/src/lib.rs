//! Spectral solvers and revival operators for linear dispersive equations on an interval.
//!
//! The crate models the periodic, pseudo-periodic, quasi-periodic and Robin boundary
//! value problems for the linear Schrödinger and Airy equations, the Gauss-sum revival
//! operators that describe their solutions at rational times `t = 2πp/q`, and the
//! closed-form correspondence formulas that rebuild each non-periodic solution out of
//! purely periodic ones. Every correspondence engine in [`correspondence`] can be
//! cross-checked against the direct eigenfunction series in [`spectral`], and
//! [`analysis`] provides the jump/fractal-dimension diagnostics used to observe the
//! rational/irrational time dichotomy.

pub mod analysis;
pub mod config;
pub mod correspondence;
pub mod domain;
pub mod error;
pub mod expr;
pub mod harmonic;
pub mod io;
pub mod phase;
pub mod revival;
pub mod spectral;

pub use error::{Error, Result};

/// Double-precision complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub use domain::{
    BoundaryFlags, BoundarySpec, FourierCoeffs, GridFunction, InitialCondition, IntPolynomial,
    RationalTime, ThetaFraction,
};
