//! Fourier analysis and synthesis on `(0, 2π)` plus the geometric primitives
//! acting on coefficient windows: translation, reflection, even/odd extension
//! of half-interval data, and the `2π`-periodic convolution.
//!
//! Analysis is exact (closed-form antiderivatives) for piecewise-constant and
//! harmonic-sum data; sampled data goes through the trapezoidal transform,
//! which is spectrally accurate for smooth periodic samples. Translation and
//! convolution act in coefficient space where they are exact modulo
//! truncation; grid-space translation is only offered for whole-grid shifts
//! (`GridFunction::rotate`).

use crate::domain::{FourierCoeffs, GridFunction, InitialCondition};
use crate::error::{Error, Result};
use crate::phase::{expi, integral_exp_shifted, unit_root};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// `√(2π)`, the normalization of the eigenfunctions `e_m = e^{imx}/√(2π)`.
pub const SQRT_TAU: f64 = 2.506628274631000502415765284811;

/// Default coefficient window radius.
pub const DEFAULT_WINDOW: usize = 256;
/// Default synthesis grid size.
pub const DEFAULT_GRID: usize = 4096;

/// `∫_0^L u(x)·e^{z(x-x0)} dx`, exact for piecewise-constant and harmonic-sum
/// data. The shift `x0` keeps real-exponent integrands bounded when the data
/// lives left of `x0`.
pub fn exp_integral_shifted(u: &InitialCondition, z: C64, x0: f64, length: f64) -> C64 {
    match u {
        InitialCondition::PiecewiseConstant { .. } => u
            .intervals(length)
            .into_iter()
            .map(|(a, b, v)| v * integral_exp_shifted(z, a, b, x0))
            .sum(),
        InitialCondition::HarmonicSum { terms } => terms
            .iter()
            .map(|(m, a)| {
                let im = C64::new(0.0, *m as f64);
                a * expi(*m as f64 * x0) * integral_exp_shifted(im + z, 0.0, length, x0)
            })
            .sum(),
        InitialCondition::Sampled(g) => {
            // trapezoid with the periodic wrap value u(L) = u(0)
            let h = g.step();
            let mut acc = C64::new(0.0, 0.0);
            for (n, s) in g.samples().iter().enumerate() {
                acc += s * (z * (n as f64 * h - x0)).exp();
            }
            let end = g.samples()[0] * (z * (length - x0)).exp();
            let start = g.samples()[0] * (z * (-x0)).exp();
            acc += (end - start) * 0.5;
            acc * h
        }
    }
}

/// `∫_0^L u(x) e^{zx} dx`.
pub fn exp_integral(u: &InitialCondition, z: C64, length: f64) -> C64 {
    exp_integral_shifted(u, z, 0.0, length)
}

/// Generalized Fourier coefficient `(1/√(2π))·∫_0^L u(x) e^{-ikx} dx` at a
/// possibly non-integer frequency `k`.
pub fn gen_coeff(u: &InitialCondition, k: f64, length: f64) -> C64 {
    exp_integral(u, C64::new(0.0, -k), length) / SQRT_TAU
}

/// Fourier coefficients `c(m) = ⟨u, e_m⟩` on `(0, 2π)` for `|m| ≤ m_max`.
pub fn analyze(u: &InitialCondition, m_max: usize) -> Result<FourierCoeffs> {
    if m_max == 0 {
        return Err(Error::InvalidGrid("window radius must be >= 1".into()));
    }
    match u {
        InitialCondition::HarmonicSum { terms } => {
            // orthogonality: ⟨e^{im'x}, e_m⟩ = √(2π)·δ_{m,m'}
            let mut c = FourierCoeffs::zeros(m_max);
            for (m, a) in terms {
                if m.unsigned_abs() as usize <= m_max {
                    c.set(*m, c.get(*m) + a * SQRT_TAU);
                }
            }
            Ok(c)
        }
        InitialCondition::PiecewiseConstant { .. } => {
            Ok(FourierCoeffs::from_fn(m_max, |m| {
                gen_coeff(u, m as f64, TAU)
            }))
        }
        InitialCondition::Sampled(g) => {
            let n = g.len();
            if n < 2 * m_max + 1 {
                return Err(Error::AliasingRisk {
                    n,
                    m: m_max,
                    need: 2 * m_max + 1,
                });
            }
            let h = g.step();
            let m0 = m_max as i64;
            let values: Vec<C64> = (-m0..=m0)
                .into_par_iter()
                .map(|m| {
                    let step = expi(-(m as f64) * h);
                    let mut w = C64::new(1.0, 0.0);
                    let mut acc = C64::new(0.0, 0.0);
                    for s in g.samples() {
                        acc += s * w;
                        w *= step;
                    }
                    acc * h / SQRT_TAU
                })
                .collect();
            FourierCoeffs::from_values(m_max, values)
        }
    }
}

/// Synthesize `Σ_{|m|≤M} c(m)·e_m(x_n)` on the uniform N-grid of `(0, 2π)`.
pub fn synthesize(c: &FourierCoeffs, n: usize) -> Result<GridFunction> {
    synthesize_on(c, n, TAU)
}

/// Synthesis on a grid of a given length (the modes stay `e^{imx}/√(2π)`).
pub fn synthesize_on(c: &FourierCoeffs, n: usize, length: f64) -> Result<GridFunction> {
    let m_max = c.window_radius();
    if n < 2 * m_max + 1 {
        return Err(Error::GridTooCoarse {
            n,
            reason: "need at least 2M+1 samples to carry the window",
        });
    }
    let m0 = m_max as i64;
    let coeffs: Vec<C64> = c.iter().map(|(_, v)| v).collect();
    let samples: Vec<C64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let x = j as f64 * length / n as f64;
            let step = expi(x);
            let mut w = expi(-(m0 as f64) * x);
            let mut acc = C64::new(0.0, 0.0);
            for v in &coeffs {
                acc += v * w;
                w *= step;
            }
            acc / SQRT_TAU
        })
        .collect();
    GridFunction::new(length, samples)
}

/// Translation operator `𝒯_s` in coefficient space: `c'(m) = e^{-ims}·c(m)`.
pub fn translate(c: &FourierCoeffs, s: f64) -> FourierCoeffs {
    FourierCoeffs::from_fn(c.window_radius(), |m| c.get(m) * expi(-(m as f64) * s))
}

/// Translation by the exact rational shift `s = 2πk/q` (phases reduced in
/// integer arithmetic).
pub fn translate_rational(c: &FourierCoeffs, k: i64, q: u64) -> FourierCoeffs {
    FourierCoeffs::from_fn(c.window_radius(), |m| {
        c.get(m) * unit_root(-(m as i128) * k as i128, q)
    })
}

/// Reflection `f ↦ f♮`, `f♮(x) = f(2π-x)`: `c'(m) = c(-m)`.
pub fn reflect(c: &FourierCoeffs) -> FourierCoeffs {
    FourierCoeffs::from_fn(c.window_radius(), |m| c.get(-m))
}

/// `2π`-periodic convolution with the `1/√(2π)` prefactor, performed in
/// coefficient space: `(f∗g)^(m) = f̂(m)·ĝ(m)` on the common window.
pub fn convolve(f: &FourierCoeffs, g: &FourierCoeffs) -> FourierCoeffs {
    let m_max = f.window_radius().min(g.window_radius());
    FourierCoeffs::from_fn(m_max, |m| f.get(m) * g.get(m))
}

/// Even (`+`) or odd (`-`) extension sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionSign {
    Even,
    Odd,
}

impl ExtensionSign {
    fn factor(self) -> f64 {
        match self {
            ExtensionSign::Even => 1.0,
            ExtensionSign::Odd => -1.0,
        }
    }
}

/// View of the even/odd extension `u^±` to `(0, 2π)` of data on `(0, π)`:
/// `u^±(x) = u(x)` for `x < π` and `±u(2π-x)` for `x ≥ π`.
pub struct EvenOddExtension<'a> {
    inner: &'a InitialCondition,
    sign: ExtensionSign,
}

/// Build the even/odd extension view of half-interval data.
pub fn extend_even_odd(u: &InitialCondition, sign: ExtensionSign) -> EvenOddExtension<'_> {
    EvenOddExtension { inner: u, sign }
}

impl EvenOddExtension<'_> {
    pub fn eval(&self, x: f64) -> C64 {
        let xw = x.rem_euclid(TAU);
        if xw < PI {
            self.inner.eval(xw, PI)
        } else {
            self.inner.eval_at_or_left(TAU - xw, PI) * self.sign.factor()
        }
    }

    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        let samples = (0..n).map(|j| self.eval(j as f64 * TAU / n as f64)).collect();
        GridFunction::new(TAU, samples)
    }

    /// Exact Fourier coefficients of the extension:
    /// `⟨u^±, e_m⟩ = (1/√(2π))·(∫_0^π u e^{-imx} dx ± ∫_0^π u e^{imx} dx)`.
    pub fn coeffs(&self, m_max: usize) -> FourierCoeffs {
        FourierCoeffs::from_fn(m_max, |m| {
            let a = exp_integral(self.inner, C64::new(0.0, -(m as f64)), PI);
            let b = exp_integral(self.inner, C64::new(0.0, m as f64), PI);
            (a + b * self.sign.factor()) / SQRT_TAU
        })
    }
}
