//! Gauss-type weight vectors and the periodic revival operators `R_ℓ(p,q)`.
//!
//! At a rational time `t = 2πp/q` the periodic evolution of `u_t + iP(-i∂_x)u = 0`
//! is a weighted sum of `q` translated copies of the initial profile,
//!
//! ```text
//! u(x, 2πp/q) = (1/q)·Σ_{k<q} G_{p,q}(k) · u₀*(x - 2πk/q),
//! G_{p,q}(k)  = Σ_{m<q} e^{-2πi P(m) p/q} e^{2πi mk/q}.
//! ```
//!
//! All phases are reduced modulo `q` in exact integer arithmetic before any
//! trigonometry: `e^{-2πi·P(m)p/q}` is evaluated from `P(m)·p mod q`, never from
//! a large floating-point angle. For `P(m) = m^ℓ` the same operator acts
//! diagonally on Fourier coefficients as `c(j) ↦ e^{-ij^ℓ·2πp/q}·c(j)`; the
//! physical (translate-and-sum) and spectral (diagonal phase) applications are
//! implemented independently and cross-checked in the tests.

use crate::domain::{FourierCoeffs, IntPolynomial, RationalTime};
use crate::harmonic::SQRT_TAU;
use crate::phase::unit_root;
use crate::C64;

/// Whether a weight vector carries the raw sums `G_{p,q}(k)` or the
/// normalized `G^{(ℓ)}_{p,q}(k) = G_{p,q}(k)/√(2π)` that pair with `e_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Raw,
    Normalized,
}

/// The `q` translate weights of a revival operator.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussWeights {
    p: u64,
    q: u64,
    kind: WeightKind,
    values: Vec<C64>,
}

impl GaussWeights {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Convert to the normalized variant (divide by `√(2π)`).
    pub fn normalized(&self) -> GaussWeights {
        match self.kind {
            WeightKind::Normalized => self.clone(),
            WeightKind::Raw => GaussWeights {
                p: self.p,
                q: self.q,
                kind: WeightKind::Normalized,
                values: self.values.iter().map(|v| v / SQRT_TAU).collect(),
            },
        }
    }

    /// Convert to the raw variant (multiply by `√(2π)`).
    pub fn raw(&self) -> GaussWeights {
        match self.kind {
            WeightKind::Raw => self.clone(),
            WeightKind::Normalized => GaussWeights {
                p: self.p,
                q: self.q,
                kind: WeightKind::Raw,
                values: self.values.iter().map(|v| v * SQRT_TAU).collect(),
            },
        }
    }
}

/// Raw weights `G_{p,q}(k) = Σ_m e^{-2πiP(m)p/q}·e^{2πimk/q}`, `k = 0..q-1`.
pub fn gauss_weights(poly: &IntPolynomial, t: &RationalTime) -> GaussWeights {
    let q = t.denominator();
    let p = t.numerator();
    let values = (0..q)
        .map(|k| {
            (0..q)
                .map(|m| {
                    let pm = poly.eval_mod(m as i64, q); // P(m) mod q
                    let num = (m as i128) * (k as i128) - pm * (p as i128);
                    unit_root(num, q)
                })
                .sum()
        })
        .collect();
    GaussWeights {
        p,
        q,
        kind: WeightKind::Raw,
        values,
    }
}

/// Apply `R_ℓ(p,q)` as the physical sum of `q` translated copies,
/// `(√(2π)/q)·Σ_k G^{(ℓ)}(k)·𝒯_{2πk/q}`, in coefficient space where every
/// rational translation is an exact phase.
pub fn apply_revival_physical(ell: u32, t: &RationalTime, f: &FourierCoeffs) -> FourierCoeffs {
    apply_revival_physical_poly(&IntPolynomial::monomial(ell), t, f)
}

/// Physical application for a general integer dispersion polynomial.
pub fn apply_revival_physical_poly(
    poly: &IntPolynomial,
    t: &RationalTime,
    f: &FourierCoeffs,
) -> FourierCoeffs {
    let q = t.denominator();
    let weights = gauss_weights(poly, t);
    // multiplier(m) depends on m mod q only: (1/q)·Σ_k G(k)·e^{-2πimk/q}
    let multipliers: Vec<C64> = (0..q as i128)
        .map(|m| {
            weights
                .values
                .iter()
                .enumerate()
                .map(|(k, g)| g * unit_root(-m * k as i128, q))
                .sum::<C64>()
                / q as f64
        })
        .collect();
    FourierCoeffs::from_fn(f.window_radius(), |m| {
        let r = (m as i128).rem_euclid(q as i128) as usize;
        f.get(m) * multipliers[r]
    })
}

/// Apply `R_ℓ(p,q)` spectrally: `c(j) ↦ e^{-ij^ℓ·2πp/q}·c(j)`.
pub fn apply_revival_spectral(ell: u32, t: &RationalTime, f: &FourierCoeffs) -> FourierCoeffs {
    let q = t.denominator();
    let p = t.numerator() as i128;
    FourierCoeffs::from_fn(f.window_radius(), |j| {
        let jl = (j as i128).pow(ell);
        f.get(j) * unit_root(-jl * p, q)
    })
}
