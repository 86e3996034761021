//! Exact unit-modulus phases and numerically stable exponential integrals.
//!
//! Phases of the form `e^{2πi·a/b}` are reduced in integer arithmetic before any
//! floating-point evaluation, so `e^{-2πi·P(m)p/q}` is computed from `P(m)p mod q`
//! rather than from a potentially enormous floating-point angle.

use crate::C64;
use std::f64::consts::TAU;

/// `e^{ix}`.
#[inline]
pub fn expi(x: f64) -> C64 {
    let (s, c) = x.sin_cos();
    C64::new(c, s)
}

/// `e^{2πi·num/den}` with the fraction reduced into `[0, den)` exactly.
#[inline]
pub fn unit_root(num: i128, den: u64) -> C64 {
    debug_assert!(den > 0);
    let d = den as i128;
    let r = num.rem_euclid(d);
    expi(TAU * (r as f64) / (den as f64))
}

/// `e^w - 1`, accurate for small `|w|`.
pub fn expm1_c(w: C64) -> C64 {
    if w.norm_sqr() < 1e-8 {
        // 5-term Horner of the Taylor tail; error O(|w|^6) < 1e-24 here.
        w * (C64::new(1.0, 0.0)
            + w * (C64::new(0.5, 0.0)
                + w * (C64::new(1.0 / 6.0, 0.0)
                    + w * (C64::new(1.0 / 24.0, 0.0) + w * C64::new(1.0 / 120.0, 0.0)))))
    } else {
        w.exp() - 1.0
    }
}

/// `∫_a^b e^{w x} dx`, cancellation-safe as `w → 0`.
pub fn integral_exp(w: C64, a: f64, b: f64) -> C64 {
    let len = b - a;
    if w == C64::new(0.0, 0.0) {
        return C64::new(len, 0.0);
    }
    let wl = w * len;
    if wl.norm_sqr() < 1e-8 {
        // e^{wa} (e^{w·len} - 1)/w = e^{wa}·len·(1 + wl/2 + ...)
        (w * a).exp() * len * (expm1_c(wl) / wl)
    } else {
        ((w * b).exp() - (w * a).exp()) / w
    }
}

/// `∫_a^b e^{w (x - x0)} dx`. Keeping the shift inside the exponent avoids
/// overflow when `Re w > 0` and the data lives left of `x0`.
#[inline]
pub fn integral_exp_shifted(w: C64, a: f64, b: f64, x0: f64) -> C64 {
    integral_exp(w, a - x0, b - x0)
}
