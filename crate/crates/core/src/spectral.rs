//! Direct eigenfunction-expansion solvers for each boundary family.
//!
//! These are the reference series against which the correspondence engines in
//! [`crate::correspondence`] are cross-checked:
//!
//! * periodic: `c(m) ↦ e^{-iP(m)t}·c(m)` on the `e_m` basis;
//! * pseudo-periodic Schrödinger: bi-orthogonal expansion over
//!   `φ_j(x) = (e^{ik_jx} + Λ₀e^{-ik_jx})/√(2πτ)`, `k_j = j + k₀`;
//! * quasi-periodic Airy: orthonormal expansion over `φ_m = e^{iθx}e_m` with
//!   eigenvalues `(m+θ)³`;
//! * Robin on `(0,π)`: one negative eigenvalue `-m_b²` with eigenfunction
//!   `A_b·e^{m_b x}` plus the `b`-dependent oscillatory family.
//!
//! Inner products against piecewise-constant and harmonic-sum data use
//! closed-form antiderivatives, so no quadrature error enters the
//! engine-vs-oracle comparisons.

use crate::domain::{
    validate_boundary, BoundarySpec, FourierCoeffs, GridFunction, InitialCondition,
    IntPolynomial, RationalTime, VALIDATION_TOL,
};
use crate::error::{Error, Result};
use crate::harmonic::{exp_integral, exp_integral_shifted, SQRT_TAU};
use crate::phase::{expi, unit_root};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// Periodic evolution `c(m) ↦ e^{-iP(m)t}·c(m)`.
pub fn evolve_periodic(poly: &IntPolynomial, c0: &FourierCoeffs, t: f64) -> FourierCoeffs {
    FourierCoeffs::from_fn(c0.window_radius(), |m| {
        c0.get(m) * expi(-poly.eval_i128(m as i128) as f64 * t)
    })
}

/// Periodic evolution at a rational time with exact integer phase reduction:
/// the phase of mode `m` is `-2π·(P(m)·p mod q)/q`.
pub fn evolve_periodic_rational(
    poly: &IntPolynomial,
    c0: &FourierCoeffs,
    t: &RationalTime,
) -> FourierCoeffs {
    let q = t.denominator();
    let p = t.numerator() as i128;
    FourierCoeffs::from_fn(c0.window_radius(), |m| {
        c0.get(m) * unit_root(-poly.eval_mod(m, q) * p, q)
    })
}

/// Derived constants of the pseudo-periodic Schrödinger problem
/// `β₀u(0) = u(2π)`, `β₁u_x(0) = u_x(2π)`.
#[derive(Debug, Clone)]
pub struct PseudoPeriodicModel {
    beta0: C64,
    beta1: C64,
    /// Base wavenumber `k₀ = arccos((1+β₀β₁)/(β₀+β₁))/2π`, principal branch.
    k0: f64,
    /// `γ = e^{2πik₀}`, with the `+i√(1-r²)` branch.
    gamma: C64,
    /// Eigenfunction normalization `τ = (γ²+1)(β₀β₁+1) - 2γ(β₀+β₁)` over
    /// `(β₀γ-1)(β₁γ-1)`; equals `1 + Λ₀·conj(I₀)`.
    tau: C64,
    /// Reflection amplitude `Λ₀ = (γ-β₀)/(β₀-γ⁻¹)` of the eigenfunctions.
    lambda0: C64,
    /// Reflection amplitude `I₀ = (γ-1/conj(β₁))/(1/conj(β₁)-γ⁻¹)` of the
    /// adjoint eigenfunctions.
    i0: C64,
    self_adjoint: bool,
    /// `√(2πτ)` (principal branch); `φ_j` divides by this, `ψ_j` by its
    /// conjugate so that `⟨φ_j, ψ_k⟩ = δ_jk` under the sesquilinear pairing.
    norm: C64,
}

/// Build the spectral model for a validated, non-degenerate pair `(β₀, β₁)`.
pub fn ls_pp_model(beta0: C64, beta1: C64) -> Result<PseudoPeriodicModel> {
    let flags = validate_boundary(&BoundarySpec::PseudoPeriodicLs { beta0, beta1 })?;
    if flags.periodic_degenerate {
        return Err(Error::PeriodicDegenerate);
    }
    let ratio = (1.0 + beta0 * beta1) / (beta0 + beta1);
    let r = ratio.re.clamp(-1.0, 1.0);
    let k0 = r.acos() / TAU;
    let gamma = C64::new(r, (1.0 - r * r).max(0.0).sqrt());
    let tau_den = (beta0 * gamma - 1.0) * (beta1 * gamma - 1.0);
    if tau_den.norm() <= VALIDATION_TOL {
        return Err(Error::DegenerateNormalization);
    }
    let tau = ((gamma * gamma + 1.0) * (beta0 * beta1 + 1.0) - gamma * (beta0 + beta1) * 2.0)
        / tau_den;
    if tau.norm() <= 1e-10 {
        return Err(Error::DegenerateNormalization);
    }
    let lambda0 = (gamma - beta0) / (beta0 - 1.0 / gamma);
    let i0 = if beta1.norm() == 0.0 {
        C64::new(-1.0, 0.0)
    } else {
        let w = 1.0 / beta1.conj();
        (gamma - w) / (w - 1.0 / gamma)
    };
    let norm = (tau * TAU).sqrt();
    Ok(PseudoPeriodicModel {
        beta0,
        beta1,
        k0,
        gamma,
        tau,
        lambda0,
        i0,
        self_adjoint: flags.self_adjoint,
        norm,
    })
}

impl PseudoPeriodicModel {
    pub fn beta0(&self) -> C64 {
        self.beta0
    }

    pub fn beta1(&self) -> C64 {
        self.beta1
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn lambda0(&self) -> C64 {
        self.lambda0
    }

    pub fn i0(&self) -> C64 {
        self.i0
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    /// `k_j = j + k₀`.
    pub fn wavenumber(&self, j: i64) -> f64 {
        j as f64 + self.k0
    }

    /// Eigenvalue `λ_j = k_j²`.
    pub fn eigenvalue(&self, j: i64) -> f64 {
        let k = self.wavenumber(j);
        k * k
    }

    /// Eigenfunction `φ_j(x) = (e^{ik_jx} + Λ₀e^{-ik_jx})/√(2πτ)`.
    pub fn phi(&self, j: i64, x: f64) -> C64 {
        let k = self.wavenumber(j);
        (expi(k * x) + self.lambda0 * expi(-k * x)) / self.norm
    }

    /// Adjoint eigenfunction `ψ_j(x) = (e^{ik_jx} + I₀e^{-ik_jx})/conj(√(2πτ))`.
    pub fn psi(&self, j: i64, x: f64) -> C64 {
        let k = self.wavenumber(j);
        (expi(k * x) + self.i0 * expi(-k * x)) / self.norm.conj()
    }

    /// Expansion coefficient `⟨u₀, ψ_j⟩`, via closed-form integrals:
    /// `(∫u₀e^{-ik_jy}dy + conj(I₀)·∫u₀e^{ik_jy}dy)/√(2πτ)`, so that the
    /// product with `φ_j` carries the combined `1/(2πτ)` weight.
    pub fn expansion_coeff(&self, u0: &InitialCondition, j: i64) -> C64 {
        let k = self.wavenumber(j);
        let a = exp_integral(u0, C64::new(0.0, -k), TAU);
        let b = exp_integral(u0, C64::new(0.0, k), TAU);
        (a + self.i0.conj() * b) / self.norm
    }

    /// Coefficients `⟨u₀, ψ_j⟩·e^{-ik_j²t}` for `j = -M..=M`.
    pub fn expansion_at(&self, u0: &InitialCondition, t: f64, m_max: usize) -> Vec<C64> {
        let m0 = m_max as i64;
        (-m0..=m0)
            .map(|j| self.expansion_coeff(u0, j) * expi(-self.eigenvalue(j) * t))
            .collect()
    }

    /// Evaluate `Σ_j c_j·φ_j` on the uniform N-grid of `(0, 2π)`.
    pub fn synthesize(&self, coeffs: &[C64], n: usize) -> Result<GridFunction> {
        assert!(coeffs.len() % 2 == 1, "expected a symmetric window");
        let m0 = (coeffs.len() / 2) as i64;
        let samples: Vec<C64> = (0..n)
            .into_par_iter()
            .map(|idx| {
                let x = idx as f64 * TAU / n as f64;
                // e^{ik_jx} walks from j = -M by repeated e^{ix}
                let step = expi(x);
                let mut w = expi((self.k0 - m0 as f64) * x);
                let mut acc = C64::new(0.0, 0.0);
                for c in coeffs {
                    acc += c * (w + self.lambda0 * w.conj());
                    w *= step;
                }
                acc / self.norm
            })
            .collect();
        GridFunction::new(TAU, samples)
    }

    /// `⟨φ_j, φ_k⟩` in closed form (the eigenfunctions are not orthogonal
    /// unless the pair is self-adjoint).
    pub fn gram(&self, j: i64, k: i64) -> C64 {
        let delta = if j == k { 1.0 } else { 0.0 };
        let w = self.wavenumber(j) + self.wavenumber(k);
        // ∫₀^{2π} e^{iwx} dx with e^{2πiw} = γ²
        let cross = (self.gamma * self.gamma - 1.0) / C64::new(0.0, w);
        let l2 = self.lambda0.norm_sqr();
        let num = TAU * delta * (1.0 + l2)
            + self.lambda0.conj() * cross
            + self.lambda0 * cross.conj();
        num / (TAU * self.tau.norm())
    }

    /// Exact L² norm of `Σ_j c_j·φ_j` via the Gram matrix.
    pub fn expansion_l2_norm(&self, coeffs: &[C64]) -> f64 {
        let m0 = (coeffs.len() / 2) as i64;
        let mut acc = 0.0;
        for (a, j) in coeffs.iter().zip(-m0..=m0) {
            for (b, k) in coeffs.iter().zip(-m0..=m0) {
                acc += (a * b.conj() * self.gram(j, k)).re;
            }
        }
        acc.max(0.0).sqrt()
    }
}

/// Bi-orthogonal series solution of the pseudo-periodic Schrödinger problem.
pub fn evolve_ls_pseudo(
    u0: &InitialCondition,
    model: &PseudoPeriodicModel,
    t: f64,
    m_max: usize,
    n: usize,
) -> Result<GridFunction> {
    model.synthesize(&model.expansion_at(u0, t, m_max), n)
}

/// Eigenfunction-series solution of the quasi-periodic Airy problem:
/// `u(x,t) = Σ_m ⟨u₀,φ_m⟩·e^{-i(m+θ)³t}·φ_m(x)` with `φ_m = e^{iθx}e_m`.
pub fn evolve_airy_qp(
    u0: &InitialCondition,
    theta: f64,
    t: f64,
    m_max: usize,
    n: usize,
) -> Result<GridFunction> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidTheta(format!(
            "theta must lie in [0,1), got {theta}"
        )));
    }
    let m0 = m_max as i64;
    let coeffs: Vec<C64> = (-m0..=m0)
        .map(|m| {
            let k = m as f64 + theta;
            let c = exp_integral(u0, C64::new(0.0, -k), TAU) / SQRT_TAU;
            c * expi(-k * k * k * t)
        })
        .collect();
    let samples: Vec<C64> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let x = idx as f64 * TAU / n as f64;
            let step = expi(x);
            let mut w = expi((theta - m0 as f64) * x);
            let mut acc = C64::new(0.0, 0.0);
            for c in &coeffs {
                acc += c * w;
                w *= step;
            }
            acc / SQRT_TAU
        })
        .collect();
    GridFunction::new(TAU, samples)
}

/// Derived constants of the Robin problem for `0 < b < 1`.
#[derive(Debug, Clone)]
pub struct RobinModel {
    b: f64,
    /// `m_b = b/(1-b)`; the negative eigenvalue is `λ_b = -m_b²`.
    m_b: f64,
}

/// Overflow guard on `m_b` (e^{2πm_b} and its reciprocal stay representable).
const ROBIN_MB_LIMIT: f64 = 700.0;

/// Build the Robin model; `b` must lie strictly inside `(0,1)`.
pub fn robin_model(b: f64) -> Result<RobinModel> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidRobinParameter(b));
    }
    if b == 0.0 || b == 1.0 {
        return Err(Error::RobinLimitCase(b));
    }
    let m_b = b / (1.0 - b);
    if m_b > ROBIN_MB_LIMIT {
        return Err(Error::ParameterOverflow(m_b));
    }
    Ok(RobinModel { b, m_b })
}

impl RobinModel {
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn m_b(&self) -> f64 {
        self.m_b
    }

    pub fn lambda_b(&self) -> f64 {
        -self.m_b * self.m_b
    }

    /// `A_b = √(2m_b/(e^{2πm_b}-1))`, computed in the overflow-safe form.
    pub fn a_b(&self) -> f64 {
        // 2m_b/(e^{2πm_b}-1) = 2m_b·e^{-2πm_b}/(1-e^{-2πm_b})
        let e = (-TAU * self.m_b).exp();
        (2.0 * self.m_b * e / (1.0 - e)).sqrt()
    }

    /// `Λ_j = (b-(1-b)ij)/(b+(1-b)ij) = (m_b-ij)/(m_b+ij)`, unit modulus.
    pub fn lambda_j(&self, j: u64) -> C64 {
        let z = C64::new(self.m_b, -(j as f64));
        z / z.conj()
    }

    /// Negative-eigenvalue eigenfunction `φ_b(x) = A_b·e^{m_bx}` evaluated
    /// through `√(2m_b/(1-e^{-2πm_b}))·e^{m_b(x-π)}`, stable for `x ∈ [0,π]`.
    pub fn phi_b(&self, x: f64) -> f64 {
        let e = (-TAU * self.m_b).exp();
        (2.0 * self.m_b / (1.0 - e)).sqrt() * (self.m_b * (x - PI)).exp()
    }

    /// Oscillatory eigenfunction `φ_j(x) = (e^{ijx} - Λ_j e^{-ijx})/√(2π)`.
    pub fn phi_j(&self, j: u64, x: f64) -> C64 {
        let w = expi(j as f64 * x);
        (w - self.lambda_j(j) * w.conj()) / SQRT_TAU
    }

    /// `⟨u₀, φ_b⟩` over `(0,π)` through shifted exponentials.
    pub fn phi_b_coeff(&self, u0: &InitialCondition) -> C64 {
        let e = (-TAU * self.m_b).exp();
        let scale = (2.0 * self.m_b / (1.0 - e)).sqrt();
        exp_integral_shifted(u0, C64::new(self.m_b, 0.0), PI, PI) * scale
    }

    /// `⟨u₀, φ_j⟩ = (∫u₀e^{-ijx}dx - conj(Λ_j)∫u₀e^{ijx}dx)/√(2π)` over `(0,π)`.
    pub fn mode_coeff(&self, u0: &InitialCondition, j: u64) -> C64 {
        let a = exp_integral(u0, C64::new(0.0, -(j as f64)), PI);
        let b = exp_integral(u0, C64::new(0.0, j as f64), PI);
        (a - self.lambda_j(j).conj() * b) / SQRT_TAU
    }
}

/// Which eigenbasis a Robin solution is expanded in.
#[derive(Debug, Clone)]
enum RobinFamily {
    /// `0 < b < 1`: `φ_b` plus the `Λ_j`-twisted exponentials.
    Interior(RobinModel),
    /// `b = 0`: cosine series including the constant mode.
    Neumann,
    /// `b = 1`: sine series.
    Dirichlet,
}

/// A Robin solution held as expansion coefficients at a fixed time.
#[derive(Debug, Clone)]
pub struct RobinSolution {
    family: RobinFamily,
    /// Coefficient of `φ_b` (zero for the Neumann/Dirichlet limits).
    neg_coeff: C64,
    /// Oscillatory-mode coefficients: `j = 1..=M` (Interior, Dirichlet)
    /// or `j = 0..=M` (Neumann).
    coeffs: Vec<C64>,
}

impl RobinSolution {
    /// L² norm over `(0,π)`; the eigenfamily is orthonormal.
    pub fn l2_norm(&self) -> f64 {
        (self.neg_coeff.norm_sqr() + self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sqrt()
    }

    /// Evaluate on the uniform N-grid of `(0, π)`.
    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        let samples: Vec<C64> = (0..n)
            .into_par_iter()
            .map(|idx| {
                let x = idx as f64 * PI / n as f64;
                match &self.family {
                    RobinFamily::Interior(model) => {
                        let mut acc = self.neg_coeff * model.phi_b(x);
                        let step = expi(x);
                        let mut w = step;
                        for (c, j) in self.coeffs.iter().zip(1u64..) {
                            acc += c * (w - model.lambda_j(j) * w.conj()) / SQRT_TAU;
                            w *= step;
                        }
                        acc
                    }
                    RobinFamily::Neumann => {
                        let mut acc = self.coeffs[0] / PI.sqrt();
                        let step = expi(x);
                        let mut w = step;
                        let scale = (2.0 / PI).sqrt();
                        for c in &self.coeffs[1..] {
                            acc += c * scale * w.re;
                            w *= step;
                        }
                        acc
                    }
                    RobinFamily::Dirichlet => {
                        let mut acc = C64::new(0.0, 0.0);
                        let step = expi(x);
                        let mut w = step;
                        let scale = (2.0 / PI).sqrt();
                        for c in &self.coeffs {
                            acc += c * scale * w.im;
                            w *= step;
                        }
                        acc
                    }
                }
            })
            .collect();
        GridFunction::new(PI, samples)
    }
}

/// Eigenfunction-series solution of the Robin problem on `(0,π)`.
///
/// `b = 0` and `b = 1` fall back to the Neumann cosine and Dirichlet sine
/// series (no `φ_b` term).
pub fn evolve_robin(
    u0: &InitialCondition,
    b: f64,
    t: f64,
    m_max: usize,
) -> Result<RobinSolution> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidRobinParameter(b));
    }
    if b == 0.0 {
        // cosine series: φ₀ = 1/√π, φ_j = √(2/π)·cos(jx)
        let mut coeffs = Vec::with_capacity(m_max + 1);
        coeffs.push(exp_integral(u0, C64::new(0.0, 0.0), PI) / PI.sqrt());
        for j in 1..=m_max as u64 {
            let a = exp_integral(u0, C64::new(0.0, j as f64), PI);
            let bb = exp_integral(u0, C64::new(0.0, -(j as f64)), PI);
            let c = (a + bb) / 2.0 * (2.0 / PI).sqrt();
            coeffs.push(c * expi(-((j * j) as f64) * t));
        }
        return Ok(RobinSolution {
            family: RobinFamily::Neumann,
            neg_coeff: C64::new(0.0, 0.0),
            coeffs,
        });
    }
    if b == 1.0 {
        // sine series: φ_j = √(2/π)·sin(jx)
        let mut coeffs = Vec::with_capacity(m_max);
        for j in 1..=m_max as u64 {
            let a = exp_integral(u0, C64::new(0.0, j as f64), PI);
            let bb = exp_integral(u0, C64::new(0.0, -(j as f64)), PI);
            let c = (a - bb) / C64::new(0.0, 2.0) * (2.0 / PI).sqrt();
            coeffs.push(c * expi(-((j * j) as f64) * t));
        }
        return Ok(RobinSolution {
            family: RobinFamily::Dirichlet,
            neg_coeff: C64::new(0.0, 0.0),
            coeffs,
        });
    }
    let model = robin_model(b)?;
    let neg_coeff = model.phi_b_coeff(u0) * expi(model.m_b * model.m_b * t);
    let coeffs = (1..=m_max as u64)
        .map(|j| model.mode_coeff(u0, j) * expi(-((j * j) as f64) * t))
        .collect();
    Ok(RobinSolution {
        family: RobinFamily::Interior(model),
        neg_coeff,
        coeffs,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::domain::InitialCondition as Ic;
    use crate::harmonic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Random valid non-self-adjoint pair: pick real r ∈ (-1,1) and β₀, then
    /// β₁ = (rβ₀-1)/(β₀-r) makes (1+β₀β₁)/(β₀+β₁) = r exactly.
    pub(crate) fn random_valid_pair(rng: &mut impl Rng) -> (C64, C64) {
        loop {
            let r: f64 = rng.gen_range(-0.9..0.9);
            let beta0 = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if (beta0 - r).norm() < 0.2 || beta0.norm() < 0.2 {
                continue;
            }
            let beta1 = (beta0 * r - 1.0) / (beta0 - r);
            if ls_pp_model(beta0, beta1).is_ok() {
                return (beta0, beta1);
            }
        }
    }

    /// Random self-adjoint pair: β₁ = 1/conj(β₀).
    pub(crate) fn random_self_adjoint_pair(rng: &mut impl Rng) -> (C64, C64) {
        loop {
            let beta0 = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if (beta0 - 1.0).norm() < 0.3 || beta0.norm() < 0.2 {
                continue;
            }
            let beta1 = 1.0 / beta0.conj();
            if ls_pp_model(beta0, beta1).is_ok() {
                return (beta0, beta1);
            }
        }
    }

    #[test]
    fn quasi_periodic_quarter_model() {
        // β₀ = β₁ = e^{iπ/2} = i: k₀ = 1/4, γ = i, Λ₀ = I₀ = 0, τ = 1
        let m = ls_pp_model(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        assert!((m.k0() - 0.25).abs() < 1e-14);
        assert!((m.gamma() - c(0.0, 1.0)).norm() < 1e-14);
        assert!(m.lambda0().norm() < 1e-14);
        assert!(m.i0().norm() < 1e-14);
        assert!((m.tau() - c(1.0, 0.0)).norm() < 1e-13);
        assert!(m.is_self_adjoint());
    }

    #[test]
    fn real_self_adjoint_model_constants() {
        // β₀ = 2, β₁ = 1/2: ratio 0.8, γ = 0.8+0.6i, Λ₀ = -0.6+0.8i, τ = 2
        let m = ls_pp_model(c(2.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((m.k0() - 0.8f64.acos() / TAU).abs() < 1e-15);
        let g = m.gamma();
        assert!((g + 1.0 / g - c(1.6, 0.0)).norm() < 1e-14);
        assert!((m.lambda0() - c(-0.6, 0.8)).norm() < 1e-14);
        assert!((m.i0() - c(-0.6, 0.8)).norm() < 1e-14);
        assert!((m.tau() - c(2.0, 0.0)).norm() < 1e-14);
        assert!(m.is_self_adjoint());
    }

    #[test]
    fn degenerate_pairs_are_rejected() {
        assert!(matches!(
            ls_pp_model(c(1.0, 0.0), c(1.0, 0.0)),
            Err(Error::PeriodicDegenerate)
        ));
        // ratio = -1 (dispersionless anti-periodic limit) degenerates τ
        assert!(matches!(
            ls_pp_model(c(2.0, 0.0), c(-1.0, 0.0)),
            Err(Error::DegenerateNormalization)
        ));
    }

    #[test]
    fn lambda0_two_printed_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (b0, b1) = random_valid_pair(&mut rng);
            let m = ls_pp_model(b0, b1).unwrap();
            let g = m.gamma();
            let alt = (g - b1) / (1.0 / g - b1);
            assert!(
                (m.lambda0() - alt).norm() < 1e-10,
                "b0 = {b0}, b1 = {b1}"
            );
        }
    }

    #[test]
    fn tau_is_one_plus_lambda0_conj_i0() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..40 {
            let (b0, b1) = if k % 2 == 0 {
                random_valid_pair(&mut rng)
            } else {
                random_self_adjoint_pair(&mut rng)
            };
            let m = ls_pp_model(b0, b1).unwrap();
            let expect = 1.0 + m.lambda0() * m.i0().conj();
            assert!(
                (m.tau() - expect).norm() < 1e-10 * m.tau().norm().max(1.0),
                "b0 = {b0}, b1 = {b1}: tau = {}, 1+Λ₀Ī₀ = {}",
                m.tau(),
                expect
            );
        }
    }

    /// Closed-form ⟨φ_j, ψ_k⟩ computed independently of the model internals:
    /// four exponential integrals over (0, 2π).
    fn pairing_closed_form(m: &PseudoPeriodicModel, j: i64, k: i64) -> C64 {
        let int = |w: f64| -> C64 {
            // ∫₀^{2π} e^{iwx} dx
            if w.abs() < 1e-300 {
                c(TAU, 0.0)
            } else {
                (expi(TAU * w) - 1.0) / c(0.0, w)
            }
        };
        let kj = m.wavenumber(j);
        let kk = m.wavenumber(k);
        let t1 = int(kj - kk);
        let t2 = m.i0().conj() * int(kj + kk);
        let t3 = m.lambda0() * int(-(kj + kk));
        let t4 = m.lambda0() * m.i0().conj() * int(kk - kj);
        (t1 + t2 + t3 + t4) / (m.tau() * TAU)
    }

    #[test]
    fn bi_orthogonality_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..6 {
            let (b0, b1) = if trial % 2 == 0 {
                random_valid_pair(&mut rng)
            } else {
                random_self_adjoint_pair(&mut rng)
            };
            let m = ls_pp_model(b0, b1).unwrap();
            for j in -32i64..=32 {
                for k in -32i64..=32 {
                    let v = pairing_closed_form(&m, j, k);
                    let want = if j == k { 1.0 } else { 0.0 };
                    assert!(
                        (v - want).norm() < 1e-10,
                        "j={j}, k={k}, pairing = {v} (b0={b0}, b1={b1})"
                    );
                }
            }
        }
    }

    #[test]
    fn bi_orthogonality_quadrature_spot_check() {
        // Simpson quadrature over a 5×5 block confirms the sesquilinear
        // pairing of the evaluated eigenfunctions themselves.
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let (b0, b1) = random_valid_pair(&mut rng);
        let m = ls_pp_model(b0, b1).unwrap();
        let n = 1 << 14;
        let h = TAU / n as f64;
        for j in -2i64..=2 {
            for k in -2i64..=2 {
                let f = |x: f64| m.phi(j, x) * m.psi(k, x).conj();
                let mut acc = f(0.0) + f(TAU);
                for idx in 1..n {
                    let w = if idx % 2 == 1 { 4.0 } else { 2.0 };
                    acc += f(idx as f64 * h) * w;
                }
                let v = acc * h / 3.0;
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((v - want).norm() < 1e-10, "j={j}, k={k}: {v}");
            }
        }
    }

    #[test]
    fn eigenfunctions_satisfy_boundary_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..8 {
            let (b0, b1) = random_valid_pair(&mut rng);
            let m = ls_pp_model(b0, b1).unwrap();
            for j in [-17i64, -3, 0, 5, 24] {
                let k = m.wavenumber(j);
                let phi = |x: f64| m.phi(j, x);
                let dphi = |x: f64| {
                    (expi(k * x) * c(0.0, k) + m.lambda0() * expi(-k * x) * c(0.0, -k))
                        / (m.tau() * TAU).sqrt()
                };
                assert!((b0 * phi(0.0) - phi(TAU)).norm() < 1e-10, "j = {j}");
                assert!((b1 * dphi(0.0) - dphi(TAU)).norm() < 1e-9, "j = {j}");
            }
        }
    }

    #[test]
    fn evolve_periodic_identities() {
        let u = Ic::step_on_upper_half(TAU);
        let c0 = harmonic::analyze(&u, 64).unwrap();
        let sq = IntPolynomial::monomial(2);

        let idt = evolve_periodic(&sq, &c0, 0.0);
        for (m, v) in idt.iter() {
            assert_eq!(v, c0.get(m));
        }

        // t = π: e^{-iπm²} = e^{-iπm}, i.e. a half-period translation
        let half = evolve_periodic_rational(&sq, &c0, &RationalTime::new(1, 2).unwrap());
        let shifted = harmonic::translate(&c0, PI);
        for (m, v) in half.iter() {
            assert!((v - shifted.get(m)).norm() < 1e-12, "m = {m}");
        }

        // unitary phases preserve the Parseval norm
        let any = evolve_periodic(&sq, &c0, 0.8342);
        assert!((any.norm() - c0.norm()).abs() < 1e-12);
    }

    #[test]
    fn pseudo_t0_reconstructs_domain_data() {
        // data vanishing to 4th order at the endpoints lies in the operator
        // domain of every pair; its expansion tail is negligible at M = 256
        let u0 = Ic::clamped_packet_2pi();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for trial in 0..4 {
            let (b0, b1) = if trial % 2 == 0 {
                random_valid_pair(&mut rng)
            } else {
                random_self_adjoint_pair(&mut rng)
            };
            let model = ls_pp_model(b0, b1).unwrap();
            let n = 1024;
            let sol = evolve_ls_pseudo(&u0, &model, 0.0, 256, n).unwrap();
            let direct = u0.sample(n, TAU).unwrap();
            let mut max = 0.0f64;
            for (a, b) in sol.samples().iter().zip(direct.samples()) {
                max = max.max((a - b).norm());
            }
            assert!(max < 1e-8, "b0={b0}, b1={b1}: max err {max}");
        }
    }

    #[test]
    fn pseudo_self_adjoint_norm_preserved() {
        let u0 = Ic::clamped_packet_2pi();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let (b0, b1) = random_self_adjoint_pair(&mut rng);
        let model = ls_pp_model(b0, b1).unwrap();
        // exact L² norm of the data: harmonic modes are orthogonal
        let norm0 = match &u0 {
            Ic::HarmonicSum { terms } => {
                (TAU * terms.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>()).sqrt()
            }
            _ => unreachable!(),
        };
        for t in [0.0, 0.7, 2.1] {
            let coeffs = model.expansion_at(&u0, t, 256);
            let nt = model.expansion_l2_norm(&coeffs);
            assert!((nt - norm0).abs() < 1e-8, "t = {t}: {nt} vs {norm0}");
        }
    }

    #[test]
    fn pseudo_rejects_degenerate_callers() {
        assert!(ls_pp_model(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn airy_reduces_to_periodic_at_theta_zero() {
        let u = Ic::step_on_upper_half(TAU);
        let t = 0.83;
        let m_max = 48;
        let n = 256;
        let qp = evolve_airy_qp(&u, 0.0, t, m_max, n).unwrap();
        let c0 = harmonic::analyze(&u, m_max).unwrap();
        let per = harmonic::synthesize(
            &evolve_periodic(&IntPolynomial::monomial(3), &c0, t),
            n,
        )
        .unwrap();
        for (a, b) in qp.samples().iter().zip(per.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn airy_eigenfunctions_meet_coupling_conditions() {
        let theta = 0.3172;
        let beta = expi(TAU * theta);
        for m in [-9i64, 0, 4] {
            let k = m as f64 + theta;
            for r in 0..3u32 {
                // (ik)^r e^{ikx} at 0 and 2π
                let factor = c(0.0, k).powu(r);
                let left = beta * factor;
                let right = factor * expi(k * TAU);
                assert!((left - right).norm() < 1e-12, "m={m}, r={r}");
            }
        }
    }

    #[test]
    fn airy_norm_preserved() {
        let u = Ic::step_on_upper_half(TAU);
        let theta = 0.25;
        let m0 = 64i64;
        for t in [0.0, 1.3] {
            let norm: f64 = (-m0..=m0)
                .map(|m| {
                    let k = m as f64 + theta;
                    (exp_integral(&u, c(0.0, -k), TAU) / SQRT_TAU).norm_sqr()
                })
                .sum::<f64>()
                .sqrt();
            let _ = t;
            // evolution multiplies by unit phases, so the coefficient norm is
            // already time independent; check it matches the grid norm too
            let g = evolve_airy_qp(&u, theta, t, m0 as usize, 4096).unwrap();
            let gn = g.l2_norm();
            assert!((gn - norm).abs() < 2e-3, "t={t}: {gn} vs {norm}");
        }
    }

    #[test]
    fn robin_half_parameter_constants() {
        let m = robin_model(0.5).unwrap();
        assert!((m.m_b() - 1.0).abs() < 1e-15);
        assert!((m.lambda_b() + 1.0).abs() < 1e-15);
        let want = (2.0 / (TAU.exp() - 1.0)).sqrt();
        assert!((m.a_b() - want).abs() < 1e-15);
    }

    #[test]
    fn robin_lambda_j_unit_modulus() {
        for b in [0.1, 0.35, 0.6, 0.93] {
            let m = robin_model(b).unwrap();
            for j in 1..=64 {
                assert!((m.lambda_j(j).norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn robin_eigenfunctions_normalized_and_orthogonal() {
        // Simpson quadrature of |φ_j|² and φ_j·conj(φ_k) over (0, π)
        let model = robin_model(0.35).unwrap();
        let n = 1 << 14;
        let h = PI / n as f64;
        let simpson = |f: &dyn Fn(f64) -> C64| -> C64 {
            let mut acc = f(0.0) + f(PI);
            for idx in 1..n {
                let w = if idx % 2 == 1 { 4.0 } else { 2.0 };
                acc += f(idx as f64 * h) * w;
            }
            acc * h / 3.0
        };
        for j in [1u64, 2, 7, 16] {
            let nrm = simpson(&|x| model.phi_j(j, x) * model.phi_j(j, x).conj());
            assert!((nrm.re - 1.0).abs() < 1e-10, "j = {j}: {nrm}");
        }
        let nb = simpson(&|x| c(model.phi_b(x) * model.phi_b(x), 0.0));
        assert!((nb.re - 1.0).abs() < 1e-10, "phi_b norm {nb}");
        for j in [1u64, 3] {
            let ip = simpson(&|x| model.phi_j(j, x) * model.phi_b(x));
            assert!(ip.norm() < 1e-10, "⟨φ_{j}, φ_b⟩ = {ip}");
        }
        // Robin boundary conditions at both ends: b·φ = (1-b)·φ'
        let (b, mb) = (model.b(), model.m_b());
        for j in [1u64, 5] {
            let dphi = |x: f64| {
                let jj = j as f64;
                (expi(jj * x) * c(0.0, jj)
                    - model.lambda_j(j) * expi(-jj * x) * c(0.0, -jj))
                    / SQRT_TAU
            };
            for x0 in [0.0, PI] {
                let res = model.phi_j(j, x0) * b - dphi(x0) * (1.0 - b);
                assert!(res.norm() < 1e-12, "j={j}, x0={x0}");
            }
        }
        let _ = mb;
    }

    #[test]
    fn robin_dirichlet_limit_vanishes_at_ends() {
        let u0 = Ic::step_on_upper_half(PI);
        let sol = evolve_robin(&u0, 1.0, 0.37, 512).unwrap();
        let g = sol.sample(2048).unwrap();
        // sine series vanishes identically at x = 0 (and at π, off-grid)
        assert!(g.samples()[0].norm() < 1e-10);
        // at t = 0 the series reproduces the step away from jump and ends
        let init = evolve_robin(&u0, 1.0, 0.0, 2048).unwrap().sample(2048).unwrap();
        let mid = init.samples()[512]; // x = π/4, interior of the 0-plateau
        assert!(mid.norm() < 1e-3, "{mid}");
        let hi = init.samples()[1536]; // x = 3π/4, interior of the 1-plateau
        assert!((hi - c(1.0, 0.0)).norm() < 1e-3, "{hi}");
    }

    #[test]
    fn robin_norm_preserved_in_coefficients() {
        let u0 = Ic::step_on_upper_half(PI);
        for b in [0.0, 0.35, 0.6, 1.0] {
            let n0 = evolve_robin(&u0, b, 0.0, 1024).unwrap().l2_norm();
            let n1 = evolve_robin(&u0, b, 1.37, 1024).unwrap().l2_norm();
            assert!((n0 - n1).abs() < 1e-12, "b = {b}");
        }
    }

    #[test]
    fn robin_overflow_guard() {
        assert!(matches!(
            evolve_robin(&Ic::step_on_upper_half(PI), 0.9999, 0.1, 8),
            Err(Error::ParameterOverflow(_))
        ));
    }

    #[test]
    fn robin_t0_reconstructs_clamped_data() {
        let u0 = Ic::clamped_packet_pi();
        for b in [0.15, 0.5, 0.85] {
            let sol = evolve_robin(&u0, b, 0.0, 1024).unwrap();
            let g = sol.sample(512).unwrap();
            let direct = u0.sample(512, PI).unwrap();
            let mut max = 0.0f64;
            for (a, bb) in g.samples().iter().zip(direct.samples()) {
                max = max.max((a - bb).norm());
            }
            assert!(max < 1e-7, "b = {b}: {max}");
        }
    }
}
