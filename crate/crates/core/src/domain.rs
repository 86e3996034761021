//! Domain model shared by all solvers: rational times, boundary families,
//! initial conditions, grid samples and Fourier windows.

use crate::error::{Error, Result};
use crate::phase::expi;
use crate::C64;
use num_integer::Integer;
use std::f64::consts::TAU;

/// Tolerance for reality/degeneracy checks on boundary data.
pub const VALIDATION_TOL: f64 = 1e-12;

/// A rational time `t = 2π·p/q` stored as a reduced fraction.
///
/// `p = 0` is admitted and encodes `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalTime {
    p: u64,
    q: u64,
}

impl RationalTime {
    /// Reduce `p/q` to lowest terms. Fails if `q = 0`.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidDenominator);
        }
        if p == 0 {
            return Ok(Self { p: 0, q: 1 });
        }
        let g = p.gcd(&q);
        Ok(Self { p: p / g, q: q / g })
    }

    pub fn numerator(&self) -> u64 {
        self.p
    }

    pub fn denominator(&self) -> u64 {
        self.q
    }

    /// The time value `2π·p/q`.
    pub fn value(&self) -> f64 {
        TAU * self.p as f64 / self.q as f64
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }
}

/// A reduced fraction `c/d ∈ [0,1)`, used for rational quasi-periodicity parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaFraction {
    c: u64,
    d: u64,
}

impl ThetaFraction {
    pub fn new(c: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDenominator);
        }
        if c >= d && !(c == 0 && d == 1) {
            if c == 0 {
                return Ok(Self { c: 0, d: 1 });
            }
            return Err(Error::InvalidTheta(format!("need c < d, got {c}/{d}")));
        }
        if c == 0 {
            return Ok(Self { c: 0, d: 1 });
        }
        let g = c.gcd(&d);
        Ok(Self { c: c / g, d: d / g })
    }

    pub fn numerator(&self) -> u64 {
        self.c
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn value(&self) -> f64 {
        self.c as f64 / self.d as f64
    }
}

/// Polynomial with integer coefficients, stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial(Vec<i64>);

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let mut c = coeffs;
        while c.len() > 1 && *c.last().unwrap() == 0 {
            c.pop();
        }
        if c.is_empty() {
            c.push(0);
        }
        IntPolynomial(c)
    }

    /// `m^k`.
    pub fn monomial(k: u32) -> Self {
        let mut c = vec![0i64; k as usize + 1];
        c[k as usize] = 1;
        IntPolynomial(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval_i128(&self, m: i128) -> i128 {
        self.0
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * m + c as i128)
    }

    /// `P(m) mod q`, reduced at every Horner step so nothing overflows.
    pub fn eval_mod(&self, m: i64, q: u64) -> i128 {
        let qi = q as i128;
        let mm = (m as i128).rem_euclid(qi);
        self.0.iter().rev().fold(0i128, |acc, &c| {
            (acc * mm + (c as i128).rem_euclid(qi)).rem_euclid(qi)
        })
    }

    pub fn eval_f64(&self, m: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * m + c as f64)
    }
}

/// The four boundary families.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySpec {
    /// Purely periodic problem for `u_t + iP(-i∂_x)u = 0`.
    Periodic { poly: IntPolynomial },
    /// Linear Schrödinger with `β₀u(0) = u(2π)`, `β₁u_x(0) = u_x(2π)`.
    PseudoPeriodicLs { beta0: C64, beta1: C64 },
    /// Airy with `e^{2πiθ}∂^m u(0) = ∂^m u(2π)`, `m = 0,1,2`.
    QuasiPeriodicAiry { theta: f64 },
    /// Schrödinger on `(0,π)` with `b·u = (1-b)·u_x` at both ends.
    Robin { b: f64 },
}

/// Degeneracy flags attached to a validated boundary spec.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundaryFlags {
    /// `conj(β₀)·β₁ = 1` within tolerance: the spatial operator is self-adjoint.
    pub self_adjoint: bool,
    /// `(1+β₀β₁)/(β₀+β₁) = 1` within tolerance: γ = 1 and the eigenfunction
    /// normalization is 0/0. Such pairs must be routed to the periodic solver.
    pub periodic_degenerate: bool,
}

/// Validate a boundary spec and report its degeneracy flags.
pub fn validate_boundary(spec: &BoundarySpec) -> Result<BoundaryFlags> {
    match spec {
        BoundarySpec::Periodic { .. } => Ok(BoundaryFlags::default()),
        BoundarySpec::PseudoPeriodicLs { beta0, beta1 } => {
            let denom = beta0 + beta1;
            if denom.norm() == 0.0 {
                return Err(Error::UndefinedK0);
            }
            let ratio = (1.0 + beta0 * beta1) / denom;
            if ratio.im.abs() > VALIDATION_TOL || ratio.re.abs() > 1.0 + VALIDATION_TOL {
                return Err(Error::ComplexSpectrumUnsupported {
                    re: ratio.re,
                    im: ratio.im,
                });
            }
            let self_adjoint = (beta0.conj() * beta1 - 1.0).norm() <= VALIDATION_TOL;
            let periodic_degenerate = (ratio - 1.0).norm() <= VALIDATION_TOL;
            Ok(BoundaryFlags {
                self_adjoint,
                periodic_degenerate,
            })
        }
        BoundarySpec::QuasiPeriodicAiry { theta } => {
            if !(0.0..1.0).contains(theta) {
                return Err(Error::InvalidTheta(format!(
                    "theta must lie in [0,1), got {theta}"
                )));
            }
            // |β| = 1, so conj(β)β = 1 and the operator is self-adjoint.
            Ok(BoundaryFlags {
                self_adjoint: true,
                periodic_degenerate: *theta == 0.0,
            })
        }
        BoundarySpec::Robin { b } => {
            if !(0.0..=1.0).contains(b) {
                return Err(Error::InvalidRobinParameter(*b));
            }
            Ok(BoundaryFlags {
                self_adjoint: true,
                periodic_degenerate: false,
            })
        }
    }
}

/// Complex samples on the uniform grid `x_n = n·L/N`, `n = 0..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    domain_length: f64,
    samples: Vec<C64>,
}

impl GridFunction {
    pub fn new(domain_length: f64, samples: Vec<C64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidGrid("need at least 2 samples".into()));
        }
        if !(domain_length.is_finite() && domain_length > 0.0) {
            return Err(Error::InvalidGrid("domain length must be finite and positive".into()));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::InvalidGrid("samples must be finite".into()));
        }
        Ok(GridFunction {
            domain_length,
            samples,
        })
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.domain_length / self.samples.len() as f64
    }

    pub fn x(&self, n: usize) -> f64 {
        n as f64 * self.step()
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// Periodic whole-grid translation: the result samples `u*(x - k·h)`.
    pub fn rotate(&self, cells: i64) -> GridFunction {
        let n = self.samples.len() as i64;
        let samples = (0..n)
            .map(|j| self.samples[(j - cells).rem_euclid(n) as usize])
            .collect();
        GridFunction {
            domain_length: self.domain_length,
            samples,
        }
    }

    /// Discrete L² norm `sqrt(h·Σ|u_n|²)` (rectangle rule).
    pub fn l2_norm(&self) -> f64 {
        (self.step() * self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Initial data for any of the boundary value problems.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// Piecewise-constant: `breakpoints[j]` starts the interval carrying
    /// `values[j]`; the last interval wraps around the domain end back to
    /// `breakpoints[0]`. The value at a breakpoint is the value of the
    /// interval to its right.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<C64>,
    },
    /// Finite sum `Σ a·e^{imx}` over integer modes.
    HarmonicSum { terms: Vec<(i64, C64)> },
    /// Grid samples, interpreted as cell-wise constant between nodes.
    Sampled(GridFunction),
}

impl InitialCondition {
    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<C64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::InvalidPiecewise(
                "breakpoints and values must be non-empty and of equal length".into(),
            ));
        }
        if breakpoints.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::InvalidPiecewise("breakpoints must be finite and >= 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPiecewise("breakpoints must be strictly increasing".into()));
        }
        Ok(InitialCondition::PiecewiseConstant {
            breakpoints,
            values,
        })
    }

    pub fn harmonic_sum(terms: Vec<(i64, C64)>) -> Self {
        InitialCondition::HarmonicSum { terms }
    }

    pub fn sampled(grid: GridFunction) -> Self {
        InitialCondition::Sampled(grid)
    }

    /// Unit step occupying the upper half of the domain: 0 on `(0, L/2)`,
    /// 1 on `(L/2, L)` — the rough profile used by the figure experiments.
    pub fn step_on_upper_half(length: f64) -> Self {
        InitialCondition::PiecewiseConstant {
            breakpoints: vec![0.0, length / 2.0],
            values: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        }
    }

    /// `e^{ix}(1-e^{ix})^4` on `(0, 2π)`: a smooth band-limited profile whose
    /// value and first three derivatives vanish at the endpoints, so it lies
    /// in the domain of every pseudo-periodic operator.
    pub fn clamped_packet_2pi() -> Self {
        InitialCondition::HarmonicSum {
            terms: vec![
                (1, C64::new(1.0, 0.0)),
                (2, C64::new(-4.0, 0.0)),
                (3, C64::new(6.0, 0.0)),
                (4, C64::new(-4.0, 0.0)),
                (5, C64::new(1.0, 0.0)),
            ],
        }
    }

    /// `sin(x)^4·e^{ix}` on `(0, π)`: vanishes to fourth order at 0 and π,
    /// hence satisfies every Robin condition; the half-interval analogue of
    /// [`Self::clamped_packet_2pi`].
    pub fn clamped_packet_pi() -> Self {
        InitialCondition::HarmonicSum {
            terms: vec![
                (1, C64::new(0.375, 0.0)),
                (3, C64::new(-0.25, 0.0)),
                (-1, C64::new(-0.25, 0.0)),
                (5, C64::new(0.0625, 0.0)),
                (-3, C64::new(0.0625, 0.0)),
            ],
        }
    }

    /// The intervals `(a, b, value)` covering `[0, L)`, with the wrap-around
    /// interval split in two when `breakpoints[0] > 0`.
    pub(crate) fn intervals(&self, length: f64) -> Vec<(f64, f64, C64)> {
        match self {
            InitialCondition::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let k = breakpoints.len();
                let mut out = Vec::with_capacity(k + 1);
                for j in 0..k {
                    let a = breakpoints[j];
                    let b = if j + 1 < k { breakpoints[j + 1] } else { length };
                    if b > a {
                        out.push((a, b, values[j]));
                    }
                }
                if breakpoints[0] > 0.0 {
                    // wrap: the last interval continues through the origin
                    out.push((0.0, breakpoints[0], values[k - 1]));
                }
                out
            }
            _ => panic!("intervals() is only defined for piecewise-constant data"),
        }
    }

    /// Point evaluation on the periodic extension (x is wrapped into `[0, L)`).
    pub fn eval(&self, x: f64, length: f64) -> C64 {
        let xw = x.rem_euclid(length);
        self.eval_in_domain(xw, length)
    }

    fn eval_in_domain(&self, x: f64, _length: f64) -> C64 {
        match self {
            InitialCondition::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let idx = breakpoints.partition_point(|b| *b <= x);
                if idx == 0 {
                    // left of the first breakpoint: wrapped last interval
                    values[values.len() - 1]
                } else {
                    values[idx - 1]
                }
            }
            InitialCondition::HarmonicSum { terms } => terms
                .iter()
                .map(|(m, a)| a * expi(*m as f64 * x))
                .sum(),
            InitialCondition::Sampled(g) => {
                let n = g.len();
                let mut idx = (x / g.step()).floor() as usize;
                if idx >= n {
                    idx = n - 1;
                }
                g.samples()[idx]
            }
        }
    }

    /// Evaluation at `x ∈ [0, L]` where `x = L` means the limit from the left.
    pub(crate) fn eval_at_or_left(&self, x: f64, length: f64) -> C64 {
        if x < length {
            self.eval_in_domain(x, length)
        } else {
            match self {
                // the interval abutting L from below is always the last one
                InitialCondition::PiecewiseConstant { values, .. } => values[values.len() - 1],
                InitialCondition::HarmonicSum { terms } => terms
                    .iter()
                    .map(|(m, a)| a * expi(*m as f64 * length))
                    .sum(),
                InitialCondition::Sampled(g) => g.samples()[g.len() - 1],
            }
        }
    }

    /// Sample onto the uniform grid `x_n = n·L/N`.
    pub fn sample(&self, n: usize, length: f64) -> Result<GridFunction> {
        let samples = (0..n)
            .map(|j| self.eval_in_domain(j as f64 * length / n as f64, length))
            .collect();
        GridFunction::new(length, samples)
    }

    /// The reflection `u♮(x) = u(L - x)` as initial data on the same domain.
    pub fn reflected(&self, length: f64) -> InitialCondition {
        match self {
            InitialCondition::PiecewiseConstant { .. } => {
                let mut pieces: Vec<(f64, C64)> = self
                    .intervals(length)
                    .into_iter()
                    .map(|(_, b, v)| {
                        let start = if b >= length { 0.0 } else { length - b };
                        (start, v)
                    })
                    .collect();
                pieces.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
                let (breakpoints, values) = pieces.into_iter().unzip();
                InitialCondition::PiecewiseConstant {
                    breakpoints,
                    values,
                }
            }
            InitialCondition::HarmonicSum { terms } => InitialCondition::HarmonicSum {
                terms: terms
                    .iter()
                    .map(|(m, a)| (-*m, a * expi(*m as f64 * length)))
                    .collect(),
            },
            InitialCondition::Sampled(g) => {
                let n = g.len();
                let samples = (0..n)
                    .map(|j| g.samples()[(n - j) % n])
                    .collect();
                InitialCondition::Sampled(GridFunction {
                    domain_length: g.domain_length,
                    samples,
                })
            }
        }
    }
}

/// A finite symmetric window of Fourier coefficients with respect to the
/// orthonormal family `e_m(x) = e^{imx}/√(2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    m_max: usize,
    values: Vec<C64>,
}

impl FourierCoeffs {
    pub fn zeros(m_max: usize) -> Self {
        FourierCoeffs {
            m_max,
            values: vec![C64::new(0.0, 0.0); 2 * m_max + 1],
        }
    }

    pub fn from_values(m_max: usize, values: Vec<C64>) -> Result<Self> {
        if values.len() != 2 * m_max + 1 {
            return Err(Error::InvalidGrid(format!(
                "coefficient window of radius {m_max} needs {} values, got {}",
                2 * m_max + 1,
                values.len()
            )));
        }
        Ok(FourierCoeffs { m_max, values })
    }

    pub fn window_radius(&self) -> usize {
        self.m_max
    }

    #[inline]
    pub fn get(&self, m: i64) -> C64 {
        debug_assert!(m.unsigned_abs() as usize <= self.m_max);
        self.values[(m + self.m_max as i64) as usize]
    }

    #[inline]
    pub fn set(&mut self, m: i64, v: C64) {
        self.values[(m + self.m_max as i64) as usize] = v;
    }

    /// Iterate `(m, c(m))` from `-M` to `M`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let m0 = self.m_max as i64;
        self.values.iter().enumerate().map(move |(i, &v)| (i as i64 - m0, v))
    }

    /// Build from a closure over the window indices.
    pub fn from_fn(m_max: usize, mut f: impl FnMut(i64) -> C64) -> Self {
        let m0 = m_max as i64;
        FourierCoeffs {
            m_max,
            values: (-m0..=m0).map(&mut f).collect(),
        }
    }

    /// Parseval norm `sqrt(Σ|c(m)|²)`, equal to the L² norm of the synthesis.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, a: C64) -> FourierCoeffs {
        FourierCoeffs {
            m_max: self.m_max,
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    pub fn add(&self, other: &FourierCoeffs) -> FourierCoeffs {
        assert_eq!(self.m_max, other.m_max, "window radii must match");
        FourierCoeffs {
            m_max: self.m_max,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FourierCoeffs) -> FourierCoeffs {
        assert_eq!(self.m_max, other.m_max, "window radii must match");
        FourierCoeffs {
            m_max: self.m_max,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}
