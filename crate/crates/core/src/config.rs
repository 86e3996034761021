//! JSON configuration schema shared by the CLI and library users.
//!
//! A document carries the keys `boundary`, `initial`, `truncation`, `grid`
//! and `time` (plus optional `tolerance` and `sweep`). Real-valued entries
//! accept either a number or an expression string (`"sqrt(2)/3"`, `"2*pi/3"`)
//! evaluated by [`crate::expr`].

use crate::domain::{BoundarySpec, InitialCondition, IntPolynomial, RationalTime, ThetaFraction};
use crate::error::{Error, Result};
use crate::expr;
use crate::{GridFunction, C64};
use serde::Deserialize;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub boundary: BoundaryCfg,
    pub initial: InitialCfg,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default)]
    pub time: Option<TimeCfg>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub sweep: Option<SweepCfg>,
}

fn default_truncation() -> usize {
    crate::harmonic::DEFAULT_WINDOW
}

fn default_grid() -> usize {
    crate::harmonic::DEFAULT_GRID
}

impl Config {
    pub fn from_str(src: &str) -> Result<Config> {
        serde_json::from_str(src).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// The required `time` entry, resolved.
    pub fn resolved_time(&self) -> Result<ResolvedTime> {
        self.time
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("missing 'time' entry".into()))?
            .resolve()
    }
}

/// A real number, either literal or an expression string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RealCfg {
    Num(f64),
    Expr(String),
}

impl RealCfg {
    pub fn resolve(&self) -> Result<f64> {
        match self {
            RealCfg::Num(v) => Ok(*v),
            RealCfg::Expr(s) => expr::eval(s),
        }
    }
}

/// A complex number: a bare real, an expression string, or a `[re, im]` pair.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ComplexCfg {
    Real(f64),
    Expr(String),
    Pair(RealCfg, RealCfg),
}

impl ComplexCfg {
    pub fn resolve(&self) -> Result<C64> {
        match self {
            ComplexCfg::Real(v) => Ok(C64::new(*v, 0.0)),
            ComplexCfg::Expr(s) => Ok(C64::new(expr::eval(s)?, 0.0)),
            ComplexCfg::Pair(re, im) => Ok(C64::new(re.resolve()?, im.resolve()?)),
        }
    }
}

/// Quasi-periodicity parameter: an exact fraction `{c, d}` (required by the
/// rational-θ engines) or a real value.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ThetaCfg {
    Fraction { c: u64, d: u64 },
    Value(RealCfg),
}

impl ThetaCfg {
    pub fn resolve(&self) -> Result<f64> {
        match self {
            ThetaCfg::Fraction { c, d } => Ok(ThetaFraction::new(*c, *d)?.value()),
            ThetaCfg::Value(v) => v.resolve(),
        }
    }

    pub fn fraction(&self) -> Option<Result<ThetaFraction>> {
        match self {
            ThetaCfg::Fraction { c, d } => Some(ThetaFraction::new(*c, *d)),
            ThetaCfg::Value(_) => None,
        }
    }
}

/// Integer dispersion polynomial: coefficient array (low degree first) or a
/// term expression like `"m^3 - 2*m + 7"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolyCfg {
    Coeffs(Vec<i64>),
    Expr(String),
}

impl PolyCfg {
    pub fn resolve(&self) -> Result<IntPolynomial> {
        match self {
            PolyCfg::Coeffs(c) => Ok(IntPolynomial::new(c.clone())),
            PolyCfg::Expr(s) => parse_int_poly(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundaryCfg {
    Periodic { poly: PolyCfg },
    PseudoPeriodicLs { beta0: ComplexCfg, beta1: ComplexCfg },
    QuasiPeriodicAiry { theta: ThetaCfg },
    Robin { b: RealCfg },
}

impl BoundaryCfg {
    pub fn resolve(&self) -> Result<BoundarySpec> {
        Ok(match self {
            BoundaryCfg::Periodic { poly } => BoundarySpec::Periodic {
                poly: poly.resolve()?,
            },
            BoundaryCfg::PseudoPeriodicLs { beta0, beta1 } => BoundarySpec::PseudoPeriodicLs {
                beta0: beta0.resolve()?,
                beta1: beta1.resolve()?,
            },
            BoundaryCfg::QuasiPeriodicAiry { theta } => BoundarySpec::QuasiPeriodicAiry {
                theta: theta.resolve()?,
            },
            BoundaryCfg::Robin { b } => BoundarySpec::Robin { b: b.resolve()? },
        })
    }

    /// Robin problems live on `(0, π)`, everything else on `(0, 2π)`.
    pub fn domain_length(&self) -> f64 {
        match self {
            BoundaryCfg::Robin { .. } => PI,
            _ => TAU,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCfg {
    /// The canonical rough datum: 0 on the lower half, 1 on the upper half.
    Step,
    PiecewiseConstant {
        breakpoints: Vec<RealCfg>,
        values: Vec<ComplexCfg>,
    },
    HarmonicSum {
        terms: Vec<TermCfg>,
    },
    Sampled {
        samples: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermCfg {
    pub m: i64,
    pub amp: ComplexCfg,
}

impl InitialCfg {
    pub fn resolve(&self, domain_length: f64) -> Result<InitialCondition> {
        match self {
            InitialCfg::Step => Ok(InitialCondition::step_on_upper_half(domain_length)),
            InitialCfg::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let bps = breakpoints
                    .iter()
                    .map(|b| b.resolve())
                    .collect::<Result<Vec<_>>>()?;
                if bps.iter().any(|b| *b >= domain_length) {
                    return Err(Error::InvalidConfig(format!(
                        "breakpoints must lie in [0, {domain_length})"
                    )));
                }
                let vals = values
                    .iter()
                    .map(|v| v.resolve())
                    .collect::<Result<Vec<_>>>()?;
                InitialCondition::piecewise_constant(bps, vals)
            }
            InitialCfg::HarmonicSum { terms } => Ok(InitialCondition::harmonic_sum(
                terms
                    .iter()
                    .map(|t| Ok((t.m, t.amp.resolve()?)))
                    .collect::<Result<Vec<_>>>()?,
            )),
            InitialCfg::Sampled { samples } => {
                let s = samples.iter().map(|(re, im)| C64::new(*re, *im)).collect();
                Ok(InitialCondition::sampled(GridFunction::new(
                    domain_length,
                    s,
                )?))
            }
        }
    }
}

/// Evaluation time: exact rational `{p, q}` (meaning `t = 2πp/q`) or a real
/// value in radians-time.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TimeCfg {
    Rational { p: u64, q: u64 },
    Value(RealCfg),
}

#[derive(Debug, Clone, Copy)]
pub enum ResolvedTime {
    Rational(RationalTime),
    Value(f64),
}

impl ResolvedTime {
    pub fn seconds(&self) -> f64 {
        match self {
            ResolvedTime::Rational(rt) => rt.value(),
            ResolvedTime::Value(v) => *v,
        }
    }

    pub fn rational(&self) -> Option<&RationalTime> {
        match self {
            ResolvedTime::Rational(rt) => Some(rt),
            ResolvedTime::Value(_) => None,
        }
    }
}

impl TimeCfg {
    pub fn resolve(&self) -> Result<ResolvedTime> {
        match self {
            TimeCfg::Rational { p, q } => Ok(ResolvedTime::Rational(RationalTime::new(*p, *q)?)),
            TimeCfg::Value(v) => Ok(ResolvedTime::Value(v.resolve()?)),
        }
    }
}

/// Parameter grid for the sweep workflow.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepCfg {
    pub boundaries: Vec<BoundaryCfg>,
    pub times: Vec<TimeCfg>,
}

/// Parse `"m^3 - 2*m + 7"`-style integer polynomials in the variable `m`.
pub fn parse_int_poly(src: &str) -> Result<IntPolynomial> {
    let bad = |msg: &str| Error::InvalidConfig(format!("polynomial '{src}': {msg}"));
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<i64> = vec![0];
    let mut term = String::new();
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !matches!(compact.as_bytes()[i - 1], b'+' | b'-')
        {
            terms.push(std::mem::take(&mut term));
        }
        term.push(ch);
    }
    terms.push(term);
    for t in terms {
        if t.is_empty() {
            return Err(bad("dangling sign"));
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coeff_str, power) = match body.find('m') {
            None => (body, 0u32),
            Some(pos) => {
                let coeff = body[..pos].trim_end_matches('*');
                let rest = &body[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| bad("expected '^' after m"))?
                        .parse::<u32>()
                        .map_err(|_| bad("bad exponent"))?
                };
                (coeff, power)
            }
        };
        let coeff: i64 = if coeff_str.is_empty() {
            1
        } else {
            coeff_str.parse().map_err(|_| bad("bad coefficient"))?
        };
        let idx = power as usize;
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, 0);
        }
        coeffs[idx] += sign * coeff;
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_parsing() {
        assert_eq!(parse_int_poly("m^2").unwrap().coeffs(), &[0, 0, 1]);
        assert_eq!(parse_int_poly("m^3").unwrap().coeffs(), &[0, 0, 0, 1]);
        assert_eq!(
            parse_int_poly("m^3 - 2*m + 7").unwrap().coeffs(),
            &[7, -2, 0, 1]
        );
        assert_eq!(parse_int_poly("-m").unwrap().coeffs(), &[0, -1]);
        assert_eq!(parse_int_poly("3").unwrap().coeffs(), &[3]);
        assert_eq!(parse_int_poly("2m^2+m^2").unwrap().coeffs(), &[0, 0, 3]);
        assert!(parse_int_poly("m^").is_err());
        assert!(parse_int_poly("x^2").is_err());
    }

    #[test]
    fn full_document() {
        let doc = r#"{
            "boundary": {"family": "quasi_periodic_airy", "theta": {"c": 1, "d": 4}},
            "initial": {"kind": "step"},
            "truncation": 512,
            "grid": 2048,
            "time": {"p": 1, "q": 3}
        }"#;
        let cfg = Config::from_str(doc).unwrap();
        assert_eq!(cfg.truncation, 512);
        assert_eq!(cfg.grid, 2048);
        let t = cfg.resolved_time().unwrap();
        assert!(t.rational().is_some());
        assert!((t.seconds() - TAU / 3.0).abs() < 1e-15);
        let spec = cfg.boundary.resolve().unwrap();
        assert!(matches!(spec, BoundarySpec::QuasiPeriodicAiry { .. }));
    }

    #[test]
    fn expression_entries() {
        let doc = r#"{
            "boundary": {"family": "quasi_periodic_airy", "theta": "sqrt(2)/3"},
            "initial": {"kind": "harmonic_sum", "terms": [{"m": 2, "amp": [1.0, "-1/2"]}]},
            "time": "1.0"
        }"#;
        let cfg = Config::from_str(doc).unwrap();
        match cfg.boundary.resolve().unwrap() {
            BoundarySpec::QuasiPeriodicAiry { theta } => {
                assert!((theta - 2.0f64.sqrt() / 3.0).abs() < 1e-15)
            }
            _ => panic!(),
        }
        let t = cfg.resolved_time().unwrap();
        assert!(t.rational().is_none());
        assert_eq!(t.seconds(), 1.0);
        let u = cfg.initial.resolve(TAU).unwrap();
        match u {
            InitialCondition::HarmonicSum { terms } => {
                assert_eq!(terms[0].0, 2);
                assert!((terms[0].1 - C64::new(1.0, -0.5)).norm() < 1e-15);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn pseudo_periodic_betas() {
        let doc = r#"{
            "boundary": {"family": "pseudo_periodic_ls", "beta0": [2.0, 0.0], "beta1": 0.5},
            "initial": {"kind": "step"},
            "time": {"p": 1, "q": 2}
        }"#;
        let cfg = Config::from_str(doc).unwrap();
        match cfg.boundary.resolve().unwrap() {
            BoundarySpec::PseudoPeriodicLs { beta0, beta1 } => {
                assert_eq!(beta0, C64::new(2.0, 0.0));
                assert_eq!(beta1, C64::new(0.5, 0.0));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(Config::from_str("{}").is_err());
        let doc = r#"{
            "boundary": {"family": "robin", "b": 0.35},
            "initial": {"kind": "step"},
            "unknown_key": 1
        }"#;
        assert!(Config::from_str(doc).is_err());
    }
}
