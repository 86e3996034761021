//! Post-processing diagnostics: jump detection, box-counting dimension,
//! grid comparison and coefficient-decay estimation.

use crate::domain::{FourierCoeffs, GridFunction};
use crate::error::{Error, Result};

/// Default jump-detector window (cells of one-sided context).
pub const JUMP_WINDOW: usize = 32;
/// Default jump-detector threshold factor over the local median oscillation.
pub const JUMP_FACTOR: f64 = 8.0;
/// Default box-counting scale range as fractions of the domain length.
pub const DIMENSION_SCALES: (f64, f64) = (1.0 / 1024.0, 1.0 / 16.0);

/// A detected discontinuity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    /// Cell index n: the jump sits between samples n and n+1.
    pub index: usize,
    /// Midpoint of the straddling cell.
    pub location: f64,
    /// One-step increment magnitude `|u(x_{n+1}) - u(x_n)|`.
    pub magnitude: f64,
}

/// Find cells whose one-step increment exceeds `factor` times the median
/// increment over a `±window` neighbourhood (with a small absolute floor so
/// rounding noise on flat profiles never fires). Adjacent firing cells are
/// merged into the single largest one.
pub fn detect_jumps(u: &GridFunction, window: usize, factor: f64) -> Result<Vec<Jump>> {
    let n = u.len();
    if n < 64 {
        return Err(Error::GridTooCoarse {
            n,
            reason: "jump detection needs at least 64 samples",
        });
    }
    let samples = u.samples();
    // interior increments only: the seam between x_{N-1} and x_0 is not a
    // property of the profile on (0, L)
    let incs: Vec<f64> = samples
        .windows(2)
        .map(|w| (w[1] - w[0]).norm())
        .collect();
    let sup = samples.iter().map(|s| s.norm()).fold(0.0f64, f64::max);
    let floor = 1e-9 * sup.max(1e-300);

    let mut firing: Vec<usize> = Vec::new();
    let mut scratch: Vec<f64> = Vec::with_capacity(2 * window + 1);
    for i in 0..incs.len() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(incs.len());
        scratch.clear();
        scratch.extend_from_slice(&incs[lo..hi]);
        let mid = scratch.len() / 2;
        scratch.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let median = scratch[mid];
        if incs[i] > factor * median.max(floor) {
            firing.push(i);
        }
    }

    let h = u.step();
    let mut jumps: Vec<Jump> = Vec::new();
    let mut cluster: Vec<usize> = Vec::new();
    let flush = |cluster: &mut Vec<usize>, jumps: &mut Vec<Jump>| {
        if let Some(&best) = cluster
            .iter()
            .max_by(|a, b| incs[**a].partial_cmp(&incs[**b]).unwrap())
        {
            jumps.push(Jump {
                index: best,
                location: (best as f64 + 0.5) * h,
                magnitude: incs[best],
            });
        }
        cluster.clear();
    };
    for i in firing {
        if let Some(&last) = cluster.last() {
            if i > last + 1 {
                flush(&mut cluster, &mut jumps);
            }
        }
        cluster.push(i);
    }
    flush(&mut cluster, &mut jumps);
    Ok(jumps)
}

/// Box-counting estimate of the graph dimension of `Re u`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    /// Least-squares slope of `log N(ε)` against `log(1/ε)`.
    pub estimate: f64,
    /// Standard error of the fitted slope.
    pub stderr: f64,
    /// The `(ε, N(ε))` pairs that entered the fit.
    pub counts: Vec<(f64, u64)>,
}

/// Dyadic box counting of the graph of `Re u` over the normalized unit
/// square, scanning scales `ε = 2^{-s}` inside `scale_range` (fractions of
/// the domain length). Counts per column are `floor(osc/ε) + 1`.
pub fn box_dimension(u: &GridFunction, scale_range: (f64, f64)) -> Result<DimensionEstimate> {
    let (lo, hi) = if scale_range.0 <= scale_range.1 {
        scale_range
    } else {
        (scale_range.1, scale_range.0)
    };
    if !(lo > 0.0 && hi < 1.0) {
        return Err(Error::InsufficientScales);
    }
    let s_min = (1.0 / hi).log2().ceil() as i32;
    let s_max = (1.0 / lo).log2().floor() as i32;
    if s_max - s_min + 1 < 4 {
        return Err(Error::InsufficientScales);
    }

    let re: Vec<f64> = u.samples().iter().map(|s| s.re).collect();
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in &re {
        y_min = y_min.min(v);
        y_max = y_max.max(v);
    }
    let y_span = (y_max - y_min).max(1e-300);
    let n = re.len();

    let mut counts = Vec::new();
    for s in s_min..=s_max {
        let eps = 0.5f64.powi(s);
        let cols = (1.0 / eps).round() as usize;
        let mut total: u64 = 0;
        for c in 0..cols {
            let a = c * n / cols;
            let b = ((c + 1) * n / cols).min(n);
            if a >= b {
                continue;
            }
            let (mut cmin, mut cmax) = (f64::INFINITY, f64::NEG_INFINITY);
            for &v in &re[a..b] {
                cmin = cmin.min(v);
                cmax = cmax.max(v);
            }
            let osc = (cmax - cmin) / y_span;
            total += (osc / eps).floor() as u64 + 1;
        }
        counts.push((eps, total));
    }

    let pts: Vec<(f64, f64)> = counts
        .iter()
        .map(|(eps, n)| ((1.0 / eps).ln(), (*n as f64).ln()))
        .collect();
    let (slope, stderr) = fit_line(&pts);
    Ok(DimensionEstimate {
        estimate: slope,
        stderr,
        counts,
    })
}

/// Least-squares slope and its standard error.
fn fit_line(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let dof = (pts.len().max(3) - 2) as f64;
    let stderr = (ss_res / dof / sxx).sqrt();
    (slope, stderr)
}

/// Sup and relative-L² distance between two grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareReport {
    pub sup_err: f64,
    pub l2_rel_err: f64,
}

/// Compare two grid functions sample-wise (same grid required).
pub fn compare(f: &GridFunction, g: &GridFunction) -> Result<CompareReport> {
    if f.len() != g.len() {
        return Err(Error::GridMismatch(format!(
            "sample counts differ: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    if (f.domain_length() - g.domain_length()).abs() > 1e-12 {
        return Err(Error::GridMismatch(format!(
            "domain lengths differ: {} vs {}",
            f.domain_length(),
            g.domain_length()
        )));
    }
    let mut sup = 0.0f64;
    let mut diff2 = 0.0f64;
    let mut ref2 = 0.0f64;
    for (a, b) in f.samples().iter().zip(g.samples()) {
        let d = (a - b).norm();
        sup = sup.max(d);
        diff2 += d * d;
        ref2 += b.norm_sqr();
    }
    let l2_rel_err = if ref2 > 0.0 {
        (diff2 / ref2).sqrt()
    } else {
        (diff2 * f.step()).sqrt()
    };
    Ok(CompareReport {
        sup_err: sup,
        l2_rel_err,
    })
}

/// Least-squares decay exponent of `log|c(m)|` against `log|m|` over the
/// outer band `M/4 ≤ |m| ≤ M`. Zero entries are skipped; an all-zero tail is
/// an error.
pub fn decay_exponent(c: &FourierCoeffs) -> Result<f64> {
    let m_max = c.window_radius();
    if m_max < 64 {
        return Err(Error::GridTooCoarse {
            n: m_max,
            reason: "decay estimation needs window radius >= 64",
        });
    }
    let lo = (m_max / 4).max(1);
    let band: Vec<(usize, f64)> = c
        .iter()
        .filter_map(|(m, v)| {
            let am = m.unsigned_abs() as usize;
            (am >= lo && am <= m_max).then(|| (am, v.norm()))
        })
        .collect();
    let peak = band.iter().map(|(_, v)| *v).fold(0.0f64, f64::max);
    // entries at rounding level are structural zeros, not decay data
    let cutoff = peak * 1e-13;
    let pts: Vec<(f64, f64)> = band
        .iter()
        .filter(|(_, v)| *v > cutoff)
        .map(|(am, v)| ((*am as f64).ln(), v.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::UndefinedDecay);
    }
    Ok(fit_line(&pts).0)
}
