//! CSV serialization: grid functions as `x,re,im` rows, coefficient windows
//! as `m,re,im` rows. Numbers are written in Rust's shortest round-trip form
//! so identical data produces byte-identical files.

use crate::domain::{FourierCoeffs, GridFunction};
use crate::error::{Error, Result};
use crate::C64;
use std::io::{BufRead, Write};

pub fn write_grid_csv(mut w: impl Write, g: &GridFunction) -> std::io::Result<()> {
    writeln!(w, "x,re,im")?;
    for (n, s) in g.samples().iter().enumerate() {
        writeln!(w, "{},{},{}", g.x(n), s.re, s.im)?;
    }
    Ok(())
}

pub fn write_coeffs_csv(mut w: impl Write, c: &FourierCoeffs) -> std::io::Result<()> {
    writeln!(w, "m,re,im")?;
    for (m, v) in c.iter() {
        writeln!(w, "{},{},{}", m, v.re, v.im)?;
    }
    Ok(())
}

/// Read a grid CSV back. The domain length is recovered from the uniform
/// spacing: `L = N·(x₁-x₀)`.
pub fn read_grid_csv(r: impl BufRead) -> Result<GridFunction> {
    let mut xs: Vec<f64> = Vec::new();
    let mut samples: Vec<C64> = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::InvalidGrid(format!("read error: {e}")))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.starts_with('x') {
            continue;
        }
        let mut parts = line.split(',');
        let mut next = |what: &str| -> Result<f64> {
            parts
                .next()
                .ok_or_else(|| {
                    Error::InvalidGrid(format!("line {}: missing {what}", lineno + 1))
                })?
                .trim()
                .parse()
                .map_err(|e| Error::InvalidGrid(format!("line {}: {what}: {e}", lineno + 1)))
        };
        xs.push(next("x")?);
        let re = next("re")?;
        let im = next("im")?;
        samples.push(C64::new(re, im));
    }
    if samples.len() < 2 {
        return Err(Error::InvalidGrid("need at least 2 rows".into()));
    }
    let h = xs[1] - xs[0];
    if h <= 0.0 {
        return Err(Error::InvalidGrid("x column must increase".into()));
    }
    for (i, w) in xs.windows(2).enumerate() {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "non-uniform spacing near row {}",
                i + 2
            )));
        }
    }
    GridFunction::new(h * samples.len() as f64, samples)
}
