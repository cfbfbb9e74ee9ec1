//! Ordinary least-squares line fits, mostly used in log-log space.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fitted `y` values.
    pub rms_residual: f64,
    pub points: usize,
}

/// Rms residual (natural-log units) above which a power-law fit is not
/// reported as valid.
pub const MAX_TAIL_RMS: f64 = 0.05;

/// A power-law fit `|y| ~ C x^exponent` over `fit_range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub exponent: f64,
    /// `ln C`
    pub intercept: f64,
    pub fit_range: (f64, f64),
    pub rms_residual: f64,
    pub points: usize,
}

impl TailFit {
    pub fn from_line(line: LineFit, fit_range: (f64, f64)) -> Self {
        TailFit {
            exponent: line.slope,
            intercept: line.intercept,
            fit_range,
            rms_residual: line.rms_residual,
            points: line.points,
        }
    }

    /// At least one decade of range and an rms residual below
    /// [`MAX_TAIL_RMS`].
    pub fn is_valid(&self) -> bool {
        self.fit_range.1 >= 10.0 * self.fit_range.0 * (1.0 - 1e-12) && self.rms_residual < MAX_TAIL_RMS
    }

    pub fn coefficient(&self) -> f64 {
        self.intercept.exp()
    }
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::Fit(format!(
            "length mismatch: {} x values, {} y values",
            xs.len(),
            ys.len()
        )));
    }
    let m = xs.len();
    if m < 2 {
        return Err(Error::Fit(format!("need at least two points, got {m}")));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::Fit("non-finite data".into()));
    }
    let mf = m as f64;
    let mx = xs.iter().sum::<f64>() / mf;
    let my = ys.iter().sum::<f64>() / mf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(LineFit {
        slope,
        intercept,
        rms_residual: (ss / mf).sqrt(),
        points: m,
    })
}

/// Fits `|y| = C x^k` by regressing `ln|y|` on `ln x`. Points with `x <= 0` or
/// `y == 0` are rejected.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(ys.len());
    for (&x, &y) in xs.iter().zip(ys) {
        if x <= 0.0 || y == 0.0 {
            return Err(Error::Fit(format!("cannot take logs of ({x}, {y})")));
        }
        lx.push(x.ln());
        ly.push(y.abs().ln());
    }
    fit_line(&lx, &ly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let xs: Vec<f64> = (1..20).map(|i| i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-2.0)).collect();
        let f = fit_power_law(&xs, &ys).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12);
        assert!((f.intercept.exp() - 3.0).abs() < 1e-10);
        assert!(f.rms_residual < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_line(&[1.0], &[2.0]).is_err());
        assert!(fit_line(&[1.0, 1.0], &[2.0, 3.0]).is_err());
        assert!(fit_line(&[1.0, 2.0], &[2.0]).is_err());
        assert!(fit_power_law(&[0.0, 1.0], &[1.0, 1.0]).is_err());
    }
}
