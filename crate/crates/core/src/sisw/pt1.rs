//! Trigonometric Poschl-Teller (PT1) potentials,
//! `V(x) = hbar^2/(2 m a^2) [A(A-alpha)/cos^2(alpha y) + B(B-alpha)/sin^2(alpha y)]`
//! with `y = x / a` on `0 < alpha y < pi/2`.
//!
//! The SISW level `S` is the member `alpha = pi/2`, `A = B = (S+1) pi/2`.

use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::{Deserialize, Serialize};

use super::WellConfig;
use crate::specfun::{jacobi, log_gamma};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PT1Params {
    /// `A`, strength of the `1/cos^2` wall.
    pub cos_strength: f64,
    /// `B`, strength of the `1/sin^2` wall.
    pub sin_strength: f64,
    pub alpha: f64,
}

impl PT1Params {
    pub fn new(cos_strength: f64, sin_strength: f64, alpha: f64) -> Result<Self> {
        for (name, v) in [("A", cos_strength), ("B", sin_strength), ("alpha", alpha)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("PT1 {name} must be > 0, got {v}")));
            }
        }
        Ok(PT1Params {
            cos_strength,
            sin_strength,
            alpha,
        })
    }

    /// Parameters that reproduce SISW level `s`.
    pub fn sisw(s: usize) -> Self {
        let strength = (s as f64 + 1.0) * FRAC_PI_2;
        PT1Params {
            cos_strength: strength,
            sin_strength: strength,
            alpha: FRAC_PI_2,
        }
    }

    /// `(sigma, tau) = (A / alpha, B / alpha)`.
    pub fn exponents(&self) -> (f64, f64) {
        (self.cos_strength / self.alpha, self.sin_strength / self.alpha)
    }

    /// Right edge of the domain, `a pi / (2 alpha)`.
    pub fn x_max(&self, cfg: &WellConfig) -> f64 {
        cfg.a * FRAC_PI_2 / self.alpha
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.cos_strength, self.sin_strength, self.alpha).map(|_| ())
    }
}

fn energy_scale(cfg: &WellConfig) -> f64 {
    cfg.hbar * cfg.hbar / (2.0 * cfg.mass * cfg.a * cfg.a)
}

pub fn pt1_potential(p: &PT1Params, x: f64, cfg: &WellConfig) -> Result<f64> {
    p.validate()?;
    let xmax = p.x_max(cfg);
    if !(x > 0.0 && x < xmax) {
        return Err(Error::Domain(format!("x = {x} outside (0, {xmax})")));
    }
    let (s, c) = (p.alpha * x / cfg.a).sin_cos();
    let a = p.cos_strength;
    let b = p.sin_strength;
    Ok(energy_scale(cfg) * (a * (a - p.alpha) / (c * c) + b * (b - p.alpha) / (s * s)))
}

pub fn pt1_energy(p: &PT1Params, n: usize, cfg: &WellConfig) -> Result<f64> {
    p.validate()?;
    let k = p.cos_strength + p.sin_strength + 2.0 * n as f64 * p.alpha;
    Ok(energy_scale(cfg) * k * k)
}

/// `ln N_n`, with
/// `N_n^2 = (2 alpha / a) (2n+sigma+tau) 2^{-(sigma+tau)} n! G(n+sigma+tau) / [G(n+sigma+1/2) G(n+tau+1/2)]`.
fn ln_normalization(p: &PT1Params, n: usize, cfg: &WellConfig) -> Result<f64> {
    let (sigma, tau) = p.exponents();
    let nf = n as f64;
    let ln2 = (2.0 * p.alpha / cfg.a).ln() + (2.0 * nf + sigma + tau).ln()
        - (sigma + tau) * LN_2
        + log_gamma(nf + 1.0)?
        + log_gamma(nf + sigma + tau)?
        - log_gamma(nf + sigma + 0.5)?
        - log_gamma(nf + tau + 0.5)?;
    Ok(0.5 * ln2)
}

/// `N_n (1-w)^{tau/2} (1+w)^{sigma/2} P_n^{(tau-1/2, sigma-1/2)}(w)`,
/// `w = 1 - 2 sin^2(alpha y)`, on the closed domain `[0, a pi/(2 alpha)]`.
pub fn pt1_eigenfunction(p: &PT1Params, n: usize, x: f64, cfg: &WellConfig) -> Result<f64> {
    p.validate()?;
    let xmax = p.x_max(cfg);
    if !(x >= 0.0 && x <= xmax) {
        return Err(Error::Domain(format!("x = {x} outside [0, {xmax}]")));
    }
    if x == 0.0 || x == xmax {
        return Ok(0.0);
    }
    let (sigma, tau) = p.exponents();
    let (s, c) = (p.alpha * x / cfg.a).sin_cos();
    // 1 - w = 2 sin^2, 1 + w = 2 cos^2
    let w = 1.0 - 2.0 * s * s;
    let ln_env = 0.5 * tau * (2.0 * s * s).ln() + 0.5 * sigma * (2.0 * c * c).ln();
    let ln_n = ln_normalization(p, n, cfg)?;
    Ok((ln_n + ln_env).exp() * jacobi(n, tau - 0.5, sigma - 0.5, w))
}
