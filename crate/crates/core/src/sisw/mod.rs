//! Closed-form physics of the supersymmetric infinite-square-well hierarchy.
//!
//! Level `S` of the hierarchy is the potential `V_S(x) = E0 S(S+1) / sin^2(y)`
//! on `0 < x < a`, `y = pi x / a`, with spectrum `E0 (n + S + 1)^2`. Its
//! normalized eigenfunctions are
//!
//! ```text
//! psi_n^S(x) = a^{-1/2} [2^{2S+1} n! S!^2 (n+S+1) / (n+2S+1)!]^{1/2}
//!              C_n^{(S+1)}(cos y) sin^{S+1}(y)
//! ```
//!
//! Every state is positive just to the right of `x = 0`.
//!
//! Internally everything is computed in the dimensionless coordinate `y` with
//! energies in units of `E0`; [`WellConfig`] converts at the API boundary.

pub mod pt1;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::specfun::{chebyshev_u, gegenbauer, gegenbauer_derivative, log_gamma};
use crate::{Error, Result};

pub use pt1::{pt1_eigenfunction, pt1_energy, pt1_potential, PT1Params};

pub const DEFAULT_MAX_N: usize = 64;
pub const DEFAULT_MAX_S: usize = 32;

/// Excitation number `n` (0 = ground state) and hierarchy level `s` (0 = ISW).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateIndex {
    pub n: usize,
    pub s: usize,
}

impl StateIndex {
    /// Checked constructor using the default maxima.
    pub fn new(n: usize, s: usize) -> Result<Self> {
        Self::with_limits(n, s, DEFAULT_MAX_N, DEFAULT_MAX_S)
    }

    pub fn with_limits(n: usize, s: usize, max_n: usize, max_s: usize) -> Result<Self> {
        if n > max_n || s > max_s {
            return Err(Error::Parameter(format!(
                "state (n={n}, S={s}) exceeds limits (n <= {max_n}, S <= {max_s})"
            )));
        }
        Ok(StateIndex { n, s })
    }

    /// `n + S + 1`, the square root of the energy in units of `E0`.
    pub fn level_number(&self) -> usize {
        self.n + self.s + 1
    }
}

impl std::fmt::Display for StateIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, S={})", self.n, self.s)
    }
}

/// Well width and units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellConfig {
    pub a: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl Default for WellConfig {
    fn default() -> Self {
        WellConfig {
            a: 1.0,
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl WellConfig {
    pub fn new(a: f64, hbar: f64, mass: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("hbar", hbar), ("mass", mass)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(WellConfig { a, hbar, mass })
    }

    pub fn with_width(a: f64) -> Result<Self> {
        Self::new(a, 1.0, 1.0)
    }

    /// Zero-point energy `E0 = hbar^2 pi^2 / (2 m a^2)`.
    pub fn e0(&self) -> f64 {
        self.hbar * self.hbar * PI * PI / (2.0 * self.mass * self.a * self.a)
    }

    /// `hbar^2 / (2 m)`, the kinetic prefactor.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// `y = pi x / a`.
    pub fn to_angle(&self, x: f64) -> f64 {
        PI * x / self.a
    }

    fn check_closed(&self, x: f64) -> Result<()> {
        if x.is_finite() && (0.0..=self.a).contains(&x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("x = {x} outside [0, {}]", self.a)))
        }
    }

    fn check_open(&self, x: f64) -> Result<()> {
        if x.is_finite() && x > 0.0 && x < self.a {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "x = {x} outside (0, {}); the potential is infinite there",
                self.a
            )))
        }
    }
}

/// `E_n^S = E0 (n + S + 1)^2`.
pub fn energy(state: StateIndex, cfg: &WellConfig) -> f64 {
    cfg.e0() * energy_in_e0(state)
}

pub fn energy_in_e0(state: StateIndex) -> f64 {
    let k = state.level_number() as f64;
    k * k
}

/// `V_S(x) = E0 S(S+1) / sin^2(pi x / a)` on the open interval.
pub fn potential(s: usize, x: f64, cfg: &WellConfig) -> Result<f64> {
    cfg.check_open(x)?;
    if s == 0 {
        return Ok(0.0);
    }
    let sin = cfg.to_angle(x).sin();
    Ok(cfg.e0() * (s * (s + 1)) as f64 / (sin * sin))
}

/// `dV_S/dx = -2 pi E0 S(S+1) cos(y) / (a sin^3 y)`.
pub fn potential_derivative(s: usize, x: f64, cfg: &WellConfig) -> Result<f64> {
    cfg.check_open(x)?;
    let (sin, cos) = cfg.to_angle(x).sin_cos();
    Ok(-2.0 * PI * cfg.e0() * (s * (s + 1)) as f64 * cos / (cfg.a * sin * sin * sin))
}

/// `ln` of the Gegenbauer-form normalization bracket's square root, without
/// the `a^{-1/2}` factor.
pub fn ln_normalization(state: StateIndex) -> f64 {
    let n = state.n as f64;
    let s = state.s as f64;
    let ln = (2.0 * s + 1.0) * std::f64::consts::LN_2
        + lg(n + 1.0)
        + 2.0 * lg(s + 1.0)
        + (n + s + 1.0).ln()
        - lg(n + 2.0 * s + 2.0);
    0.5 * ln
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

/// A closed-form eigenstate with its normalization precomputed.
#[derive(Debug, Clone, Copy)]
pub struct Eigenstate {
    state: StateIndex,
    cfg: WellConfig,
    norm: f64,
    alpha: f64,
}

/// Value and first two `x`-derivatives of a wavefunction at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Eigenstate {
    pub fn new(state: StateIndex, cfg: WellConfig) -> Self {
        Eigenstate {
            state,
            cfg,
            norm: ln_normalization(state).exp() / cfg.a.sqrt(),
            alpha: state.s as f64 + 1.0,
        }
    }

    pub fn state(&self) -> StateIndex {
        self.state
    }

    pub fn config(&self) -> &WellConfig {
        &self.cfg
    }

    /// Full prefactor including `a^{-1/2}`.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn energy(&self) -> f64 {
        energy(self.state, &self.cfg)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.cfg.check_closed(x)?;
        Ok(self.value_unchecked(x))
    }

    pub(crate) fn value_unchecked(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= self.cfg.a {
            return 0.0;
        }
        let (sin, cos) = self.cfg.to_angle(x).sin_cos();
        self.norm * gegenbauer(self.state.n, self.alpha, cos) * sin.powi(self.state.s as i32 + 1)
    }

    /// Value and analytic derivatives with respect to `y = pi x / a`.
    pub fn jet_in_angle(&self, y: f64) -> Jet {
        let n = self.state.n;
        let k = self.state.s as i32 + 1;
        let (s, c) = y.sin_cos();
        let p = gegenbauer(n, self.alpha, c);
        let dp = gegenbauer_derivative(n, self.alpha, c, 1);
        let ddp = gegenbauer_derivative(n, self.alpha, c, 2);
        // G(y) = P(cos y)
        let g = p;
        let g1 = -s * dp;
        let g2 = s * s * ddp - c * dp;
        let kf = k as f64;
        let sk = s.powi(k);
        let sk1 = s.powi(k - 1);
        // d^2/dy^2 sin^k = k(k-1) sin^{k-2} cos^2 - k sin^k; written to avoid
        // negative powers when k = 1.
        let sk_dd = if k >= 2 {
            kf * (kf - 1.0) * s.powi(k - 2) * c * c - kf * sk
        } else {
            -sk
        };
        let value = g * sk;
        let d1 = g1 * sk + g * kf * sk1 * c;
        let d2 = g2 * sk + 2.0 * g1 * kf * sk1 * c + g * sk_dd;
        Jet {
            value: self.norm * value,
            d1: self.norm * d1,
            d2: self.norm * d2,
        }
    }

    /// Value and analytic `x`-derivatives.
    pub fn jet(&self, x: f64) -> Result<Jet> {
        self.cfg.check_closed(x)?;
        let scale = PI / self.cfg.a;
        let j = self.jet_in_angle(self.cfg.to_angle(x));
        let value = if x <= 0.0 || x >= self.cfg.a { 0.0 } else { j.value };
        Ok(Jet {
            value,
            d1: j.d1 * scale,
            d2: j.d2 * scale * scale,
        })
    }
}

/// Normalized `psi_n^S(x)` in Gegenbauer form. Exactly zero at the walls.
pub fn eigenfunction(state: StateIndex, x: f64, cfg: &WellConfig) -> Result<f64> {
    Eigenstate::new(state, *cfg).value(x)
}

/// ISW eigenfunctions written as `sqrt(2/a) U_n(cos y) sin y`.
///
/// The degree of the Chebyshev polynomial equals the excitation number, so
/// that `U_n(cos y) sin y = sin((n+1) y)`.
pub fn eigenfunction_chebyshev(n: usize, x: f64, cfg: &WellConfig) -> Result<f64> {
    cfg.check_closed(x)?;
    if x <= 0.0 || x >= cfg.a {
        return Ok(0.0);
    }
    let (s, c) = cfg.to_angle(x).sin_cos();
    Ok((2.0 / cfg.a).sqrt() * chebyshev_u(n, c) * s)
}

/// Ground and first excited states of level `S` from their explicit
/// gamma-function normalizations.
pub fn ground_and_first(s: usize, x: f64, cfg: &WellConfig) -> Result<(f64, f64)> {
    cfg.check_closed(x)?;
    if x <= 0.0 || x >= cfg.a {
        return Ok((0.0, 0.0));
    }
    let sf = s as f64;
    let ln_sqrt_pi = 0.5 * PI.ln();
    let ln_denominator = lg(sf + 1.5);
    let n0 = (0.5 * (ln_sqrt_pi + lg(sf + 2.0) - ln_denominator)).exp();
    let n1 = (0.5 * (std::f64::consts::LN_2 + ln_sqrt_pi + lg(sf + 3.0) - ln_denominator)).exp();
    let (sin, cos) = cfg.to_angle(x).sin_cos();
    let envelope = sin.powi(s as i32 + 1) / cfg.a.sqrt();
    Ok((n0 * envelope, n1 * cos * envelope))
}

/// Coefficients `c_k` of the normalized polynomial part,
/// `psi_n^S(x) = a^{-1/2} sum_k c_k cos^k(y) sin^{S+1}(y)`.
///
/// Generated from the two-step recursion
/// `c_{k+2} = c_k [(k+S+1)^2 - (n+S+1)^2] / [(k+1)(k+2)]`, seeded by parity,
/// then scaled so the leading coefficient equals that of the normalized
/// Gegenbauer form, `N 2^n (S+1)_n / n!`. All roots lie inside `(-1, 1)`,
/// so a positive leading coefficient makes the state positive near `x = 0`.
pub fn series_coefficients(state: StateIndex) -> Vec<f64> {
    let n = state.n;
    let s = state.s as f64;
    let top = (n as f64 + s + 1.0).powi(2);
    let mut a = vec![0.0; n + 1];
    a[n % 2] = 1.0;
    let mut k = n % 2;
    while k + 2 <= n {
        let kf = k as f64;
        a[k + 2] = a[k] * ((kf + s + 1.0).powi(2) - top) / ((kf + 1.0) * (kf + 2.0));
        k += 2;
    }
    let nf = n as f64;
    let ln_lead = ln_normalization(state) + nf * std::f64::consts::LN_2 + lg(s + 1.0 + nf)
        - lg(s + 1.0)
        - lg(nf + 1.0);
    let scale = ln_lead.exp() / a[n];
    a.iter().map(|c| c * scale).collect()
}
