use serde::{Deserialize, Serialize};

use super::gamma::log_gamma;
use crate::{Error, Result};

/// Highest supported polynomial degree.
pub const MAX_DEGREE: usize = 200;

/// Slack accepted by [`DomainMode::Lenient`] outside `[-1, 1]`.
const LENIENT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PolyKind {
    /// `C_n^(alpha)`, `alpha > 0`.
    Gegenbauer { alpha: f64 },
    /// `P_n^(mu, nu)`, `mu, nu > -1`.
    Jacobi { mu: f64, nu: f64 },
    /// Chebyshev polynomials of the second kind `U_n`.
    ChebyshevU,
    /// Physicists' Hermite polynomials `H_n`.
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyFamily {
    pub kind: PolyKind,
    pub degree: usize,
}

/// Treatment of arguments outside `[-1, 1]` for the trigonometric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DomainMode {
    /// Reject `|z| > 1`.
    #[default]
    Strict,
    /// Clamp `|z| <= 1 + 1e-12` onto `[-1, 1]`, reject anything further out.
    Lenient,
    /// Evaluate the polynomial anywhere on the real line.
    Unrestricted,
}

impl PolyFamily {
    pub fn new(kind: PolyKind, degree: usize) -> Result<Self> {
        let family = PolyFamily { kind, degree };
        family.validate()?;
        Ok(family)
    }

    pub fn gegenbauer(alpha: f64, degree: usize) -> Result<Self> {
        Self::new(PolyKind::Gegenbauer { alpha }, degree)
    }

    pub fn jacobi(mu: f64, nu: f64, degree: usize) -> Result<Self> {
        Self::new(PolyKind::Jacobi { mu, nu }, degree)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree > MAX_DEGREE {
            return Err(Error::Parameter(format!(
                "degree {} exceeds supported maximum {MAX_DEGREE}",
                self.degree
            )));
        }
        match self.kind {
            PolyKind::Gegenbauer { alpha } if !(alpha > 0.0 && alpha.is_finite()) => Err(
                Error::Parameter(format!("Gegenbauer alpha must be > 0, got {alpha}")),
            ),
            PolyKind::Jacobi { mu, nu }
                if !(mu > -1.0 && nu > -1.0 && mu.is_finite() && nu.is_finite()) =>
            {
                Err(Error::Parameter(format!(
                    "Jacobi parameters must be > -1, got ({mu}, {nu})"
                )))
            }
            _ => Ok(()),
        }
    }

    fn is_trigonometric(&self) -> bool {
        !matches!(self.kind, PolyKind::Hermite)
    }
}

/// Evaluates `family` at `z` in strict domain mode.
pub fn eval_poly(family: &PolyFamily, z: f64) -> Result<f64> {
    eval_poly_with(family, z, DomainMode::Strict)
}

pub fn eval_poly_with(family: &PolyFamily, z: f64, mode: DomainMode) -> Result<f64> {
    family.validate()?;
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let z = if family.is_trigonometric() {
        check_domain(z, mode)?
    } else {
        z
    };
    let n = family.degree;
    Ok(match family.kind {
        PolyKind::Gegenbauer { alpha } => gegenbauer(n, alpha, z),
        PolyKind::Jacobi { mu, nu } => jacobi(n, mu, nu, z),
        PolyKind::ChebyshevU => chebyshev_u(n, z),
        PolyKind::Hermite => hermite(n, z),
    })
}

fn check_domain(z: f64, mode: DomainMode) -> Result<f64> {
    match mode {
        DomainMode::Unrestricted => Ok(z),
        _ if z.abs() <= 1.0 => Ok(z),
        DomainMode::Lenient if z.abs() <= 1.0 + LENIENT_SLACK => Ok(z.clamp(-1.0, 1.0)),
        _ => Err(Error::Domain(format!("argument {z} outside [-1, 1]"))),
    }
}

/// `C_n^(alpha)(z)` by upward recurrence. No argument checking.
pub fn gegenbauer(n: usize, alpha: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * alpha * z;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * z * (kf + alpha - 1.0) * cur - (kf + 2.0 * alpha - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d^order/dz^order C_n^(alpha)(z)` from `C_n^(alpha)' = 2 alpha C_{n-1}^(alpha+1)`.
pub fn gegenbauer_derivative(n: usize, alpha: f64, z: f64, order: usize) -> f64 {
    if order > n {
        return 0.0;
    }
    let mut factor = 1.0;
    for j in 0..order {
        factor *= 2.0 * (alpha + j as f64);
    }
    factor * gegenbauer(n - order, alpha + order as f64, z)
}

/// `P_n^(mu, nu)(z)` by upward recurrence. No argument checking.
pub fn jacobi(n: usize, mu: f64, nu: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (mu - nu) + 0.5 * (mu + nu + 2.0) * z;
    let ab = mu + nu;
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (mu * mu - nu * nu);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (kf + mu - 1.0) * (kf + nu - 1.0) * c;
        let next = ((a2 + a3 * z) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_n(z)`, Chebyshev polynomial of the second kind.
pub fn chebyshev_u(n: usize, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * z;
    for _ in 2..=n {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(z)`, physicists' convention.
pub fn hermite(n: usize, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * z;
    for k in 2..=n {
        let next = 2.0 * z * cur - 2.0 * (k as f64 - 1.0) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer polynomial assembled from the Jacobi polynomial with equal
/// parameters `nu - 1/2`:
///
/// `C_n^(nu)(z) = G(nu+1/2) G(2nu+n) / [G(2nu) G(nu+n+1/2)] * P_n^(nu-1/2, nu-1/2)(z)`
///
/// with the gamma ratio formed in log space.
pub fn gegenbauer_from_jacobi(n: usize, nu: f64, z: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::Parameter(format!("nu must be > 0, got {nu}")));
    }
    if n > MAX_DEGREE {
        return Err(Error::Parameter(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    let z = check_domain(z, DomainMode::Strict)?;
    let nf = n as f64;
    let ln_prefactor = log_gamma(nu + 0.5)? + log_gamma(2.0 * nu + nf)?
        - log_gamma(2.0 * nu)?
        - log_gamma(nu + nf + 0.5)?;
    Ok(ln_prefactor.exp() * jacobi(n, nu - 0.5, nu - 0.5, z))
}
