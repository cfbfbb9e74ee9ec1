//! Airy function `Ai` and its derivative on `|x| <= 50`.
//!
//! Maclaurin series on `[-7, 6]`, asymptotic expansions (optimally truncated)
//! outside. Absolute error is below `1e-12` on `[-15, 10]`.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::{Error, Result};

pub const AIRY_MAX_ARG: f64 = 50.0;

const AI0: f64 = 0.355_028_053_887_817_24;
const MINUS_AIP0: f64 = 0.258_819_403_792_806_8;
const SERIES_LO: f64 = -7.0;
const SERIES_HI: f64 = 6.0;

pub fn airy_ai(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x > SERIES_HI {
        asymptotic_pos(x).0
    } else if x < SERIES_LO {
        asymptotic_neg(-x).0
    } else {
        series(x).0
    })
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x > SERIES_HI {
        asymptotic_pos(x).1
    } else if x < SERIES_LO {
        asymptotic_neg(-x).1
    } else {
        series(x).1
    })
}

/// `k`-th zero of `Ai` (k = 1, 2, ...), returned as the negative number `a_k`.
pub fn airy_ai_zero(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Parameter("Airy zeros are numbered from 1".into()));
    }
    // DLMF 9.9.6 / 9.9.18 starting guess
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let mut x = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t));
    if x < -AIRY_MAX_ARG {
        return Err(Error::Domain(format!("zero {k} lies beyond the supported range")));
    }
    for _ in 0..50 {
        let (ai, aip) = (airy_ai(x)?, airy_ai_prime(x)?);
        let step = ai / aip;
        x -= step;
        if step.abs() < 1e-15 * x.abs() {
            break;
        }
    }
    Ok(x)
}

fn check(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() <= AIRY_MAX_ARG {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Airy argument {x} outside supported range [-{AIRY_MAX_ARG}, {AIRY_MAX_ARG}]"
        )))
    }
}

fn series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f, g and their derivatives
    let (mut f, mut tf) = (1.0, 1.0);
    let (mut g, mut tg) = (x, x);
    let (mut fp, mut tfp) = (0.0, 0.5 * x * x);
    let (mut gp, mut tgp) = (1.0, 1.0);
    fp += tfp;
    for k in 1..200 {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tgp *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        f += tf;
        g += tg;
        gp += tgp;
        if k >= 2 {
            tfp *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp += tfp;
        }
        let small = |t: f64, s: f64| t.abs() <= 1e-17 * s.abs().max(1e-300);
        if k > 3 && small(tf, f) && small(tg, g) && small(tfp, fp) && small(tgp, gp) {
            break;
        }
    }
    (AI0 * f - MINUS_AIP0 * g, AI0 * fp - MINUS_AIP0 * gp)
}

/// `u_k` and `v_k` of DLMF 9.7.2 up to the optimal truncation index.
fn asymptotic_coefficients(zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        let vk = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk;
        let size = uk.abs().max(vk.abs()) / zeta.powi(k as i32);
        if size > last || size < 1e-18 {
            break;
        }
        last = size;
        u.push(uk);
        v.push(vk);
    }
    (u, v)
}

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = asymptotic_coefficients(zeta);
    let (mut su, mut sv, mut p) = (0.0, 0.0, 1.0);
    for k in 0..u.len() {
        su += u[k] * p;
        sv += v[k] * p;
        p *= -1.0 / zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

/// Returns `(Ai(-z), Ai'(-z))` for `z > 0`.
fn asymptotic_neg(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (u, v) = asymptotic_coefficients(zeta);
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut p = 1.0;
    for k in 0..u.len() {
        // (-1)^(k/2) zeta^-k for even and odd k respectively
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * u[k] * p;
            ve += sign * v[k] * p;
        } else {
            uo += sign * u[k] * p;
            vo += sign * v[k] * p;
        }
        p /= zeta;
    }
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let q = z.powf(0.25);
    let norm = PI.sqrt();
    let ai = (c * ue + s * uo) / (norm * q);
    let aip = q / norm * (s * ve - c * vo);
    (ai, aip)
}
