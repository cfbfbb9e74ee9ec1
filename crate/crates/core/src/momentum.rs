//! Momentum-space wavefunctions `phi(p) = (2 pi hbar)^{-1/2} int_0^a psi(x) e^{-ipx/hbar} dx`
//! and fits of their large-`|p|` envelope.
//!
//! With `q = p a / (pi hbar)` the transform reduces to
//! `I(q) = int_0^pi g(y) e^{-iqy} dy`, `g(y) = C_n^{(S+1)}(cos y) sin^{S+1}(y)`.
//! Below `q = 4 (n+S+1)` the integral is done directly by Gauss-Legendre with
//! at least ten nodes per oscillation. Above it `g` is entire and grows only
//! like `e^{(n+S+1)|Im y|}`, so the path is moved onto the two vertical rays
//! `Re y = 0` and `Re y = pi`, giving
//!
//! ```text
//! I(q) = -i [(-i)^k - (-1)^n i^k e^{-i q pi}] L(q),
//! L(q) = int_0^inf C_n^{(k)}(cosh t) sinh^k(t) e^{-qt} dt,    k = S + 1
//! ```
//!
//! whose integrand is positive, so the tail is free of cancellation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fit::{fit_power_law, TailFit};
use crate::par::{map_slice, Execution};
use crate::sisw::Eigenstate;
use crate::specfun::gegenbauer;
use crate::verify::{composite_gauss_legendre, gauss_legendre};
use crate::{Error, Result, StateIndex, WellConfig};

pub use crate::fit::MAX_TAIL_RMS;

/// Largest change allowed when the quadrature is doubled.
pub const RESOLUTION_TOLERANCE: f64 = 1e-9;
/// Samples per oscillation period `2 pi hbar / a` in envelope scans.
pub const SAMPLES_PER_PERIOD: usize = 16;
pub const MIN_ENVELOPE_MAXIMA: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumOptions {
    /// Largest `|p|` accepted.
    pub p_max: f64,
    /// Node budget for one direct transform.
    pub max_nodes: usize,
}

impl MomentumOptions {
    pub fn for_config(cfg: &WellConfig) -> Self {
        MomentumOptions {
            p_max: 1e5 * PI * cfg.hbar / cfg.a,
            max_nodes: 1 << 22,
        }
    }
}

/// The classical momentum scale `(n+S+1) pi hbar / a`.
pub fn classical_momentum(state: StateIndex, cfg: &WellConfig) -> f64 {
    state.level_number() as f64 * PI * cfg.hbar / cfg.a
}

fn prefactor(psi: &Eigenstate, cfg: &WellConfig) -> f64 {
    (2.0 * PI * cfg.hbar).powf(-0.5) * cfg.a / PI * psi.normalization()
}

fn direct_nodes(state: StateIndex, q: f64) -> usize {
    (5.0 * q.abs() + 4.0 * state.level_number() as f64 + 32.0).ceil() as usize
}

fn switch_q(state: StateIndex) -> f64 {
    4.0 * state.level_number() as f64
}

fn rule(nodes: usize) -> (Vec<f64>, Vec<f64>) {
    if nodes <= 1024 {
        let (t, w) = gauss_legendre(nodes);
        (
            t.iter().map(|t| 0.5 * PI * (t + 1.0)).collect(),
            w.iter().map(|w| 0.5 * PI * w).collect(),
        )
    } else {
        composite_gauss_legendre(32, nodes.div_ceil(32), 0.0, PI)
    }
}

/// `int_0^pi g(y) e^{-iqy} dy` by Gauss-Legendre with `nodes` nodes.
fn direct_integral(psi: &Eigenstate, q: f64, nodes: usize) -> Complex64 {
    let st = psi.state();
    let alpha = st.s as f64 + 1.0;
    let k = st.s as i32 + 1;
    let (ys, ws) = rule(nodes);
    let (mut re, mut im) = (0.0, 0.0);
    for (y, w) in ys.iter().zip(&ws) {
        let (s, c) = y.sin_cos();
        let g = gegenbauer(st.n, alpha, c) * s.powi(k);
        let (sq, cq) = (q * y).sin_cos();
        re += w * g * cq;
        im -= w * g * sq;
    }
    Complex64::new(re, im)
}

/// `L(q)` with `t = u / q`, composite Gauss-Legendre on `u in [0, 120]`.
fn laplace_integral(state: StateIndex, q: f64, panels: usize) -> f64 {
    let alpha = state.s as f64 + 1.0;
    let k = state.s as i32 + 1;
    let (us, ws) = composite_gauss_legendre(20, panels, 0.0, 120.0);
    let total: f64 = us
        .iter()
        .zip(&ws)
        .map(|(u, w)| {
            let t = u / q;
            w * gegenbauer(state.n, alpha, t.cosh()) * t.sinh().powi(k) * (-u).exp()
        })
        .sum();
    total / q
}

fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn contour_integral(state: StateIndex, q: f64, panels: usize) -> Complex64 {
    let k = state.s + 1;
    let minus_i_k = i_pow(3 * k);
    let sign = if state.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let phase = Complex64::from_polar(1.0, -q * PI);
    let bracket = minus_i_k - sign * i_pow(k) * phase;
    Complex64::new(0.0, -1.0) * bracket * laplace_integral(state, q, panels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Resolution {
    Base,
    Doubled,
}

fn transform(
    psi: &Eigenstate,
    p: f64,
    cfg: &WellConfig,
    opts: &MomentumOptions,
    res: Resolution,
) -> Result<Complex64> {
    if !p.is_finite() || p.abs() > opts.p_max {
        return Err(Error::Domain(format!("|p| = {} exceeds p_max = {}", p.abs(), opts.p_max)));
    }
    let st = psi.state();
    let q = p * cfg.a / (PI * cfg.hbar);
    let factor = if res == Resolution::Doubled { 2 } else { 1 };
    let integral = if q.abs() >= switch_q(st) {
        let v = contour_integral(st, q.abs(), 60 * factor);
        if q < 0.0 {
            v.conj()
        } else {
            v
        }
    } else {
        let nodes = direct_nodes(st, q) * factor;
        if nodes > opts.max_nodes {
            return Err(Error::Resolution(format!(
                "p = {p} needs {nodes} nodes, budget is {}",
                opts.max_nodes
            )));
        }
        direct_integral(psi, q, nodes)
    };
    Ok(integral * prefactor(psi, cfg))
}

/// `phi_n^S(p)`.
pub fn momentum_wavefunction(state: StateIndex, p: f64, cfg: &WellConfig) -> Result<Complex64> {
    let psi = Eigenstate::new(state, *cfg);
    transform(&psi, p, cfg, &MomentumOptions::for_config(cfg), Resolution::Base)
}

pub fn momentum_wavefunction_with(
    state: StateIndex,
    p: f64,
    cfg: &WellConfig,
    opts: &MomentumOptions,
) -> Result<Complex64> {
    let psi = Eigenstate::new(state, *cfg);
    transform(&psi, p, cfg, opts, Resolution::Base)
}

/// `phi(p)` computed twice, the second time with doubled quadrature; fails
/// with [`Error::Resolution`] if the two differ by more than
/// [`RESOLUTION_TOLERANCE`].
pub fn momentum_wavefunction_guarded(
    state: StateIndex,
    p: f64,
    cfg: &WellConfig,
    opts: &MomentumOptions,
) -> Result<Complex64> {
    let psi = Eigenstate::new(state, *cfg);
    let a = transform(&psi, p, cfg, opts, Resolution::Base)?;
    let b = transform(&psi, p, cfg, opts, Resolution::Doubled)?;
    let change = (a - b).norm();
    if change > RESOLUTION_TOLERANCE {
        return Err(Error::Resolution(format!(
            "phi({p}) changes by {change:e} when the quadrature is doubled"
        )));
    }
    Ok(a)
}

/// Direct transform of an arbitrary real function on `(0, a)` with `nodes`
/// Gauss-Legendre nodes.
pub fn transform_function<F: Fn(f64) -> f64>(f: F, p: f64, cfg: &WellConfig, nodes: usize) -> Complex64 {
    let (ys, ws) = rule(nodes);
    let scale = cfg.a / PI;
    let mut acc = Complex64::new(0.0, 0.0);
    for (y, w) in ys.iter().zip(&ws) {
        let x = scale * y;
        acc += Complex64::from_polar(w * f(x), -p * x / cfg.hbar);
    }
    acc * scale * (2.0 * PI * cfg.hbar).powf(-0.5)
}

/// `phi` on a set of momenta, in input order.
pub fn momentum_sweep(
    state: StateIndex,
    ps: &[f64],
    cfg: &WellConfig,
    opts: &MomentumOptions,
    exec: Execution,
) -> Result<Vec<Complex64>> {
    let psi = Eigenstate::new(state, *cfg);
    map_slice(exec, ps, |&p| transform(&psi, p, cfg, opts, Resolution::Base))
        .into_iter()
        .collect()
}

/// `int |phi|^2 dp` over `[-p_cut, p_cut]` (composite Gauss-Legendre, eight
/// nodes per half period).
pub fn parseval_norm(state: StateIndex, cfg: &WellConfig, p_cut: f64, exec: Execution) -> Result<f64> {
    let half_period = PI * cfg.hbar / cfg.a;
    let panels = (p_cut / half_period).ceil() as usize;
    let (ps, ws) = composite_gauss_legendre(8, panels, 0.0, p_cut);
    let mut opts = MomentumOptions::for_config(cfg);
    opts.p_max = opts.p_max.max(p_cut);
    let phi = momentum_sweep(state, &ps, cfg, &opts, exec)?;
    // |phi(-p)| = |phi(p)|
    Ok(2.0 * phi.iter().zip(&ws).map(|(f, w)| w * f.norm_sqr()).sum::<f64>())
}

/// Local maxima of `|phi|` on `[p_lo, p_hi]`, refined by golden-section
/// search, as `(p, |phi|)` pairs.
pub fn envelope_maxima(
    state: StateIndex,
    cfg: &WellConfig,
    range: (f64, f64),
    exec: Execution,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = range;
    let period = 2.0 * PI * cfg.hbar / cfg.a;
    let step = period / SAMPLES_PER_PERIOD as f64;
    let count = ((hi - lo) / step).ceil() as usize + 1;
    let ps: Vec<f64> = (0..count).map(|i| (lo + step * i as f64).min(hi)).collect();
    let mut opts = MomentumOptions::for_config(cfg);
    opts.p_max = opts.p_max.max(hi + step);
    let psi = Eigenstate::new(state, *cfg);
    let mag = |p: f64| transform(&psi, p, cfg, &opts, Resolution::Base).map(|c| c.norm());
    let values: Vec<f64> = map_slice(exec, &ps, |&p| mag(p)).into_iter().collect::<Result<_>>()?;
    let peaks: Vec<usize> = (1..count - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect();
    map_slice(exec, &peaks, |&i| golden_max(&mag, ps[i - 1], ps[i + 1]))
        .into_iter()
        .collect()
}

fn golden_max<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..60 {
        if (b - a).abs() <= 1e-12 * b.abs() {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let p = 0.5 * (a + b);
    Ok((p, f(p)?))
}

/// Default fit window `[10 p_c, 100 p_c]` with `p_c` the classical momentum.
pub fn default_tail_range(state: StateIndex, cfg: &WellConfig) -> (f64, f64) {
    let lo = 10.0 * classical_momentum(state, cfg);
    (lo, 10.0 * lo)
}

/// Power-law fit of the envelope of `|phi|` over `prange`.
pub fn tail_exponent(state: StateIndex, cfg: &WellConfig, prange: (f64, f64)) -> Result<TailFit> {
    tail_exponent_with(state, cfg, prange, Execution::default())
}

pub fn tail_exponent_with(
    state: StateIndex,
    cfg: &WellConfig,
    prange: (f64, f64),
    exec: Execution,
) -> Result<TailFit> {
    let (lo, hi) = prange;
    let pc = classical_momentum(state, cfg);
    if !(lo.is_finite() && hi.is_finite()) || lo < 10.0 * pc * (1.0 - 1e-12) {
        return Err(Error::Parameter(format!(
            "tail fit must start at or above 10 p_c = {}, got {lo}",
            10.0 * pc
        )));
    }
    if hi < 10.0 * lo * (1.0 - 1e-12) {
        return Err(Error::Fit(format!(
            "fit range [{lo}, {hi}] spans less than one decade"
        )));
    }
    let maxima = envelope_maxima(state, cfg, prange, exec)?;
    if maxima.len() < MIN_ENVELOPE_MAXIMA {
        return Err(Error::Fit(format!(
            "envelope has {} maxima, need at least {MIN_ENVELOPE_MAXIMA}",
            maxima.len()
        )));
    }
    let (ps, ys): (Vec<f64>, Vec<f64>) = maxima.into_iter().unzip();
    let line = fit_power_law(&ps, &ys)?;
    Ok(TailFit::from_line(line, prange))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_at_zero_momentum() {
        let cfg = WellConfig::with_width(1.5).unwrap();
        let st = StateIndex::new(0, 0).unwrap();
        let phi = momentum_wavefunction(st, 0.0, &cfg).unwrap();
        let expect = (2.0 * PI).powf(-0.5) * 2.0 / PI * (2.0 * cfg.a).sqrt();
        assert!((phi.re - expect).abs() < 1e-14);
        assert!(phi.im.abs() < 1e-14);
    }

    #[test]
    fn contour_matches_direct_where_both_work() {
        let cfg = WellConfig::default();
        for (n, s) in [(0, 0), (1, 0), (2, 1), (3, 2), (0, 4)] {
            let st = StateIndex::new(n, s).unwrap();
            let psi = Eigenstate::new(st, cfg);
            for q in [4.5 * st.level_number() as f64, 30.0, 61.3] {
                let direct = direct_integral(&psi, q, 2000);
                let contour = contour_integral(st, q, 60);
                assert!((direct - contour).norm() < 1e-12, "({n},{s}) q={q}: {direct} vs {contour}");
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let cfg = WellConfig::default();
        let st = StateIndex::new(0, 0).unwrap();
        let opts = MomentumOptions {
            p_max: 10.0,
            max_nodes: 1 << 20,
        };
        assert!(matches!(
            momentum_wavefunction_with(st, 11.0, &cfg, &opts),
            Err(Error::Domain(_))
        ));
        let tiny = MomentumOptions {
            p_max: 1e9,
            max_nodes: 16,
        };
        assert!(matches!(
            momentum_wavefunction_with(st, 5.0, &cfg, &tiny),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn tail_range_validation() {
        let cfg = WellConfig::default();
        let st = StateIndex::new(0, 0).unwrap();
        let pc = classical_momentum(st, &cfg);
        assert!(matches!(tail_exponent(st, &cfg, (pc, 100.0 * pc)), Err(Error::Parameter(_))));
        assert!(matches!(tail_exponent(st, &cfg, (10.0 * pc, 50.0 * pc)), Err(Error::Fit(_))));
    }
}
