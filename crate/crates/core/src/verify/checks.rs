//! Residual, orthonormality, virial and boundary-behavior checks on the
//! closed-form eigenstates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::expectation::{expectation_t_with, half_virial, DEFAULT_NODES};
use super::quadrature::QuadratureRule;
use super::report::VerificationReport;
use crate::fit::{fit_power_law, TailFit};
use crate::par::{map_range, Execution};
use crate::sisw::Eigenstate;
use crate::{Error, Result, StateIndex, WellConfig};

pub const VIRIAL_TOLERANCE: f64 = 1e-8;
pub const MAX_GRAM_N: usize = 16;
/// Largest entry change tolerated when the quadrature is refined.
pub const GRAM_REFINEMENT_LIMIT: f64 = 1e-11;

/// Compares `<T>` with `(1/2) <x dV/dx>`.
pub fn virial_check(state: StateIndex, cfg: &WellConfig) -> Result<VerificationReport> {
    virial_check_with_tolerance(state, cfg, VIRIAL_TOLERANCE)
}

pub fn virial_check_with_tolerance(
    state: StateIndex,
    cfg: &WellConfig,
    tolerance: f64,
) -> Result<VerificationReport> {
    if state.s == 0 {
        return Err(Error::Rejected(
            "virial check needs S >= 1; at S = 0 the potential is zero inside the well \
             and the walls carry all the force"
                .into(),
        ));
    }
    let rule = QuadratureRule::gauss_legendre(DEFAULT_NODES, 0.0, cfg.a)?;
    let t = expectation_t_with(state, cfg, &rule)?.quadrature;
    let w = half_virial(state, cfg, &rule)?;
    Ok(VerificationReport::relative("virial", state, t, w, tolerance))
}

/// Largest dimensionless residual
/// `|psi_yy - S(S+1)/sin^2(y) psi + (n+S+1)^2 psi| / max|psi|` over
/// `grid` points of `y` in `[0.02 pi, 0.98 pi]`.
pub fn residual_schrodinger(state: StateIndex, cfg: &WellConfig, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::Parameter(format!("residual grid needs >= 2 points, got {grid}")));
    }
    let psi = Eigenstate::new(state, *cfg);
    let s = state.s as f64;
    let k2 = (state.level_number() * state.level_number()) as f64;
    let (lo, hi) = (0.02 * PI, 0.98 * PI);
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for i in 0..grid {
        let y = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
        let j = psi.jet_in_angle(y);
        let sin = y.sin();
        let r = j.d2 - s * (s + 1.0) / (sin * sin) * j.value + k2 * j.value;
        worst = worst.max(r.abs());
        peak = peak.max(j.value.abs());
    }
    Ok(worst / peak)
}

/// Gram matrix of `{psi_0^S, ..., psi_nmax^S}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub s: usize,
    pub entries: Vec<Vec<f64>>,
    /// `max |G - I|`
    pub max_deviation: f64,
    /// Largest entry change when the quadrature is refined.
    pub refinement_change: f64,
}

fn gram_entries(
    states: &[Eigenstate],
    rule: &QuadratureRule,
    exec: Execution,
) -> Vec<Vec<f64>> {
    // tabulate every state at the nodes once
    let table = map_range(exec, states.len(), |i| {
        rule.nodes()
            .iter()
            .map(|&x| states[i].value_unchecked(x))
            .collect::<Vec<_>>()
    });
    let w = rule.weights();
    map_range(exec, states.len(), |i| {
        (0..states.len())
            .map(|j| {
                table[i]
                    .iter()
                    .zip(&table[j])
                    .zip(w)
                    .map(|((a, b), w)| w * a * b)
                    .sum()
            })
            .collect()
    })
}

pub fn orthonormality_matrix(
    s: usize,
    nmax: usize,
    cfg: &WellConfig,
    rule: &QuadratureRule,
) -> Result<GramMatrix> {
    orthonormality_matrix_with(s, nmax, cfg, rule, Execution::default())
}

pub fn orthonormality_matrix_with(
    s: usize,
    nmax: usize,
    cfg: &WellConfig,
    rule: &QuadratureRule,
    exec: Execution,
) -> Result<GramMatrix> {
    if nmax > MAX_GRAM_N {
        return Err(Error::Parameter(format!("nmax must be <= {MAX_GRAM_N}, got {nmax}")));
    }
    let states = (0..=nmax)
        .map(|n| StateIndex::new(n, s).map(|st| Eigenstate::new(st, *cfg)))
        .collect::<Result<Vec<_>>>()?;
    let g = gram_entries(&states, rule, exec);
    let g2 = gram_entries(&states, &rule.refined()?, exec);
    let mut max_deviation: f64 = 0.0;
    let mut refinement_change: f64 = 0.0;
    for i in 0..=nmax {
        for j in 0..=nmax {
            let target = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((g[i][j] - target).abs());
            refinement_change = refinement_change.max((g[i][j] - g2[i][j]).abs());
        }
    }
    if refinement_change > GRAM_REFINEMENT_LIMIT {
        return Err(Error::Resolution(format!(
            "Gram matrix for S = {s} changes by {refinement_change:e} when the quadrature is \
             refined (limit {GRAM_REFINEMENT_LIMIT:e})"
        )));
    }
    Ok(GramMatrix {
        s,
        entries: g,
        max_deviation,
        refinement_change,
    })
}

/// Power-law fit of `|psi|` against `x` on `[1e-4 a, 1e-2 a]`, 64 log-spaced
/// points. The exponent should be `S + 1`.
pub fn boundary_exponent(state: StateIndex, cfg: &WellConfig) -> Result<TailFit> {
    let psi = Eigenstate::new(state, *cfg);
    let (lo, hi) = (1e-4 * cfg.a, 1e-2 * cfg.a);
    let m = 64;
    let xs: Vec<f64> = (0..m)
        .map(|i| lo * (hi / lo).powf(i as f64 / (m - 1) as f64))
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| psi.value_unchecked(x)).collect();
    let line = fit_power_law(&xs, &ys)?;
    Ok(TailFit::from_line(line, (lo, hi)))
}
