use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use super::ladder::log_derivative;
use super::seeds::{check_bouncer_seed, SeedKind, SeedSpec};
use super::Units;
use crate::fit::{fit_power_law, TailFit};
use crate::par::{map_slice, Execution};
use crate::verify::{NumerovGrid, Subject, VerificationReport};
use crate::{Error, Result};

pub const MAX_LEVELS: usize = 12;
pub const ISOSPECTRAL_TOLERANCE: f64 = 1e-5;
pub const CENTRIFUGAL_EXPONENT_TOLERANCE: f64 = 0.05;
pub const CENTRIFUGAL_COEFFICIENT_TOLERANCE: f64 = 0.05;

/// One rung of a SUSY chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyLevel {
    pub s: usize,
    /// Shifted so that its ground energy is 0.
    pub potential: GridFunction,
    /// Normalized, positive.
    pub ground_state: GridFunction,
    /// Sum of all ground energies subtracted up to and including this level.
    pub cumulative_shift: f64,
    pub units: Units,
}

impl HierarchyLevel {
    /// Builds a level from an unshifted potential by solving for its ground
    /// state.
    pub fn from_potential(
        s: usize,
        potential: GridFunction,
        previous_shift: f64,
        units: Units,
    ) -> Result<Self> {
        let grid = numerov_grid(&potential, &units)?;
        let (e, psi) = grid.ground_state()?;
        let ground_state = potential.with_values(psi)?;
        let nodes = ground_state.values()[1..ground_state.len() - 1]
            .windows(2)
            .filter(|w| w[0] * w[1] < 0.0)
            .count();
        if nodes > 0 {
            return Err(Error::Solver(format!("numerical ground state has {nodes} nodes")));
        }
        let shifted = shift_potential(&potential, -e)?;
        Ok(HierarchyLevel {
            s,
            potential: shifted,
            ground_state,
            cumulative_shift: previous_shift + e,
            units,
        })
    }

    /// `potential + cumulative_shift` at every grid point; wall endpoints stay 0.
    pub fn absolute_potential(&self) -> Vec<f64> {
        let p = &self.potential;
        let n = p.len() - 1;
        let b = p.boundary();
        p.values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let wall = (i == 0 && b.left_wall()) || (i == n && b.right_wall());
                if wall {
                    0.0
                } else {
                    v + self.cumulative_shift
                }
            })
            .collect()
    }

    /// Lowest `count` eigenvalues of this level on the absolute energy scale.
    pub fn spectrum(&self, count: usize) -> Result<Vec<f64>> {
        let grid = numerov_grid(&self.potential, &self.units)?;
        Ok(grid
            .lowest(count, Execution::Sequential)?
            .into_iter()
            .map(|e| e + self.cumulative_shift)
            .collect())
    }
}

fn numerov_grid(v: &GridFunction, units: &Units) -> Result<NumerovGrid> {
    NumerovGrid::from_samples(v.x0(), v.x1(), v.values().to_vec(), units.kinetic_scale())
}

fn shift_potential(v: &GridFunction, delta: f64) -> Result<GridFunction> {
    let n = v.len() - 1;
    let b = v.boundary();
    let values = v
        .values()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let wall = (i == 0 && b.left_wall()) || (i == n && b.right_wall());
            if wall {
                0.0
            } else {
                x + delta
            }
        })
        .collect();
    v.with_values(values)
}

/// `V+ = -V- + (hbar^2/m) (psi0'/psi0)^2` from a level whose ground energy
/// is 0. Not shifted.
pub fn partner_potential(level: &HierarchyLevel) -> Result<GridFunction> {
    let w = log_derivative(&level.ground_state)?;
    let u = &level.units;
    let c = u.hbar * u.hbar / u.mass;
    let values = level
        .potential
        .values()
        .iter()
        .zip(&w)
        .map(|(v, w)| -v + c * w * w)
        .collect();
    shift_potential(&level.potential.with_values(values)?, 0.0)
}

/// Level 0 is the seed; each further level is the partner of the previous
/// one. Returns `levels + 1` rungs, `S = 0..=levels`.
pub fn build_hierarchy(seed: &SeedSpec, levels: usize) -> Result<Vec<HierarchyLevel>> {
    if levels > MAX_LEVELS {
        return Err(Error::Parameter(format!("at most {MAX_LEVELS} levels, got {levels}")));
    }
    if matches!(seed.kind, SeedKind::Bouncer { .. }) {
        let check = check_bouncer_seed(seed).map_err(|e| e.at_level(0))?;
        if !check.passes() {
            return Err(Error::Solver(format!(
                "Airy seed does not match the numerical bouncer: {check:?}"
            ))
            .at_level(0));
        }
    }
    let mut out = Vec::with_capacity(levels + 1);
    let seed_potential = seed.potential_grid().map_err(|e| e.at_level(0))?;
    let base = HierarchyLevel::from_potential(0, seed_potential, 0.0, seed.units)
        .map_err(|e| e.at_level(0))?;
    out.push(base);
    for s in 1..=levels {
        let prev = out.last().expect("non-empty");
        let next = partner_potential(prev)
            .and_then(|v| HierarchyLevel::from_potential(s, v, prev.cumulative_shift, seed.units))
            .map_err(|e| e.at_level(s))?;
        out.push(next);
    }
    Ok(out)
}

/// Absolute spectra of every level, computed concurrently.
pub fn spectra(levels: &[HierarchyLevel], count: usize, exec: Execution) -> Result<Vec<Vec<f64>>> {
    map_slice(exec, levels, |l| l.spectrum(count).map_err(|e| e.at_level(l.s)))
        .into_iter()
        .collect()
}

/// Compares eigenvalue `k` of level `S+1` with eigenvalue `k+1` of level `S`
/// for `k < compare`.
pub fn isospectrality(
    levels: &[HierarchyLevel],
    compare: usize,
    exec: Execution,
    label: &str,
) -> Result<Vec<VerificationReport>> {
    let spec = spectra(levels, compare + 1, exec)?;
    let mut out = Vec::new();
    for s in 0..spec.len().saturating_sub(1) {
        for k in 0..compare {
            out.push(VerificationReport::relative(
                "isospectrality",
                Subject::params(format!("{label} S={} k={k}", s + 1)),
                spec[s + 1][k],
                spec[s][k + 1],
                ISOSPECTRAL_TOLERANCE,
            ));
        }
    }
    Ok(out)
}

/// Power-law fit of `U_S - U_0` next to the left wall on
/// `[x0 + 10 dx, x0 + 0.05 L]`, with `L` the seed's natural length.
/// Distances are measured from `x = 0` for half-line seeds and from the
/// left wall for the well.
pub fn centrifugal_fit(levels: &[HierarchyLevel], s: usize, seed: &SeedSpec) -> Result<TailFit> {
    if !seed.boundary().left_wall() {
        return Err(Error::Parameter(format!("seed '{}' has no hard wall", seed.kind.name())));
    }
    let level = levels
        .get(s)
        .ok_or_else(|| Error::Parameter(format!("level {s} was not built")))?;
    if s == 0 {
        return Err(Error::Parameter("centrifugal term needs S >= 1".into()));
    }
    let u0 = levels[0].absolute_potential();
    let us = level.absolute_potential();
    let g = &level.potential;
    let origin = if seed.kind.is_half_line() { 0.0 } else { g.x0() };
    let lo = g.x0() + 10.0 * g.dx();
    let hi = g.x0() + 0.05 * seed.length_scale();
    if !(hi > lo) {
        return Err(Error::Fit("grid too coarse for a near-wall fit".into()));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = (0..g.len())
        .filter(|&i| (lo..=hi).contains(&g.x(i)))
        .map(|i| (g.x(i) - origin, us[i] - u0[i]))
        .unzip();
    let line = fit_power_law(&xs, &ys)?;
    Ok(TailFit::from_line(line, (lo - origin, hi - origin)))
}

/// Exponent and coefficient checks on [`centrifugal_fit`]: `-2` and
/// `S(S+1) hbar^2 / 2m`.
pub fn centrifugal_reports(
    levels: &[HierarchyLevel],
    seed: &SeedSpec,
    max_s: usize,
) -> Result<Vec<VerificationReport>> {
    let u = &seed.units;
    let mut out = Vec::new();
    for s in 1..=max_s.min(levels.len() - 1) {
        let fit = centrifugal_fit(levels, s, seed)?;
        let label = format!("{} S={s}", seed.kind.name());
        out.push(VerificationReport::absolute(
            "centrifugal_exponent",
            Subject::params(label.clone()),
            fit.exponent,
            -2.0,
            CENTRIFUGAL_EXPONENT_TOLERANCE,
        ));
        let expect = (s * (s + 1)) as f64 * u.hbar * u.hbar / (2.0 * u.mass);
        out.push(VerificationReport::relative(
            "centrifugal_coefficient",
            Subject::params(label),
            fit.coefficient(),
            expect,
            CENTRIFUGAL_COEFFICIENT_TOLERANCE,
        ));
    }
    Ok(out)
}

/// `max |U_S - F_S| / max |F_S|` over the seed's reference window, with `F_S`
/// the closed-form level potential.
pub fn level_potential_error(level: &HierarchyLevel, seed: &SeedSpec) -> Option<f64> {
    let (lo, hi) = seed.reference_window()?;
    let u = level.absolute_potential();
    let g = &level.potential;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..g.len() {
        let x = g.x(i);
        if x < lo || x > hi {
            continue;
        }
        let f = seed.level_potential(level.s, x)?;
        worst = worst.max((u[i] - f).abs());
        scale = scale.max(f.abs());
    }
    if scale > 0.0 {
        Some(worst / scale)
    } else {
        Some(worst)
    }
}
