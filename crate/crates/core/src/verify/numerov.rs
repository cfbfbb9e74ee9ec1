//! Numerov shooting eigensolver for `-(hbar^2/2m) psi'' + V psi = E psi` with
//! Dirichlet conditions at both ends of a uniform grid.
//!
//! Walls may be singular (`V ~ c/x^2` or `V ~ -K/x`). Near such a wall the
//! outward integration starts where `h^2 |f| < 1`, seeded with the local
//! power law `x^k`, `k = 1/2 + sqrt(1/4 + c')`.
//!
//! Brackets are located by Sturm node counting; the eigenvalue itself is the
//! root of the normalized Wronskian of the left and right solutions at the
//! matching point.

use serde::{Deserialize, Serialize};

use crate::par::{map_range, Execution};
use crate::{Error, Result};

const RESCALE_AT: f64 = 1e150;
const MAX_BISECTIONS: usize = 300;

/// A potential sampled on `n + 1` uniform points of `[lo, hi]`. Only the
/// interior samples are used; the endpoints carry the Dirichlet condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumerovGrid {
    lo: f64,
    hi: f64,
    v: Vec<f64>,
    /// `hbar^2 / (2m)`
    kin: f64,
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Left,
    Right,
}

struct Shot {
    prev: f64,
    last: f64,
    nodes: usize,
}

impl NumerovGrid {
    /// Samples `potential` on the interior of `[lo, hi]` split into
    /// `intervals` steps.
    pub fn from_fn<F: Fn(f64) -> f64>(
        potential: F,
        lo: f64,
        hi: f64,
        intervals: usize,
        kinetic_scale: f64,
    ) -> Result<Self> {
        if intervals < 8 {
            return Err(Error::Parameter(format!("need at least 8 intervals, got {intervals}")));
        }
        let h = (hi - lo) / intervals as f64;
        let mut v = vec![0.0; intervals + 1];
        for (i, vi) in v.iter_mut().enumerate().take(intervals).skip(1) {
            *vi = potential(lo + h * i as f64);
        }
        Self::from_samples(lo, hi, v, kinetic_scale)
    }

    /// Uses `v` directly; `v[0]` and `v[n]` are ignored.
    pub fn from_samples(lo: f64, hi: f64, mut v: Vec<f64>, kinetic_scale: f64) -> Result<Self> {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Parameter(format!("invalid domain ({lo}, {hi})")));
        }
        if !(kinetic_scale > 0.0 && kinetic_scale.is_finite()) {
            return Err(Error::Parameter(format!("kinetic scale must be > 0, got {kinetic_scale}")));
        }
        let n = v.len().saturating_sub(1);
        if n < 8 {
            return Err(Error::Parameter(format!("need at least 9 samples, got {}", v.len())));
        }
        if let Some(i) = (1..n).find(|&i| !v[i].is_finite()) {
            return Err(Error::Parameter(format!("potential sample {i} is not finite")));
        }
        v[0] = 0.0;
        v[n] = 0.0;
        Ok(NumerovGrid {
            lo,
            hi,
            v,
            kin: kinetic_scale,
        })
    }

    pub fn intervals(&self) -> usize {
        self.v.len() - 1
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.intervals() as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.lo + self.step() * i as f64
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn f(&self, i: usize, e: f64) -> f64 {
        (self.v[i] - e) / self.kin
    }

    fn min_interior(&self) -> (usize, f64) {
        let n = self.intervals();
        let mut best = (1, self.v[1]);
        for i in 2..n {
            if self.v[i] < best.1 {
                best = (i, self.v[i]);
            }
        }
        best
    }

    /// Energy scale used for absolute tolerances, `hbar^2 pi^2 / (2 m L^2)`.
    fn energy_scale(&self) -> f64 {
        let l = self.hi - self.lo;
        self.kin * std::f64::consts::PI.powi(2) / (l * l)
    }

    /// Number of grid points between a wall and the first point where the
    /// Numerov weights stay well conditioned.
    fn start_offset(&self, side: Side, e: f64) -> usize {
        let n = self.intervals();
        let h2 = self.step().powi(2);
        for j in 1..n {
            let i = match side {
                Side::Left => j,
                Side::Right => n - j,
            };
            if h2 * self.f(i, e).abs() < 1.0 {
                return j;
            }
        }
        n
    }

    /// Integrates from one wall for `steps` points (offsets measured from
    /// that wall), returning the values at offsets `steps - 1` and `steps`.
    fn shoot(&self, side: Side, e: f64, steps: usize, mut store: Option<&mut [f64]>) -> Shot {
        let n = self.intervals();
        let h = self.step();
        let h2 = h * h;
        let idx = |j: usize| match side {
            Side::Left => j,
            Side::Right => n - j,
        };
        let q = |j: usize| 1.0 - h2 * self.f(idx(j), e) / 12.0;
        let j0 = self.start_offset(side, e).min(steps.max(1));
        let (mut prev, mut last, mut j);
        if j0 <= 1 {
            // psi_0 = 0, but f psi need not vanish there (Coulomb walls), so
            // its wall value is extrapolated from the first interior points.
            prev = 0.0;
            last = h;
            j = 1;
            if let Some(buf) = store.as_deref_mut() {
                buf[idx(1)] = last;
            }
            if steps >= 2 {
                let f1 = self.f(idx(1), e);
                let mut next = last * (2.0 + h2 * f1);
                if steps >= 3 && n >= 3 {
                    // refine with a quadratic extrapolation of f psi to the wall
                    let (f2, f3) = (self.f(idx(2), e), self.f(idx(3), e));
                    for _ in 0..3 {
                        let psi3 = ((12.0 - 10.0 * q(2)) * next - q(1) * last) / q(3);
                        let g0 = 3.0 * f1 * last - 3.0 * f2 * next + f3 * psi3;
                        next = (2.0 * last + h2 * (10.0 * f1 * last + g0) / 12.0) / q(2);
                    }
                }
                prev = last;
                last = next;
                j = 2;
                if let Some(buf) = store.as_deref_mut() {
                    buf[idx(2)] = last;
                }
            }
        } else {
            let d1 = j0 as f64 * h;
            let c = (d1 * d1 * self.f(idx(j0), e)).max(0.0);
            let k = 0.5 + (0.25 + c).sqrt();
            prev = ((j0 - 1) as f64 * h).powf(k);
            last = d1.powf(k);
            j = j0;
            if let Some(buf) = store.as_deref_mut() {
                // points skipped next to the wall follow the same power law
                for i in 1..j0 {
                    buf[idx(i)] = (i as f64 * h).powf(k);
                }
                buf[idx(j0)] = last;
            }
        }
        let mut nodes = usize::from(prev * last < 0.0);
        // Summed form of the recurrence on u = q psi: the first difference
        // du is carried explicitly, which keeps roundoff from growing like
        // the square of the number of steps.
        let mut u = q(j) * last;
        let mut du = u - q(j - 1) * prev;
        while j < steps {
            du += h2 * self.f(idx(j), e) * last;
            u += du;
            let next = u / q(j + 1);
            if next * last < 0.0 {
                nodes += 1;
            }
            prev = last;
            last = next;
            j += 1;
            if let Some(buf) = store.as_deref_mut() {
                buf[idx(j)] = last;
            }
            if last.abs() > RESCALE_AT {
                prev /= RESCALE_AT;
                last /= RESCALE_AT;
                u /= RESCALE_AT;
                du /= RESCALE_AT;
                if let Some(buf) = store.as_deref_mut() {
                    buf.iter_mut().for_each(|v| *v /= RESCALE_AT);
                }
            }
        }
        Shot { prev, last, nodes }
    }

    /// Sign changes of the outward solution at energy `e`, which equals the
    /// number of eigenvalues below `e`.
    pub fn count_below(&self, e: f64) -> usize {
        let n = self.intervals();
        let stop = n - self.start_offset(Side::Right, e).min(n);
        self.shoot(Side::Left, e, stop.max(1), None).nodes
    }

    fn matching_index(&self, e: f64) -> usize {
        let n = self.intervals();
        let (jmin, _) = self.min_interior();
        if (3..=n - 4).contains(&jmin) {
            return jmin;
        }
        let outer = (1..n).rev().find(|&i| self.v[i] < e).unwrap_or(n / 2);
        outer.clamp(3, n - 4)
    }

    /// Normalized Wronskian of the two wall solutions at `m`.
    fn mismatch(&self, e: f64, m: usize) -> f64 {
        let n = self.intervals();
        let l = self.shoot(Side::Left, e, m + 1, None);
        let r = self.shoot(Side::Right, e, n - m, None);
        // l.prev = psiL(m), l.last = psiL(m+1); r.prev = psiR(m+1), r.last = psiR(m)
        let w = l.prev * r.prev - l.last * r.last;
        w / ((l.prev * l.prev + l.last * l.last) * (r.prev * r.prev + r.last * r.last)).sqrt()
    }

    fn check_bracket(&self, lo: f64, hi: f64) -> Result<()> {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Parameter(format!("invalid energy bracket [{lo}, {hi}]")));
        }
        let count = self.count_below(hi).saturating_sub(self.count_below(lo));
        match count {
            0 => Err(Error::NoSignChange { lo, hi }),
            1 => Ok(()),
            _ => Err(Error::MultipleStates { lo, hi, count }),
        }
    }

    fn bisect(&self, mut lo: f64, mut hi: f64) -> Result<f64> {
        let m = self.matching_index(0.5 * (lo + hi));
        let mut wlo = self.mismatch(lo, m);
        let whi = self.mismatch(hi, m);
        if wlo == 0.0 {
            return Ok(lo);
        }
        if whi == 0.0 {
            return Ok(hi);
        }
        if wlo.signum() == whi.signum() || !wlo.is_finite() || !whi.is_finite() {
            return Err(Error::NoSignChange { lo, hi });
        }
        let floor = 1e-15 * self.energy_scale();
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs() + floor {
                break;
            }
            let wm = self.mismatch(mid, m);
            if wm == 0.0 {
                return Ok(mid);
            }
            if wm.signum() == wlo.signum() {
                lo = mid;
                wlo = wm;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The single eigenvalue inside `[lo, hi]`.
    pub fn eigenvalue(&self, lo: f64, hi: f64) -> Result<f64> {
        self.check_bracket(lo, hi)?;
        self.bisect(lo, hi)
    }

    /// Eigenvalue in `[lo, hi]` and its eigenvector on the full grid,
    /// normalized so that `sum psi^2 h = 1` and positive on its first lobe.
    pub fn eigenstate(&self, lo: f64, hi: f64) -> Result<(f64, Vec<f64>)> {
        let e = self.eigenvalue(lo, hi)?;
        Ok((e, self.vector_at(e, self.matching_index(0.5 * (lo + hi)))?))
    }

    fn vector_at(&self, e: f64, m: usize) -> Result<Vec<f64>> {
        let n = self.intervals();
        let mut left = vec![0.0; n + 1];
        let mut right = vec![0.0; n + 1];
        self.shoot(Side::Left, e, m + 1, Some(&mut left));
        self.shoot(Side::Right, e, n - m, Some(&mut right));
        let den = right[m] * right[m] + right[m + 1] * right[m + 1];
        if den == 0.0 || !den.is_finite() {
            return Err(Error::Solver(format!("cannot stitch solutions at E = {e}")));
        }
        let scale = (left[m] * right[m] + left[m + 1] * right[m + 1]) / den;
        let mut psi: Vec<f64> = (0..=n)
            .map(|i| if i <= m { left[i] } else { scale * right[i] })
            .collect();
        psi[0] = 0.0;
        psi[n] = 0.0;
        let norm = (psi.iter().map(|p| p * p).sum::<f64>() * self.step()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Solver(format!("eigenvector at E = {e} has no finite norm")));
        }
        let peak = psi.iter().fold(0.0f64, |acc, p| acc.max(p.abs()));
        let first = psi.iter().find(|p| p.abs() > 1e-3 * peak).copied().unwrap_or(1.0);
        let sign = if first < 0.0 { -1.0 } else { 1.0 };
        psi.iter_mut().for_each(|p| *p *= sign / norm);
        Ok(psi)
    }

    /// Approximate location of eigenvalue `k` from node counting.
    fn locate(&self, k: usize, emin: f64, emax: f64) -> f64 {
        let (mut lo, mut hi) = (emin, emax);
        let scale = self.energy_scale();
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-10 * (mid.abs() + scale) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Upper energy bound holding more than `k` states.
    fn ceiling(&self, k: usize) -> Result<(f64, f64)> {
        let emin = self.min_interior().1;
        let mut span = self.energy_scale().max(f64::MIN_POSITIVE);
        for _ in 0..200 {
            if self.count_below(emin + span) > k {
                return Ok((emin, emin + span));
            }
            span *= 2.0;
        }
        Err(Error::Solver(format!("could not bracket {} states", k + 1)))
    }

    /// The lowest `count` eigenvalues in ascending order.
    pub fn lowest(&self, count: usize, exec: Execution) -> Result<Vec<f64>> {
        Ok(self.lowest_states(count, exec, false)?.0)
    }

    /// Ground energy and normalized ground state.
    pub fn ground_state(&self) -> Result<(f64, Vec<f64>)> {
        let (e, mut v) = self.lowest_states(1, Execution::Sequential, true)?;
        Ok((e[0], v.remove(0)))
    }

    fn lowest_states(
        &self,
        count: usize,
        exec: Execution,
        vectors: bool,
    ) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        if count == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let (emin, emax) = self.ceiling(count)?;
        let approx = map_range(exec, count + 1, |k| self.locate(k, emin, emax));
        let results = map_range(exec, count, |k| -> Result<(f64, Vec<f64>)> {
            let lo = if k == 0 { emin } else { 0.5 * (approx[k - 1] + approx[k]) };
            let hi = 0.5 * (approx[k] + approx[k + 1]);
            let e = self.bisect(lo, hi)?;
            let v = if vectors {
                self.vector_at(e, self.matching_index(0.5 * (lo + hi)))?
            } else {
                Vec::new()
            };
            Ok((e, v))
        });
        let mut es = Vec::with_capacity(count);
        let mut vs = Vec::with_capacity(count);
        for r in results {
            let (e, v) = r?;
            es.push(e);
            if vectors {
                vs.push(v);
            }
        }
        Ok((es, vs))
    }
}

/// Eigenvalue of `potential` on `domain` inside `bracket`, using a grid of
/// `intervals` steps. Exactly one eigenvalue must lie in the bracket.
pub fn numerov_eigenvalue<F: Fn(f64) -> f64>(
    potential: F,
    domain: (f64, f64),
    bracket: (f64, f64),
    intervals: usize,
    kinetic_scale: f64,
) -> Result<f64> {
    let grid = NumerovGrid::from_fn(potential, domain.0, domain.1, intervals, kinetic_scale)?;
    grid.eigenvalue(bracket.0, bracket.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_well_levels() {
        let g = NumerovGrid::from_fn(|_| 0.0, 0.0, 1.0, 4096, 0.5).unwrap();
        let e0 = PI * PI / 2.0;
        let e = g.eigenvalue(0.5 * e0, 2.0 * e0).unwrap();
        assert!((e / e0 - 1.0).abs() < 1e-9, "{}", e / e0 - 1.0);
        let low = g.lowest(4, Execution::Sequential).unwrap();
        for (k, e) in low.iter().enumerate() {
            let expect = e0 * ((k + 1) * (k + 1)) as f64;
            assert!((e / expect - 1.0).abs() < 1e-8, "k={k}: {e}");
        }
    }

    #[test]
    fn bracket_errors() {
        let g = NumerovGrid::from_fn(|_| 0.0, 0.0, 1.0, 1024, 0.5).unwrap();
        let e0 = PI * PI / 2.0;
        assert!(matches!(g.eigenvalue(1.1 * e0, 3.9 * e0), Err(Error::NoSignChange { .. })));
        assert!(matches!(
            g.eigenvalue(0.5 * e0, 10.0 * e0),
            Err(Error::MultipleStates { count: 3, .. })
        ));
    }

    #[test]
    fn harmonic_oscillator_states() {
        let g = NumerovGrid::from_fn(|x| 0.5 * x * x, -10.0, 10.0, 4096, 0.5).unwrap();
        let low = g.lowest(5, Execution::Parallel).unwrap();
        for (k, e) in low.iter().enumerate() {
            assert!((e - (k as f64 + 0.5)).abs() < 1e-8, "k={k}: {e}");
        }
        let (e, psi) = g.ground_state().unwrap();
        assert!((e - 0.5).abs() < 1e-8);
        let h = g.step();
        let norm: f64 = psi.iter().map(|p| p * p).sum::<f64>() * h;
        assert!((norm - 1.0).abs() < 1e-12);
        let mid = psi[2048];
        assert!((mid - PI.powf(-0.25)).abs() < 1e-6);
        assert!(psi[1..4096].iter().all(|&p| p > 0.0));
    }

    #[test]
    fn coulomb_ground_state() {
        let g = NumerovGrid::from_fn(|x| -1.0 / x, 0.0, 40.0, 16384, 0.5).unwrap();
        let low = g.lowest(3, Execution::Sequential).unwrap();
        for (k, e) in low.iter().enumerate() {
            let n = (k + 1) as f64;
            assert!((e + 0.5 / (n * n)).abs() < 1e-5, "k={k}: {e}");
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(NumerovGrid::from_fn(|_| 0.0, 1.0, 0.0, 100, 0.5).is_err());
        assert!(NumerovGrid::from_fn(|_| 0.0, 0.0, 1.0, 4, 0.5).is_err());
        assert!(NumerovGrid::from_fn(|x| 1.0 / (x - 0.5), 0.0, 1.0, 8, 0.5).is_err());
        assert!(NumerovGrid::from_fn(|_| 0.0, 0.0, 1.0, 100, 0.0).is_err());
    }
}
