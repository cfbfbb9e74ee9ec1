//! Ladder operators: the generic `A` on grids, and the SISW raising-level
//! operator `B^(S) = (a/pi) [(n+S+2)^2 - (S+1)^2]^{-1/2} [d/dx - (S+1)(pi/a) cot(pi x/a)]`
//! in closed form and on grids.

use std::f64::consts::PI;

use super::grid::{Boundary, GridFunction};
use super::Units;
use crate::sisw::{Eigenstate, WellConfig};
use crate::specfun::gegenbauer_derivative;
use crate::{Error, Result, StateIndex};

/// Grid offsets from a wall used to fit the near-wall series of the ground
/// state.
const WALL_FIT_OFFSETS: std::ops::RangeInclusive<usize> = 3..=11;
/// Offsets from a wall where the log-derivative comes from the fitted series.
const WALL_MODEL_POINTS: usize = 2;

fn check_nodeless(psi0: &GridFunction) -> Result<f64> {
    let v = psi0.values();
    let n = v.len() - 1;
    let sign = v[n / 2].signum();
    for (i, &p) in v.iter().enumerate().take(n).skip(1) {
        if p == 0.0 || p.signum() != sign {
            return Err(Error::DegenerateGroundState { index: i });
        }
    }
    Ok(sign)
}

/// Least-squares fit of `ln|psi| = c0 + k ln j + c1 j + c2 j^2` over the
/// offsets `j` in [`WALL_FIT_OFFSETS`], counted from one end of the grid.
/// Returns `(k, c1, c2)`.
fn wall_series(psi: &[f64], from_right: bool) -> Result<[f64; 3]> {
    let n = psi.len() - 1;
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for j in WALL_FIT_OFFSETS {
        let p = psi[if from_right { n - j } else { j }].abs();
        if !(p > 0.0) {
            return Err(Error::Fit(format!("ground state vanishes at wall offset {j}")));
        }
        let t = j as f64;
        let row = [1.0, t.ln(), t, t * t];
        for r in 0..4 {
            atb[r] += row[r] * p.ln();
            for c in 0..4 {
                ata[r][c] += row[r] * row[c];
            }
        }
    }
    let c = solve4(ata, atb)
        .ok_or_else(|| Error::Fit("singular near-wall fit".into()))?;
    Ok([c[1], c[2], c[3]])
}

/// Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for c in col..4 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// `psi0'/psi0` on the grid with a fourth-order stencil. At an end where
/// `psi0` vanishes, the two adjacent points take the derivative of the
/// fitted near-wall series `ln|psi0| = c0 + k ln j + c1 j + c2 j^2` instead;
/// the end itself holds 0.
pub fn log_derivative(psi0: &GridFunction) -> Result<Vec<f64>> {
    check_nodeless(psi0)?;
    let v = psi0.values();
    let n = v.len() - 1;
    let h = psi0.dx();
    let d = psi0.derivative4();
    let mut w: Vec<f64> = d.iter().zip(v).map(|(d, p)| if *p == 0.0 { 0.0 } else { d / p }).collect();
    let slope = |[k, c1, c2]: [f64; 3], j: usize| {
        let t = j as f64;
        (k / t + c1 + 2.0 * c2 * t) / h
    };
    if v[0] == 0.0 {
        let c = wall_series(v, false)?;
        for j in 1..=WALL_MODEL_POINTS {
            w[j] = slope(c, j);
        }
    }
    if v[n] == 0.0 {
        let c = wall_series(v, true)?;
        for j in 1..=WALL_MODEL_POINTS {
            w[n - j] = -slope(c, j);
        }
    }
    Ok(w)
}

/// `A psi = (hbar / sqrt(2m)) [psi' - (psi0'/psi0) psi]`, unnormalized.
pub fn apply_a(psi0: &GridFunction, psi: &GridFunction, units: &Units) -> Result<GridFunction> {
    psi0.same_grid(psi)?;
    let w = log_derivative(psi0)?;
    let d = psi.derivative4();
    let pre = units.hbar / (2.0 * units.mass).sqrt();
    let n = psi.len() - 1;
    let b = psi.boundary();
    let out: Vec<f64> = (0..=n)
        .map(|i| {
            let wall = (i == 0 && b.left_wall()) || (i == n && b.right_wall());
            if wall {
                0.0
            } else {
                pre * (d[i] - w[i] * psi.values()[i])
            }
        })
        .collect();
    psi.with_values(out)
}

/// Normalization factor `[(m+S+1)^2 - (S+1)^2]^{-1/2}` of `B^(S)` acting on
/// excitation `m` of level `S`.
fn b_factor(s: usize, m: usize) -> Result<f64> {
    let k = (m + s + 1) as f64;
    let q = (s + 1) as f64;
    let bracket = k * k - q * q;
    if !(bracket > 0.0) {
        return Err(Error::Parameter(format!(
            "B^({s}) needs an excited input state; normalization bracket is {bracket}"
        )));
    }
    Ok(1.0 / bracket.sqrt())
}

/// `B^(S)` applied in closed form to a Gegenbauer-form eigenstate `(m, S)`,
/// `m >= 1`. The result is `-N C'_m(cos y) sin^{S+2}(y) / sqrt(...)`,
/// with no sign convention applied.
#[derive(Debug, Clone, Copy)]
pub struct RaisedState {
    base: Eigenstate,
    factor: f64,
}

impl RaisedState {
    pub fn value(&self, x: f64) -> Result<f64> {
        let cfg = self.base.config();
        self.base.value(x)?;
        if x <= 0.0 || x >= cfg.a {
            return Ok(0.0);
        }
        let st = self.base.state();
        let (sin, cos) = cfg.to_angle(x).sin_cos();
        let dc = gegenbauer_derivative(st.n, st.s as f64 + 1.0, cos, 1);
        Ok(-self.factor * self.base.normalization() * dc * sin.powi(st.s as i32 + 2))
    }

    /// The `(n, S)` label of the output, one level up and one excitation down.
    pub fn state(&self) -> StateIndex {
        let st = self.base.state();
        StateIndex { n: st.n - 1, s: st.s + 1 }
    }
}

pub fn apply_b(psi: &Eigenstate) -> Result<RaisedState> {
    let st = psi.state();
    Ok(RaisedState {
        base: *psi,
        factor: b_factor(st.s, st.n)?,
    })
}

/// `B^(S)` on a grid state with excitation `m` (>= 1), second-order centered
/// differences. Wall endpoints are set to 0.
pub fn apply_b_grid(
    s: usize,
    m: usize,
    psi: &GridFunction,
    cfg: &WellConfig,
) -> Result<GridFunction> {
    let factor = b_factor(s, m)?;
    if psi.x0() != 0.0 || (psi.x1() - cfg.a).abs() > 1e-12 * cfg.a {
        return Err(Error::GridMismatch(format!(
            "B^({s}) needs a grid on [0, {}], got [{}, {}]",
            cfg.a,
            psi.x0(),
            psi.x1()
        )));
    }
    let d = psi.derivative2();
    let n = psi.len() - 1;
    let q = (s + 1) as f64;
    let out: Vec<f64> = (0..=n)
        .map(|i| {
            if i == 0 || i == n {
                return 0.0;
            }
            let y = cfg.to_angle(psi.x(i));
            let cot = y.cos() / y.sin();
            cfg.a / PI * factor * (d[i] - q * PI / cfg.a * cot * psi.values()[i])
        })
        .collect();
    GridFunction::new(psi.x0(), psi.x1(), out, Boundary::HardWallBoth)
}

/// A state `a^{-1/2} P(cos y) sin^{S+1}(y)` with `P` held as a Chebyshev
/// series `sum b_j T_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderState {
    state: StateIndex,
    coeffs: Vec<f64>,
    cfg: WellConfig,
}

impl LadderState {
    /// `psi_m^0 = sqrt(2/a) U_m(cos y) sin y`, with `U_m` expanded in `T_j`.
    pub fn isw(m: usize, cfg: WellConfig) -> Self {
        let r2 = std::f64::consts::SQRT_2;
        let mut coeffs = vec![0.0; m + 1];
        for j in (m % 2..=m).step_by(2) {
            coeffs[j] = 2.0 * r2;
        }
        if m.is_multiple_of(2) {
            coeffs[0] -= r2;
        }
        LadderState {
            state: StateIndex { n: m, s: 0 },
            coeffs,
            cfg,
        }
    }

    pub fn state(&self) -> StateIndex {
        self.state
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Applies `B^(S)`, lowering the excitation and raising the level.
    pub fn raise(&self) -> Result<Self> {
        let StateIndex { n, s } = self.state;
        let factor = b_factor(s, n)?;
        let d = chebyshev_derivative(&self.coeffs);
        Ok(LadderState {
            state: StateIndex { n: n - 1, s: s + 1 },
            coeffs: d.iter().map(|c| -factor * c).collect(),
            cfg: self.cfg,
        })
    }

    fn poly(&self, c: f64) -> f64 {
        clenshaw_t(&self.coeffs, c)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let a = self.cfg.a;
        if !(x.is_finite() && (0.0..=a).contains(&x)) {
            return Err(Error::Domain(format!("x = {x} outside [0, {a}]")));
        }
        if x == 0.0 || x == a {
            return Ok(0.0);
        }
        let (sin, cos) = self.cfg.to_angle(x).sin_cos();
        Ok(self.poly(cos) * sin.powi(self.state.s as i32 + 1) / a.sqrt())
    }

    /// Flips the overall sign if needed so the state is positive next to
    /// `x = 0`, where `P(cos y) -> P(1)`.
    pub fn with_sign_convention(mut self) -> Self {
        if self.poly(1.0) < 0.0 {
            self.coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        self
    }
}

/// Coefficients of `P'` for `P = sum b_j T_j`.
fn chebyshev_derivative(b: &[f64]) -> Vec<f64> {
    let n = b.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n + 1];
    for j in (1..n).rev() {
        d[j - 1] = d[j + 1] + 2.0 * j as f64 * b[j];
    }
    d[0] *= 0.5;
    d.truncate(n - 1);
    d
}

fn clenshaw_t(b: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in b.iter().skip(1).rev() {
        let t = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = t;
    }
    b.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// `psi_n^S` built as `B^(S-1) ... B^(1) B^(0) psi_{n+S}^0`, sign convention
/// applied.
pub fn iterate_to_state(n: usize, s: usize, cfg: &WellConfig) -> Result<LadderState> {
    if n + s > 64 {
        return Err(Error::Parameter(format!("n + S must be <= 64, got {}", n + s)));
    }
    let mut st = LadderState::isw(n + s, *cfg);
    for _ in 0..s {
        st = st.raise()?;
    }
    Ok(st.with_sign_convention())
}
