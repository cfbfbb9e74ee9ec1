//! Potential and kinetic expectation values: closed forms and quadrature.

use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureRule;
use crate::sisw::{potential_derivative, Eigenstate};
use crate::{Result, StateIndex, WellConfig};

pub const DEFAULT_NODES: usize = 400;

/// A closed-form value together with its quadrature counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub closed_form: f64,
    pub quadrature: f64,
}

impl Expectation {
    pub fn relative_gap(&self) -> f64 {
        (self.quadrature - self.closed_form).abs() / self.closed_form.abs()
    }
}

/// Exact rational coefficients in units of `E0`:
/// `<V> = v / d`, `<T> = t / d`, with `d = 2S + 1`.
pub fn expectation_coefficients(state: StateIndex) -> (u64, u64, u64) {
    let n = state.n as u64;
    let s = state.s as u64;
    let k = n + s + 1;
    let d = 2 * s + 1;
    (2 * s * (s + 1) * k, ((2 * s + 1) * n + s + 1) * k, d)
}

fn default_rule(cfg: &WellConfig) -> Result<QuadratureRule> {
    QuadratureRule::gauss_legendre(DEFAULT_NODES, 0.0, cfg.a)
}

pub fn expectation_v(state: StateIndex, cfg: &WellConfig) -> Result<Expectation> {
    expectation_v_with(state, cfg, &default_rule(cfg)?)
}

pub fn expectation_v_with(
    state: StateIndex,
    cfg: &WellConfig,
    rule: &QuadratureRule,
) -> Result<Expectation> {
    let (v, _, d) = expectation_coefficients(state);
    let closed_form = cfg.e0() * v as f64 / d as f64;
    if state.s == 0 {
        return Ok(Expectation {
            closed_form,
            quadrature: 0.0,
        });
    }
    let psi = Eigenstate::new(state, *cfg);
    let coupling = cfg.e0() * (state.s * (state.s + 1)) as f64;
    let quadrature = rule.integrate(|x| {
        let sin = cfg.to_angle(x).sin();
        let p = psi.value_unchecked(x);
        coupling * p * p / (sin * sin)
    });
    Ok(Expectation {
        closed_form,
        quadrature,
    })
}

pub fn expectation_t(state: StateIndex, cfg: &WellConfig) -> Result<Expectation> {
    expectation_t_with(state, cfg, &default_rule(cfg)?)
}

/// Quadrature value is `int (hbar^2/2m) |psi'|^2 dx`.
pub fn expectation_t_with(
    state: StateIndex,
    cfg: &WellConfig,
    rule: &QuadratureRule,
) -> Result<Expectation> {
    let (_, t, d) = expectation_coefficients(state);
    let closed_form = cfg.e0() * t as f64 / d as f64;
    let psi = Eigenstate::new(state, *cfg);
    let scale = std::f64::consts::PI / cfg.a;
    let kin = cfg.kinetic_scale();
    let quadrature = rule.integrate(|x| {
        let d1 = psi.jet_in_angle(cfg.to_angle(x)).d1 * scale;
        kin * d1 * d1
    });
    Ok(Expectation {
        closed_form,
        quadrature,
    })
}

/// `-int (hbar^2/2m) psi psi'' dx`, the integrated-by-parts kinetic energy.
pub fn kinetic_by_parts(state: StateIndex, cfg: &WellConfig, rule: &QuadratureRule) -> f64 {
    let psi = Eigenstate::new(state, *cfg);
    let scale = std::f64::consts::PI / cfg.a;
    let kin = cfg.kinetic_scale();
    rule.integrate(|x| {
        let j = psi.jet_in_angle(cfg.to_angle(x));
        -kin * j.value * j.d2 * scale * scale
    })
}

/// `(1/2) <x dV/dx>` by quadrature, with the analytic derivative of the
/// potential.
pub fn half_virial(state: StateIndex, cfg: &WellConfig, rule: &QuadratureRule) -> Result<f64> {
    let psi = Eigenstate::new(state, *cfg);
    let mut err = None;
    let total = rule.integrate(|x| match potential_derivative(state.s, x, cfg) {
        Ok(dv) => {
            let p = psi.value_unchecked(x);
            0.5 * x * dv * p * p
        }
        Err(e) => {
            err.get_or_insert(e);
            0.0
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_of_level_one() {
        let cfg = WellConfig::default();
        let st = StateIndex::new(0, 1).unwrap();
        let e0 = cfg.e0();
        let v = expectation_v(st, &cfg).unwrap();
        let t = expectation_t(st, &cfg).unwrap();
        assert!((v.closed_form - 8.0 / 3.0 * e0).abs() < 1e-13);
        assert!((t.closed_form - 4.0 / 3.0 * e0).abs() < 1e-13);
        assert!(v.relative_gap() < 1e-10);
        assert!(t.relative_gap() < 1e-10);
    }

    #[test]
    fn isw_has_no_potential_energy() {
        let cfg = WellConfig::with_width(2.0).unwrap();
        for n in 0..6 {
            let st = StateIndex::new(n, 0).unwrap();
            assert_eq!(expectation_v(st, &cfg).unwrap().closed_form, 0.0);
            let t = expectation_t(st, &cfg).unwrap();
            let expect = cfg.e0() * ((n + 1) * (n + 1)) as f64;
            assert!((t.closed_form - expect).abs() < 1e-12 * expect);
            assert!(t.relative_gap() < 1e-10);
        }
    }

    #[test]
    fn rational_sum() {
        for n in 0..=20 {
            for s in 0..=20 {
                let st = StateIndex::new(n, s).unwrap();
                let (v, t, d) = expectation_coefficients(st);
                let k = (n + s + 1) as u64;
                assert_eq!(v + t, k * k * d);
            }
        }
    }
}
