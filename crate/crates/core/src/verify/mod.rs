//! Independent numerical oracles for the closed forms: quadrature, Numerov
//! shooting, residuals, expectation values and the virial theorem.

mod checks;
mod expectation;
mod numerov;
mod quadrature;
mod report;
pub mod suites;

pub use checks::{
    boundary_exponent, orthonormality_matrix, orthonormality_matrix_with, residual_schrodinger,
    virial_check, virial_check_with_tolerance, GramMatrix, GRAM_REFINEMENT_LIMIT, MAX_GRAM_N,
    VIRIAL_TOLERANCE,
};
pub use expectation::{
    expectation_coefficients, expectation_t, expectation_t_with, expectation_v,
    expectation_v_with, half_virial, kinetic_by_parts, Expectation,
};
pub use numerov::{numerov_eigenvalue, NumerovGrid};
pub use quadrature::{
    composite_gauss_legendre, gauss_legendre, QuadratureKind, QuadratureRule, MAX_GL_NODES,
};
pub use report::{report_order, sort_reports, Subject, ToleranceKind, VerificationReport};

use crate::sisw::{potential, WellConfig};
use crate::{Result, StateIndex};

/// Numerov eigenvalue of the SISW level `state.s` for excitation `state.n`,
/// bracketed halfway to the neighboring levels.
pub fn sisw_numerov_energy(state: StateIndex, cfg: &WellConfig, intervals: usize) -> Result<f64> {
    let e0 = cfg.e0();
    let k = state.level_number() as f64;
    let s = state.s;
    let bracket = (e0 * (k - 0.5).powi(2), e0 * (k + 0.5).powi(2));
    numerov_eigenvalue(
        |x| potential(s, x, cfg).unwrap_or(f64::INFINITY),
        (0.0, cfg.a),
        bracket,
        intervals,
        cfg.kinetic_scale(),
    )
}
