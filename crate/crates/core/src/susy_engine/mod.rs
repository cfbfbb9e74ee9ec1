//! Generic supersymmetric machinery: ladder operators, partner potentials and
//! hierarchy construction on uniform grids, plus the closed-form SISW
//! raising operator.

mod grid;
mod hierarchy;
mod ladder;
mod seeds;

use serde::{Deserialize, Serialize};

pub use grid::{Boundary, GridFunction, MIN_GRID_POINTS};
pub use hierarchy::{
    build_hierarchy, centrifugal_fit, centrifugal_reports, isospectrality, level_potential_error,
    partner_potential, spectra, HierarchyLevel, CENTRIFUGAL_COEFFICIENT_TOLERANCE,
    CENTRIFUGAL_EXPONENT_TOLERANCE, ISOSPECTRAL_TOLERANCE, MAX_LEVELS,
};
pub use ladder::{
    apply_a, apply_b, apply_b_grid, iterate_to_state, log_derivative, LadderState, RaisedState,
};
pub use seeds::{
    bouncer_energy, bouncer_length, bouncer_state, check_bouncer_seed, BouncerSeedCheck,
    SeedKind, SeedSpec, HALF_LINE_OFFSET,
};

/// `hbar` and particle mass for grid problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl Units {
    /// `hbar^2 / (2m)`
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}
