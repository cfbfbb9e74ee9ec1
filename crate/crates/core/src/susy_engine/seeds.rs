use serde::{Deserialize, Serialize};

use super::grid::{Boundary, GridFunction};
use super::Units;
use crate::specfun::{airy_ai, airy_ai_prime, airy_ai_zero};
use crate::verify::NumerovGrid;
use crate::{Error, Result};

/// Left endpoint of half-line seeds, as a fraction of the domain length.
pub const HALF_LINE_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeedKind {
    /// Infinite square well on `[x0, x1]`.
    Isw,
    /// `m omega^2 x^2 / 2` on the full line.
    Ho { omega: f64 },
    /// `m omega^2 x^2 / 2` with a wall at `x = 0`.
    HalfHo { omega: f64 },
    /// `-K / x` with a wall at `x = 0`.
    HalfCoulomb { k: f64 },
    /// `F x` with a wall at `x = 0`.
    Bouncer { force: f64 },
}

impl SeedKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeedKind::Isw => "isw",
            SeedKind::Ho { .. } => "ho",
            SeedKind::HalfHo { .. } => "half-ho",
            SeedKind::HalfCoulomb { .. } => "half-coulomb",
            SeedKind::Bouncer { .. } => "bouncer",
        }
    }

    pub fn is_half_line(&self) -> bool {
        matches!(
            self,
            SeedKind::HalfHo { .. } | SeedKind::HalfCoulomb { .. } | SeedKind::Bouncer { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub kind: SeedKind,
    pub domain: (f64, f64),
    /// Number of grid points.
    pub n: usize,
    pub units: Units,
}

/// `rho = (hbar^2 / (2 m F))^{1/3}`.
pub fn bouncer_length(force: f64, units: &Units) -> f64 {
    (units.hbar * units.hbar / (2.0 * units.mass * force)).cbrt()
}

/// `E_n = F rho zeta_{n+1}` with `Ai(-zeta_k) = 0`.
pub fn bouncer_energy(n: usize, force: f64, units: &Units) -> Result<f64> {
    Ok(-force * bouncer_length(force, units) * airy_ai_zero(n + 1)?)
}

/// `Ai(x/rho - zeta) / (sqrt(rho) Ai'(-zeta))`, normalized on `x >= 0` and
/// positive next to the wall.
pub fn bouncer_state(n: usize, x: f64, force: f64, units: &Units) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("bouncer state needs x >= 0, got {x}")));
    }
    let rho = bouncer_length(force, units);
    let zero = airy_ai_zero(n + 1)?;
    Ok(airy_ai(x / rho + zero)? / (rho.sqrt() * airy_ai_prime(zero)?))
}

impl SeedSpec {
    pub fn new(kind: SeedKind, domain: (f64, f64), n: usize) -> Result<Self> {
        let (x0, x1) = domain;
        if !(x1 > x0) || !x0.is_finite() || !x1.is_finite() {
            return Err(Error::Parameter(format!("invalid seed domain ({x0}, {x1})")));
        }
        if n < super::grid::MIN_GRID_POINTS {
            return Err(Error::Parameter(format!("seed grid needs >= 64 points, got {n}")));
        }
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be > 0, got {v}")))
            }
        };
        match kind {
            SeedKind::Isw => {}
            SeedKind::Ho { omega } => positive("omega", omega)?,
            SeedKind::HalfHo { omega } => positive("omega", omega)?,
            SeedKind::HalfCoulomb { k } => positive("K", k)?,
            SeedKind::Bouncer { force } => positive("F", force)?,
        }
        if kind.is_half_line() && !(x0 > 0.0) {
            return Err(Error::Parameter(format!(
                "half-line seeds need a regularized left endpoint x0 > 0, got {x0}"
            )));
        }
        Ok(SeedSpec {
            kind,
            domain,
            n,
            units: Units::default(),
        })
    }

    pub fn with_units(mut self, units: Units) -> Self {
        self.units = units;
        self
    }

    /// Half-line domain `[1e-6 L, L]`.
    fn half_line(kind: SeedKind, length: f64, n: usize) -> Result<Self> {
        Self::new(kind, (HALF_LINE_OFFSET * length, length), n)
    }

    pub fn isw(width: f64, n: usize) -> Result<Self> {
        Self::new(SeedKind::Isw, (0.0, width), n)
    }

    pub fn ho(omega: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::new(SeedKind::Ho { omega }, (-half_width, half_width), n)
    }

    pub fn half_ho(omega: f64, length: f64, n: usize) -> Result<Self> {
        Self::half_line(SeedKind::HalfHo { omega }, length, n)
    }

    pub fn half_coulomb(k: f64, length: f64, n: usize) -> Result<Self> {
        Self::half_line(SeedKind::HalfCoulomb { k }, length, n)
    }

    /// Domain of `lengths_in_rho` gravitational lengths.
    pub fn bouncer(force: f64, lengths_in_rho: f64, n: usize) -> Result<Self> {
        let rho = bouncer_length(force, &Units::default());
        Self::half_line(SeedKind::Bouncer { force }, lengths_in_rho * rho, n)
    }

    /// Default grids used by the CLI and the acceptance tests, in units with
    /// `hbar = m = 1`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "isw" => Self::isw(1.0, 8192),
            "ho" => Self::ho(1.0, 10.0, 8192),
            "half-ho" => Self::half_ho(1.0, 10.0, 16384),
            "half-coulomb" => Self::half_coulomb(1.0, 40.0, 32768),
            "bouncer" => Self::bouncer(1.0, 25.0, 65536),
            other => Err(Error::Parameter(format!("unknown seed '{other}'"))),
        }
    }

    pub fn boundary(&self) -> Boundary {
        match self.kind {
            SeedKind::Isw => Boundary::HardWallBoth,
            SeedKind::Ho { .. } => Boundary::Free,
            _ => Boundary::HardWallLeft,
        }
    }

    /// Natural length: the well width, the oscillator length
    /// `sqrt(hbar/(m omega))`, the Bohr radius `hbar^2/(m K)`, or `rho`.
    pub fn length_scale(&self) -> f64 {
        let u = &self.units;
        match self.kind {
            SeedKind::Isw => self.domain.1 - self.domain.0,
            SeedKind::Ho { omega } | SeedKind::HalfHo { omega } => (u.hbar / (u.mass * omega)).sqrt(),
            SeedKind::HalfCoulomb { k } => u.hbar * u.hbar / (u.mass * k),
            SeedKind::Bouncer { force } => bouncer_length(force, u),
        }
    }

    /// Gravitational length for bouncer seeds.
    pub fn rho(&self) -> Option<f64> {
        match self.kind {
            SeedKind::Bouncer { force } => Some(bouncer_length(force, &self.units)),
            _ => None,
        }
    }

    pub fn potential(&self, x: f64) -> f64 {
        let m = self.units.mass;
        match self.kind {
            SeedKind::Isw => 0.0,
            SeedKind::Ho { omega } | SeedKind::HalfHo { omega } => 0.5 * m * omega * omega * x * x,
            SeedKind::HalfCoulomb { k } => -k / x,
            SeedKind::Bouncer { force } => force * x,
        }
    }

    pub fn potential_grid(&self) -> Result<GridFunction> {
        GridFunction::from_fn(self.domain.0, self.domain.1, self.n, self.boundary(), |x| {
            self.potential(x)
        })
    }

    /// Closed form of the level-`S` potential on the absolute energy scale,
    /// where one is known: the seed plus the centrifugal term
    /// `S(S+1) hbar^2/(2 m x^2)` (or `E0 S(S+1)/sin^2` for the well) plus the
    /// constant `S hbar omega` for oscillators.
    pub fn level_potential(&self, s: usize, x: f64) -> Option<f64> {
        let u = &self.units;
        let ss = (s * (s + 1)) as f64;
        let centrifugal = ss * u.hbar * u.hbar / (2.0 * u.mass * x * x);
        match self.kind {
            SeedKind::Isw => {
                let a = self.domain.1 - self.domain.0;
                let e0 = u.hbar * u.hbar * std::f64::consts::PI.powi(2) / (2.0 * u.mass * a * a);
                let sin = (std::f64::consts::PI * (x - self.domain.0) / a).sin();
                Some(e0 * ss / (sin * sin))
            }
            SeedKind::Ho { omega } => Some(self.potential(x) + s as f64 * u.hbar * omega),
            SeedKind::HalfHo { omega } => {
                Some(self.potential(x) + centrifugal + s as f64 * u.hbar * omega)
            }
            SeedKind::HalfCoulomb { .. } => Some(self.potential(x) + centrifugal),
            SeedKind::Bouncer { .. } => None,
        }
    }

    /// Interior window on which [`Self::level_potential`] is compared with
    /// the grid hierarchy.
    pub fn reference_window(&self) -> Option<(f64, f64)> {
        let l = self.length_scale();
        match self.kind {
            SeedKind::Isw => Some((self.domain.0 + 0.05 * l, self.domain.0 + 0.95 * l)),
            SeedKind::Ho { .. } => Some((-4.0 * l, 4.0 * l)),
            SeedKind::HalfHo { .. } => Some((0.1 * l, 4.0 * l)),
            SeedKind::HalfCoulomb { .. } => Some((0.2 * l, 10.0 * l)),
            SeedKind::Bouncer { .. } => None,
        }
    }
}

/// Seed check for the bouncer: the Airy ground state and its energy must
/// match a Numerov solve of `F x` on the seed grid. The grid's wall sits at
/// `x0`, so the Airy reference is shifted to `x - x0` and its energy raised
/// by `F x0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BouncerSeedCheck {
    pub energy_airy: f64,
    pub energy_numerov: f64,
    /// `max |psi_airy - psi_numerov| / max |psi_airy|`
    pub shape_error: f64,
}

impl BouncerSeedCheck {
    pub const ENERGY_TOLERANCE: f64 = 1e-6;
    pub const SHAPE_TOLERANCE: f64 = 1e-4;

    pub fn passes(&self) -> bool {
        (self.energy_numerov - self.energy_airy).abs() <= Self::ENERGY_TOLERANCE * self.energy_airy
            && self.shape_error <= Self::SHAPE_TOLERANCE
    }
}

pub fn check_bouncer_seed(seed: &SeedSpec) -> Result<BouncerSeedCheck> {
    let SeedKind::Bouncer { force } = seed.kind else {
        return Err(Error::Parameter("not a bouncer seed".into()));
    };
    let v = seed.potential_grid()?;
    let grid = NumerovGrid::from_samples(
        seed.domain.0,
        seed.domain.1,
        v.into_values(),
        seed.units.kinetic_scale(),
    )?;
    let (e, psi) = grid.ground_state()?;
    let energy_airy = bouncer_energy(0, force, &seed.units)? + force * seed.domain.0;
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for (i, p) in psi.iter().enumerate() {
        let x = grid.x(i);
        let exact = bouncer_state(0, x - seed.domain.0, force, &seed.units)?;
        worst = worst.max((exact - p).abs());
        peak = peak.max(exact.abs());
    }
    Ok(BouncerSeedCheck {
        energy_airy,
        energy_numerov: e,
        shape_error: worst / peak,
    })
}
