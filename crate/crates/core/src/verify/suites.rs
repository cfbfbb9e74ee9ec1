//! Bundles of checks run by `susyhier verify`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::checks::{
    boundary_exponent, orthonormality_matrix_with, residual_schrodinger, virial_check_with_tolerance,
};
use super::expectation::{expectation_coefficients, expectation_t, expectation_v};
use super::quadrature::QuadratureRule;
use super::report::{sort_reports, Subject, VerificationReport};
use super::sisw_numerov_energy;
use crate::momentum::{default_tail_range, parseval_norm, tail_exponent_with};
use crate::par::{map_slice, Execution};
use crate::sisw::pt1::{pt1_eigenfunction, pt1_energy, PT1Params};
use crate::sisw::{eigenfunction, energy};
use crate::susy_engine::{
    build_hierarchy, centrifugal_reports, isospectrality, level_potential_error, SeedSpec,
};
use crate::{Error, Result, StateIndex, WellConfig};

pub const SPECTRUM_TOLERANCE: f64 = 1e-6;
pub const GRAM_TOLERANCE: f64 = 1e-10;
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
pub const EXPECTATION_TOLERANCE: f64 = 1e-8;
pub const BOUNDARY_EXPONENT_TOLERANCE: f64 = 0.02;
pub const PT1_TOLERANCE: f64 = 1e-10;
pub const TAIL_EXPONENT_TOLERANCE: f64 = 0.1;
pub const PARSEVAL_TOLERANCE: f64 = 1e-6;
pub const LEVEL_POTENTIAL_TOLERANCE: f64 = 1e-3;

/// Numerov intervals for the spectrum oracle.
pub const NUMEROV_INTERVALS: usize = 16384;
/// Partner steps per grid hierarchy (levels `0..=4` are retained).
pub const HIERARCHY_STEPS: usize = 4;
/// Eigenvalues compared between adjacent levels.
pub const ISOSPECTRAL_COMPARE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Core,
    Momentum,
    Hierarchy,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "core" => Ok(Suite::Core),
            "momentum" => Ok(Suite::Momentum),
            "hierarchy" => Ok(Suite::Hierarchy),
            other => Err(Error::Parameter(format!("unknown suite '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub max_s: usize,
    pub cfg: WellConfig,
    pub exec: Execution,
    /// `(check, tolerance)` pairs that replace the built-in tolerance of every
    /// record with that check name.
    pub tolerance_overrides: Vec<(String, f64)>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_n: 8,
            max_s: 6,
            cfg: WellConfig::default(),
            exec: Execution::default(),
            tolerance_overrides: Vec::new(),
        }
    }
}

impl VerificationReport {
    /// Same record judged against a different tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Self {
        let mut r = VerificationReport::new(
            self.check.clone(),
            self.subject.clone(),
            self.measured,
            self.reference,
            tolerance,
            self.tolerance_kind,
        );
        if self.measured.is_nan() {
            r.pass = false;
        }
        r
    }
}

/// Runs `suite` and returns its records sorted by check, `n`, `S`.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<VerificationReport> {
    let mut out = match suite {
        Suite::Core => core_suite(opts),
        Suite::Momentum => momentum_suite(opts),
        Suite::Hierarchy => hierarchy_suite(opts),
        Suite::All => {
            let mut v = core_suite(opts);
            v.extend(momentum_suite(opts));
            v.extend(hierarchy_suite(opts));
            v
        }
    };
    for r in out.iter_mut() {
        if let Some((_, tol)) = opts.tolerance_overrides.iter().find(|(c, _)| *c == r.check) {
            *r = r.with_tolerance(*tol);
        }
    }
    sort_reports(&mut out);
    out
}

fn or_failed(
    check: &str,
    subject: impl Into<Subject>,
    tolerance: f64,
    r: Result<VerificationReport>,
) -> VerificationReport {
    r.unwrap_or_else(|_| VerificationReport::failed(check, subject, tolerance))
}

fn states(max_n: usize, max_s: usize) -> Vec<StateIndex> {
    (0..=max_s)
        .flat_map(|s| (0..=max_n).map(move |n| StateIndex { n, s }))
        .collect()
}

/// Closed-form checks on the SISW states.
pub fn core_suite(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let cfg = opts.cfg;
    let exec = opts.exec;
    let mut out = Vec::new();

    let spectrum = states(opts.max_n.min(3), opts.max_s.min(4));
    out.extend(map_slice(exec, &spectrum, |&st| {
        or_failed(
            "numerov_spectrum",
            st,
            SPECTRUM_TOLERANCE,
            sisw_numerov_energy(st, &cfg, NUMEROV_INTERVALS).map(|e| {
                VerificationReport::relative("numerov_spectrum", st, e, energy(st, &cfg), SPECTRUM_TOLERANCE)
            }),
        )
    }));

    let ss: Vec<usize> = (0..=opts.max_s).collect();
    let nmax = opts.max_n.min(super::checks::MAX_GRAM_N);
    out.extend(map_slice(exec, &ss, |&s| {
        let st = StateIndex { n: nmax, s };
        let r = QuadratureRule::gauss_legendre(400, 0.0, cfg.a)
            .and_then(|rule| orthonormality_matrix_with(s, nmax, &cfg, &rule, Execution::Sequential))
            .map(|g| VerificationReport::absolute("orthonormality", st, g.max_deviation, 0.0, GRAM_TOLERANCE));
        or_failed("orthonormality", st, GRAM_TOLERANCE, r)
    }));

    // worst residual over n for each S
    out.extend(map_slice(exec, &ss, |&s| {
        let st = StateIndex { n: opts.max_n, s };
        let r = (0..=opts.max_n)
            .map(|n| residual_schrodinger(StateIndex { n, s }, &cfg, 1001))
            .collect::<Result<Vec<f64>>>()
            .map(|v| {
                let worst = v.into_iter().fold(0.0, f64::max);
                VerificationReport::absolute("schrodinger_residual", st, worst, 0.0, RESIDUAL_TOLERANCE)
            });
        or_failed("schrodinger_residual", st, RESIDUAL_TOLERANCE, r)
    }));

    out.extend(map_slice(exec, &ss, |&s| {
        let st = StateIndex { n: 0, s };
        let r = boundary_exponent(st, &cfg).map(|f| {
            VerificationReport::absolute(
                "boundary_exponent",
                st,
                f.exponent,
                (s + 1) as f64,
                BOUNDARY_EXPONENT_TOLERANCE,
            )
        });
        or_failed("boundary_exponent", st, BOUNDARY_EXPONENT_TOLERANCE, r)
    }));

    let n_exp = opts.max_n.min(5);
    let with_pot: Vec<usize> = (1..=opts.max_s).collect();
    out.extend(map_slice(exec, &with_pot, |&s| {
        let st = StateIndex { n: n_exp, s };
        or_failed(
            "virial",
            st,
            super::checks::VIRIAL_TOLERANCE,
            virial_check_with_tolerance(st, &cfg, super::checks::VIRIAL_TOLERANCE),
        )
    }));
    let exp_s: Vec<usize> = (1..=opts.max_s.min(5)).collect();
    out.extend(
        map_slice(exec, &exp_s, |&s| {
            let st = StateIndex { n: n_exp, s };
            let v = or_failed(
                "expectation_v",
                st,
                EXPECTATION_TOLERANCE,
                expectation_v(st, &cfg).map(|e| {
                    VerificationReport::relative("expectation_v", st, e.quadrature, e.closed_form, EXPECTATION_TOLERANCE)
                }),
            );
            let t = or_failed(
                "expectation_t",
                st,
                EXPECTATION_TOLERANCE,
                expectation_t(st, &cfg).map(|e| {
                    VerificationReport::relative("expectation_t", st, e.quadrature, e.closed_form, EXPECTATION_TOLERANCE)
                }),
            );
            [v, t]
        })
        .into_iter()
        .flatten(),
    );

    // algebraic: (v + t) / d == (n+S+1)^2 exactly
    let mut bad = 0u32;
    for st in states(20, 20) {
        let (v, t, d) = expectation_coefficients(st);
        let k = st.level_number() as u64;
        if v + t != k * k * d {
            bad += 1;
        }
    }
    out.push(VerificationReport::absolute(
        "energy_sum_identity",
        Subject::params("n,S <= 20"),
        bad as f64,
        0.0,
        0.0,
    ));

    out.extend(map_slice(exec, &ss, |&s| {
        let st = StateIndex { n: opts.max_n, s };
        or_failed("pt1_reduction", st, PT1_TOLERANCE, pt1_gap(s, opts.max_n, &cfg))
    }));
    out
}

/// Worst gap between the PT1 and SISW eigenfunctions and energies for
/// `n <= max_n` at 101 points.
fn pt1_gap(s: usize, max_n: usize, cfg: &WellConfig) -> Result<VerificationReport> {
    let p = PT1Params::sisw(s);
    let mut worst: f64 = 0.0;
    for n in 0..=max_n {
        let st = StateIndex::new(n, s)?;
        for i in 0..=100 {
            let x = cfg.a * i as f64 / 100.0;
            worst = worst.max((pt1_eigenfunction(&p, n, x, cfg)? - eigenfunction(st, x, cfg)?).abs());
        }
        let e = energy(st, cfg);
        worst = worst.max((pt1_energy(&p, n, cfg)? - e).abs() / e);
    }
    Ok(VerificationReport::absolute(
        "pt1_reduction",
        StateIndex { n: max_n, s },
        worst,
        0.0,
        PT1_TOLERANCE,
    ))
}

/// Tail exponents and Parseval normalization of momentum wavefunctions.
pub fn momentum_suite(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let cfg = opts.cfg;
    let mut out = Vec::new();
    let tail = states(opts.max_n.min(3), opts.max_s.min(4));
    // each fit fans out internally over p
    for st in tail {
        let reference = -((st.s + 2) as f64);
        let r = tail_exponent_with(st, &cfg, default_tail_range(st, &cfg), opts.exec).map(|f| {
            let mut r = VerificationReport::absolute("tail_exponent", st, f.exponent, reference, TAIL_EXPONENT_TOLERANCE);
            r.pass &= f.is_valid();
            r
        });
        out.push(or_failed("tail_exponent", st, TAIL_EXPONENT_TOLERANCE, r));
    }
    let p_cut = 200.0 * PI * cfg.hbar / cfg.a;
    for st in states(opts.max_n.min(1), opts.max_s.min(2)) {
        let r = parseval_norm(st, &cfg, p_cut, opts.exec)
            .map(|v| VerificationReport::absolute("parseval", st, v, 1.0, PARSEVAL_TOLERANCE));
        out.push(or_failed("parseval", st, PARSEVAL_TOLERANCE, r));
    }
    out
}

/// Isospectrality, level-potential and centrifugal checks for every preset
/// grid seed.
pub fn hierarchy_suite(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let names = ["isw", "ho", "half-ho", "half-coulomb", "bouncer"];
    let mut out = Vec::new();
    for name in names {
        let label = |what: &str| format!("{name} {what}");
        let seed = match SeedSpec::preset(name) {
            Ok(s) => s,
            Err(_) => {
                out.push(VerificationReport::failed("hierarchy_build", Subject::params(name), 0.0));
                continue;
            }
        };
        let levels = match build_hierarchy(&seed, HIERARCHY_STEPS) {
            Ok(l) => l,
            Err(_) => {
                out.push(VerificationReport::failed("hierarchy_build", Subject::params(name), 0.0));
                continue;
            }
        };
        match isospectrality(&levels, ISOSPECTRAL_COMPARE, opts.exec, name) {
            Ok(r) => out.extend(r),
            Err(_) => out.push(VerificationReport::failed(
                "isospectrality",
                Subject::params(label("spectra")),
                crate::susy_engine::ISOSPECTRAL_TOLERANCE,
            )),
        }
        for level in levels.iter().skip(1) {
            if let Some(err) = level_potential_error(level, &seed) {
                out.push(VerificationReport::absolute(
                    "level_potential",
                    Subject::params(label(&format!("S={}", level.s))),
                    err,
                    0.0,
                    LEVEL_POTENTIAL_TOLERANCE,
                ));
            }
        }
        if seed.boundary().left_wall() {
            let max_s = if name == "bouncer" { 1 } else { 2 };
            match centrifugal_reports(&levels, &seed, max_s) {
                Ok(r) => out.extend(r),
                Err(_) => out.push(VerificationReport::failed(
                    "centrifugal_exponent",
                    Subject::params(label("fit")),
                    crate::susy_engine::CENTRIFUGAL_EXPONENT_TOLERANCE,
                )),
            }
        }
    }
    out
}
