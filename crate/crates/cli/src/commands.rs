use std::f64::consts::PI;

use susyhier::fit::TailFit;
use susyhier::momentum::{
    classical_momentum, default_tail_range, momentum_wavefunction_guarded, parseval_norm,
    tail_exponent_with, MomentumOptions, RESOLUTION_TOLERANCE,
};
use susyhier::par::{map_slice, Execution};
use susyhier::sisw::{energy, energy_in_e0, potential, Eigenstate};
use susyhier::susy_engine::{
    build_hierarchy, centrifugal_fit, level_potential_error, SeedSpec,
    CENTRIFUGAL_COEFFICIENT_TOLERANCE, CENTRIFUGAL_EXPONENT_TOLERANCE, MAX_LEVELS,
};
use susyhier::verify::suites::{
    run_suite, SuiteOptions, LEVEL_POTENTIAL_TOLERANCE, PARSEVAL_TOLERANCE, TAIL_EXPONENT_TOLERANCE,
};
use susyhier::verify::{Subject, ToleranceKind, VerificationReport};
use susyhier::{StateIndex, WellConfig};

use crate::error::{CliError, CliResult};
use crate::output::{emit, Column, OutputRecord, Value};
use crate::{EvalArgs, HierarchyArgs, MomentumArgs, VerifyArgs};

/// `points` equally spaced abscissas on `[0, a]`, both ends included.
pub fn uniform_grid(a: f64, points: usize) -> Vec<f64> {
    let m = (points - 1) as f64;
    (0..points).map(|i| a * i as f64 / m).collect()
}

/// `V_S(x)`, infinite on the walls.
pub fn potential_or_wall(s: usize, x: f64, cfg: &WellConfig) -> f64 {
    if x <= 0.0 || x >= cfg.a {
        f64::INFINITY
    } else {
        potential(s, x, cfg).unwrap_or(f64::INFINITY)
    }
}

pub fn state_meta(record: OutputRecord, st: StateIndex, cfg: &WellConfig) -> OutputRecord {
    record
        .meta("n", st.n)
        .meta("S", st.s)
        .meta("a", cfg.a)
        .meta("hbar", cfg.hbar)
        .meta("mass", cfg.mass)
        .meta("E0", cfg.e0())
}

pub fn tail_fit_value(fit: &TailFit) -> Value {
    Value::map([
        ("exponent", fit.exponent.into()),
        ("intercept", fit.intercept.into()),
        ("coefficient", fit.coefficient().into()),
        ("fit_range", Value::nums(&[fit.fit_range.0, fit.fit_range.1])),
        ("rms_residual", fit.rms_residual.into()),
        ("points", fit.points.into()),
        ("valid", fit.is_valid().into()),
    ])
}

fn error_value(e: &susyhier::Error) -> Value {
    Value::map([("error", Value::Str(e.to_string()))])
}

pub fn eval(args: &EvalArgs) -> CliResult<()> {
    let cfg = WellConfig::with_width(args.a)?;
    let st = StateIndex::new(args.n, args.s)?;
    if args.grid < 2 {
        return Err(CliError::Args(format!("--grid needs at least 2 points, got {}", args.grid)));
    }
    let xs = uniform_grid(cfg.a, args.grid);
    let psi = Eigenstate::new(st, cfg);
    let values = xs.iter().map(|&x| psi.value(x)).collect::<susyhier::Result<Vec<f64>>>()?;
    let v: Vec<f64> = xs.iter().map(|&x| potential_or_wall(st.s, x, &cfg)).collect();
    let e = energy(st, &cfg);
    let rows = xs.len();
    let record = state_meta(OutputRecord::new("eval"), st, &cfg)
        .meta("grid", rows)
        .column(Column::float("x", xs))
        .column(Column::float("psi", values.clone()))
        .column(Column::float("psi_sq", values.iter().map(|p| p * p).collect()))
        .column(Column::float("V", v.clone()))
        .column(Column::float("V_E0", v.iter().map(|v| v / cfg.e0()).collect()))
        .column(Column::float("E", vec![e; rows]))
        .column(Column::float("E_E0", vec![energy_in_e0(st); rows]));
    emit(&record, args.format, args.out.as_deref())
}

fn report_value(r: &VerificationReport) -> Value {
    let subject = match &r.subject {
        Subject::State { n, s } => Value::map([
            ("type", Value::from("state")),
            ("n", (*n).into()),
            ("S", (*s).into()),
        ]),
        Subject::Params { label } => Value::map([
            ("type", Value::from("params")),
            ("label", Value::Str(label.clone())),
        ]),
    };
    let kind = match r.tolerance_kind {
        ToleranceKind::Absolute => "absolute",
        ToleranceKind::Relative => "relative",
    };
    Value::map([
        ("check", Value::Str(r.check.clone())),
        ("subject", subject),
        ("measured", r.measured.into()),
        ("reference", r.reference.into()),
        ("tolerance", r.tolerance.into()),
        ("tolerance_kind", kind.into()),
        ("pass", r.pass.into()),
    ])
}

fn subject_label(s: &Subject) -> String {
    match s {
        Subject::State { n, s } => format!("n={n} S={s}"),
        Subject::Params { label } => label.clone(),
    }
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let opts = SuiteOptions {
        max_n: args.max_n,
        max_s: args.max_s,
        tolerance_overrides: args
            .test_corrupt_tolerance
            .iter()
            .map(|c| (c.clone(), -1.0))
            .collect(),
        ..SuiteOptions::default()
    };
    StateIndex::new(opts.max_n, opts.max_s)?;
    let reports = run_suite(args.suite, &opts);
    for c in &args.test_corrupt_tolerance {
        if !reports.iter().any(|r| &r.check == c) {
            return Err(CliError::Args(format!("suite has no check named '{c}'")));
        }
    }

    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    let mut provenance: Vec<(String, f64)> = Vec::new();
    for r in &reports {
        if !provenance.iter().any(|(c, _)| *c == r.check) {
            provenance.push((r.check.clone(), r.tolerance));
        }
    }
    let suite = format!("{:?}", args.suite).to_lowercase();
    let mut record = OutputRecord::new("verify")
        .meta("suite", suite)
        .meta("max_n", args.max_n)
        .meta("max_S", args.max_s)
        .meta("total", reports.len())
        .meta("failed", failed.len());
    record.provenance = provenance;
    record.reports = Some(reports.iter().map(report_value).collect());
    emit(&record, crate::output::Format::Json, args.report.as_deref())?;

    for r in &failed {
        eprintln!(
            "FAIL {} [{}]: measured {:e}, reference {:e}, tolerance {:e}",
            r.check,
            subject_label(&r.subject),
            r.measured,
            r.reference,
            r.tolerance
        );
    }
    eprintln!("{} checks, {} failed", reports.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification {
            failed: failed.len(),
            total: reports.len(),
        })
    }
}

pub fn hierarchy(args: &HierarchyArgs) -> CliResult<()> {
    if args.levels > MAX_LEVELS {
        return Err(CliError::Args(format!("--levels is at most {MAX_LEVELS}, got {}", args.levels)));
    }
    let seed = SeedSpec::preset(&args.seed)?;
    let levels = build_hierarchy(&seed, args.levels)?;

    let xs = levels[0].potential.xs();
    let mut record = OutputRecord::new("hierarchy")
        .meta("seed", seed.kind.name())
        .meta("grid_points", seed.n)
        .meta("domain", Value::nums(&[seed.domain.0, seed.domain.1]))
        .meta("hbar", seed.units.hbar)
        .meta("mass", seed.units.mass)
        .meta("steps", args.levels)
        .column(Column::float("x", xs));

    let mut prev = levels[0].absolute_potential();
    let mut prev_shift = 0.0;
    let mut summary = Vec::new();
    for level in &levels {
        let s = level.s;
        let u = level.absolute_potential();
        record = record
            .column(Column::float(format!("U_{s}"), u.clone()))
            .column(Column::float(format!("psi0_{s}"), level.ground_state.values().to_vec()));
        if s > 0 {
            let delta = u.iter().zip(&prev).map(|(a, b)| a - b).collect();
            record = record.column(Column::float(format!("delta_{s}"), delta));
        }
        let centrifugal = if s > 0 && seed.boundary().left_wall() {
            match centrifugal_fit(&levels, s, &seed) {
                Ok(fit) => {
                    let expected = (s * (s + 1)) as f64 * seed.units.kinetic_scale();
                    let mut v = tail_fit_value(&fit);
                    if let Value::Map(m) = &mut v {
                        m.push(("expected_exponent".into(), (-2.0).into()));
                        m.push(("expected_coefficient".into(), expected.into()));
                    }
                    v
                }
                Err(e) => error_value(&e),
            }
        } else {
            Value::Null
        };
        summary.push(Value::map([
            ("S", s.into()),
            ("ground_energy", (level.cumulative_shift - prev_shift).into()),
            ("cumulative_shift", level.cumulative_shift.into()),
            ("level_potential_error", level_potential_error(level, &seed).into()),
            ("centrifugal_fit", centrifugal),
        ]));
        prev = u;
        prev_shift = level.cumulative_shift;
    }
    let record = record
        .meta("levels", Value::List(summary))
        .tolerance("centrifugal_exponent", CENTRIFUGAL_EXPONENT_TOLERANCE)
        .tolerance("centrifugal_coefficient", CENTRIFUGAL_COEFFICIENT_TOLERANCE)
        .tolerance("level_potential", LEVEL_POTENTIAL_TOLERANCE);
    emit(&record, args.format, args.out.as_deref())
}

/// Interior local maxima of `|phi|` on the sample grid.
fn envelope_flags(abs: &[f64]) -> Vec<i64> {
    (0..abs.len())
        .map(|i| {
            let peak = i > 0 && i + 1 < abs.len() && abs[i] > abs[i - 1] && abs[i] >= abs[i + 1];
            peak as i64
        })
        .collect()
}

pub fn momentum(args: &MomentumArgs) -> CliResult<()> {
    let cfg = WellConfig::default();
    let exec = Execution::Parallel;
    let st = StateIndex::new(args.n, args.s)?;
    let pc = classical_momentum(st, &cfg);
    let pmax = args.pmax.unwrap_or(100.0 * pc);
    if !(pmax > 0.0 && pmax.is_finite()) {
        return Err(CliError::Args(format!("--pmax must be positive and finite, got {pmax}")));
    }
    if args.samples < 2 {
        return Err(CliError::Args(format!("--samples needs at least 2, got {}", args.samples)));
    }
    let mut opts = MomentumOptions::for_config(&cfg);
    if let Some(m) = args.max_nodes {
        opts.max_nodes = m;
    }
    let ps = uniform_grid(pmax, args.samples);
    let phi = map_slice(exec, &ps, |&p| momentum_wavefunction_guarded(st, p, &cfg, &opts))
        .into_iter()
        .collect::<susyhier::Result<Vec<_>>>()?;
    let abs: Vec<f64> = phi.iter().map(|z| z.norm()).collect();

    let range = default_tail_range(st, &cfg);
    let tail = match tail_exponent_with(st, &cfg, range, exec) {
        Ok(fit) => {
            let mut v = tail_fit_value(&fit);
            if let Value::Map(m) = &mut v {
                m.push(("expected_exponent".into(), (-((st.s + 2) as f64)).into()));
            }
            v
        }
        Err(e) => error_value(&e),
    };
    let p_cut = 200.0 * PI * cfg.hbar / cfg.a;
    let parseval = parseval_norm(st, &cfg, p_cut, exec)?;

    let record = state_meta(OutputRecord::new("momentum"), st, &cfg)
        .meta("pmax", pmax)
        .meta("samples", args.samples)
        .meta("classical_momentum", pc)
        .meta("tail_fit", tail)
        .meta("parseval", Value::map([("p_cut", p_cut.into()), ("norm", parseval.into())]))
        .column(Column::float("p", ps))
        .column(Column::float("re", phi.iter().map(|z| z.re).collect()))
        .column(Column::float("im", phi.iter().map(|z| z.im).collect()))
        .column(Column::float("abs", abs.clone()))
        .column(Column::int("envelope", envelope_flags(&abs)))
        .tolerance("tail_exponent", TAIL_EXPONENT_TOLERANCE)
        .tolerance("parseval", PARSEVAL_TOLERANCE)
        .tolerance("resolution", RESOLUTION_TOLERANCE);
    emit(&record, args.format, args.out.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let g = uniform_grid(2.5, 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 2.5);
        assert_eq!(g[5], 1.25);
    }

    #[test]
    fn envelope_marks_interior_peaks() {
        assert_eq!(envelope_flags(&[3.0, 1.0, 2.0, 2.0, 0.5, 4.0]), vec![0, 0, 1, 0, 0, 0]);
    }
}
