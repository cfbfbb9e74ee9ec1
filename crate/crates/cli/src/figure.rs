//! Data files behind the three standard plots: the potentials with their
//! level lines, the low-lying eigenfunctions, and the probability densities
//! with turning points.

use std::fs;
use std::path::Path;

use susyhier::sisw::{energy, energy_in_e0, Eigenstate};
use susyhier::verify::boundary_exponent;
use susyhier::verify::suites::BOUNDARY_EXPONENT_TOLERANCE;
use susyhier::{StateIndex, WellConfig};

use crate::commands::{potential_or_wall, uniform_grid};
use crate::error::{CliError, CliResult};
use crate::output::{emit, Column, Format, OutputRecord};
use crate::{Figure, FigureArgs};

const GRID: usize = 401;
const DENSITY_GRID: usize = 1001;

fn st(n: usize, s: usize) -> CliResult<StateIndex> {
    Ok(StateIndex::new(n, s)?)
}

fn samples(state: StateIndex, xs: &[f64], cfg: &WellConfig) -> CliResult<Vec<f64>> {
    let psi = Eigenstate::new(state, *cfg);
    Ok(xs.iter().map(|&x| psi.value(x)).collect::<susyhier::Result<_>>()?)
}

/// Abscissas where `E_n^S = V_S`, i.e. `sin^2(pi x / a) = S(S+1) / (n+S+1)^2`.
/// The whole well for `S = 0`.
pub fn turning_points(state: StateIndex, cfg: &WellConfig) -> (f64, f64) {
    if state.s == 0 {
        return (0.0, cfg.a);
    }
    let k = state.level_number() as f64;
    let ratio = (state.s * (state.s + 1)) as f64 / (k * k);
    let left = cfg.a / std::f64::consts::PI * ratio.sqrt().asin();
    (left, cfg.a - left)
}

fn write(dir: &Path, stem: &str, record: &OutputRecord, format: Format) -> CliResult<()> {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    emit(record, format, Some(&dir.join(format!("{stem}.{ext}"))))
}

fn fig1(cfg: &WellConfig) -> CliResult<Vec<(&'static str, OutputRecord)>> {
    let xs = uniform_grid(cfg.a, GRID);
    let mut pots = OutputRecord::new("figure fig1")
        .meta("a", cfg.a)
        .meta("E0", cfg.e0())
        .column(Column::float("x", xs.clone()));
    for s in 0..=4 {
        let v: Vec<f64> = xs.iter().map(|&x| potential_or_wall(s, x, cfg)).collect();
        pots = pots
            .column(Column::float(format!("V_S{s}_E0"), v.iter().map(|v| v / cfg.e0()).collect()))
            .column(Column::float(format!("V_S{s}"), v));
    }

    // every (k, S) pair with k = n + S + 1 <= 6 and S <= 4
    let (mut ks, mut ss, mut ns) = (Vec::new(), Vec::new(), Vec::new());
    let (mut e, mut e0, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for k in 1..=6usize {
        for s in 0..=4usize.min(k - 1) {
            let state = st(k - s - 1, s)?;
            let (l, r) = turning_points(state, cfg);
            ks.push(k as i64);
            ss.push(s as i64);
            ns.push(state.n as i64);
            e.push(energy(state, cfg));
            e0.push(energy_in_e0(state));
            left.push(l);
            right.push(r);
        }
    }
    let levels = OutputRecord::new("figure fig1")
        .meta("a", cfg.a)
        .meta("E0", cfg.e0())
        .column(Column::int("k", ks))
        .column(Column::int("S", ss))
        .column(Column::int("n", ns))
        .column(Column::float("E", e))
        .column(Column::float("E_E0", e0))
        .column(Column::float("x_left", left))
        .column(Column::float("x_right", right));
    Ok(vec![("fig1_potentials", pots), ("fig1_levels", levels)])
}

fn fig2(cfg: &WellConfig) -> CliResult<Vec<(&'static str, OutputRecord)>> {
    let xs = uniform_grid(cfg.a, GRID);
    let mut states = OutputRecord::new("figure fig2")
        .meta("a", cfg.a)
        .column(Column::float("x", xs.clone()));
    for s in 0..=2 {
        for n in 0..=2 {
            states = states.column(Column::float(format!("psi_n{n}_S{s}"), samples(st(n, s)?, &xs, cfg)?));
        }
    }

    let mut overlay = OutputRecord::new("figure fig2")
        .meta("a", cfg.a)
        .column(Column::float("x", xs.clone()));
    let (mut svals, mut fitted, mut expected, mut valid) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for s in 0..=4 {
        let ground = st(0, s)?;
        overlay = overlay.column(Column::float(format!("psi_n0_S{s}"), samples(ground, &xs, cfg)?));
        let fit = boundary_exponent(ground, cfg)?;
        svals.push(s as i64);
        fitted.push(fit.exponent);
        expected.push((s + 1) as f64);
        valid.push(fit.is_valid() as i64);
    }
    let boundary = OutputRecord::new("figure fig2")
        .meta("a", cfg.a)
        .meta("fit_window", crate::output::Value::nums(&[1e-4 * cfg.a, 1e-2 * cfg.a]))
        .column(Column::int("S", svals))
        .column(Column::float("exponent", fitted))
        .column(Column::float("expected", expected))
        .column(Column::int("valid", valid))
        .tolerance("boundary_exponent", BOUNDARY_EXPONENT_TOLERANCE);
    Ok(vec![("fig2_states", states), ("fig2_ground", overlay), ("fig2_boundary", boundary)])
}

fn fig3(cfg: &WellConfig) -> CliResult<Vec<(&'static str, OutputRecord)>> {
    let xs = uniform_grid(cfg.a, DENSITY_GRID);
    let (a, b) = (st(5, 0)?, st(5, 10)?);
    let rho = |state| -> CliResult<Vec<f64>> {
        Ok(samples(state, &xs, cfg)?.iter().map(|p| p * p).collect())
    };
    let v10: Vec<f64> = xs.iter().map(|&x| potential_or_wall(10, x, cfg) / cfg.e0()).collect();
    let density = OutputRecord::new("figure fig3")
        .meta("a", cfg.a)
        .column(Column::float("x", xs.clone()))
        .column(Column::float("rho_n5_S0", rho(a)?))
        .column(Column::float("rho_n5_S10", rho(b)?))
        .column(Column::float("V_S10_E0", v10));

    let (l, r) = turning_points(b, cfg);
    let k = b.level_number() as f64;
    let turning = OutputRecord::new("figure fig3")
        .meta("a", cfg.a)
        .column(Column::int("n", vec![5]))
        .column(Column::int("S", vec![10]))
        .column(Column::float("E_E0", vec![energy_in_e0(b)]))
        .column(Column::float("sin2", vec![110.0 / (k * k)]))
        .column(Column::float("x_left", vec![l]))
        .column(Column::float("x_right", vec![r]));
    Ok(vec![("fig3_density", density), ("fig3_turning", turning)])
}

pub fn run(args: &FigureArgs) -> CliResult<()> {
    let cfg = WellConfig::default();
    let files = match args.figure {
        Figure::Fig1 => fig1(&cfg)?,
        Figure::Fig2 => fig2(&cfg)?,
        Figure::Fig3 => fig3(&cfg)?,
    };
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    for (stem, record) in &files {
        write(&args.out, stem, record, args.format)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turning_points_solve_e_equals_v() {
        let cfg = WellConfig::default();
        let state = StateIndex::new(5, 10).unwrap();
        let (l, r) = turning_points(state, &cfg);
        let s2 = (std::f64::consts::PI * l).sin().powi(2);
        assert!((s2 - 110.0 / 256.0).abs() < 1e-15);
        assert!((l + r - 1.0).abs() < 1e-15);
        let v = susyhier::sisw::potential(10, l, &cfg).unwrap();
        assert!((v / energy(state, &cfg) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn level_nine_is_shared_by_three_potentials() {
        let files = fig1(&WellConfig::default()).unwrap();
        let csv = files[1].1.to_csv();
        let shared = csv.lines().skip(1).filter(|l| l.starts_with("3,")).count();
        assert_eq!(shared, 3);
    }
}
