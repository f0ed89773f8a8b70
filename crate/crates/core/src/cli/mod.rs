//! The `right-ratio` command-line front end.
//!
//! Exit codes: 0 ok, 2 bad configuration, 3 partial convergence, 4 degenerate
//! curvature fit, 5 axiom violation. `RIGHT_RATIO_THREADS` caps the worker pool
//! (0 or unset means one thread per core).

mod args;
mod output;

pub use args::{AxiomsArgs, Cli, Command, CurvatureArgs, Fig2Args, GridSpec, PointArg, RatioArgs, SurfaceArg};
pub use output::{num, render_svg, write_ratio_csv, Series, RATIO_HEADER};

use std::f64::consts::PI;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::Parser;

use crate::error::GeometryError;
use crate::geodesic::GeodesicEngine;
use crate::probe::{
    metric_axioms_check, perpendicular_uniqueness_check, planar_circle_intersections, round_intersection_check,
    ProbeReport,
};
use crate::ratio::{default_grid, estimate_curvature, length_scale, ratio_curve, RatioCurve};
use crate::surface::{ChartPoint, Surface};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;
pub const EXIT_DEGENERATE: u8 = 4;
pub const EXIT_VIOLATION: u8 = 5;

pub const THREADS_ENV: &str = "RIGHT_RATIO_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::DegenerateCurve { .. } | GeometryError::IllConditionedFit { .. } => EXIT_DEGENERATE,
            GeometryError::InvalidSurface(_)
            | GeometryError::OutsideDomain { .. }
            | GeometryError::SingularPoint(_)
            | GeometryError::NonUnitDirection { .. }
            | GeometryError::ProbeMisconfigured(_) => EXIT_CONFIG,
            _ => EXIT_PARTIAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Parse the process arguments, run, and return the exit code.
pub fn main() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::config(format!("{THREADS_ENV} must be a nonnegative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::config(e.to_string()))
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Ratio(a) => cmd_ratio(&a),
        Command::Fig2(a) => cmd_fig2(&a),
        Command::Curvature(a) => cmd_curvature(&a),
        Command::Axioms(a) => cmd_axioms(&a),
    }
}

fn engine_for(surface: Surface, engine: &args::EngineArgs) -> Result<GeodesicEngine, CliError> {
    Ok(GeodesicEngine::with_config(surface, engine.build().map_err(CliError::config)?))
}

fn grid_for(grid: &args::GridArgs, surface: &Surface, p: ChartPoint) -> Vec<f64> {
    grid.build().unwrap_or_else(|| default_grid(surface, p))
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn status(curves: &[&RatioCurve]) -> u8 {
    if curves.iter().all(|c| c.all_converged()) {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    }
}

pub fn cmd_ratio(a: &RatioArgs) -> Result<u8, CliError> {
    let surface = a.surface.build().map_err(CliError::config)?;
    let p = a.point.resolve(&surface).map_err(CliError::config)?;
    let engine = engine_for(surface, &a.engine)?;
    let grid = grid_for(&a.grid, &surface, p);

    let phis: Vec<Option<f64>> = match a.frame_sweep {
        None => vec![None],
        Some(0) => return Err(CliError::config("--frame-sweep needs at least one angle")),
        Some(n) => (0..n).map(|k| Some(a.phi + 0.5 * PI * k as f64 / n as f64)).collect(),
    };
    let curves = phis
        .iter()
        .map(|phi| ratio_curve(&engine, p, phi.unwrap_or(a.phi), &grid))
        .collect::<Result<Vec<_>, _>>()?;

    let scale = length_scale(&surface, p);
    let k = surface.gaussian_curvature(p)?;
    let rows: Vec<(Option<f64>, &[_])> = phis.iter().zip(&curves).map(|(phi, c)| (*phi, &c.samples[..])).collect();
    write_ratio_csv(open_out(a.out.as_deref())?, &rows, scale, k)?;

    if let Some(path) = &a.svg {
        let series: Vec<Series> = curves
            .iter()
            .enumerate()
            .map(|(i, c)| Series {
                label: "ρ(r)",
                color: ["black", "crimson", "steelblue", "darkgreen", "darkorange"][i % 5],
                points: c.converged().map(|s| (s.r / scale, s.ratio)).collect(),
            })
            .collect();
        fs::write(path, render_svg(&series, Some(0.5), "r / scale", "right ratio"))?;
    }
    let refs: Vec<&RatioCurve> = curves.iter().collect();
    Ok(status(&refs))
}

pub fn cmd_fig2(a: &Fig2Args) -> Result<u8, CliError> {
    let surface = Surface::torus(a.center_radius, a.tube_radius).map_err(|e| CliError::config(e.to_string()))?;
    let engine = engine_for(surface, &a.engine)?;
    fs::create_dir_all(&a.out_dir)?;
    let k_of = |p| surface.gaussian_curvature(p);

    let mut curves = Vec::new();
    for (name, p) in [("inner", ChartPoint::new(PI, 0.0)), ("outer", ChartPoint::new(0.0, 0.0))] {
        let curve = ratio_curve(&engine, p, 0.0, &default_grid(&surface, p))?;
        let file = File::create(a.out_dir.join(format!("fig2_{name}.csv")))?;
        write_ratio_csv(BufWriter::new(file), &[(None, &curve.samples[..])], a.tube_radius, k_of(p)?)?;
        curves.push((name, curve));
    }
    if let Some(path) = &a.svg {
        let series: Vec<Series> = curves
            .iter()
            .zip(["crimson", "steelblue"])
            .map(|((name, c), color)| Series {
                label: name,
                color,
                points: c.converged().map(|s| (s.r / a.tube_radius, s.ratio)).collect(),
            })
            .collect();
        fs::write(path, render_svg(&series, Some(0.5), "r / rt", "right ratio"))?;
    }
    let refs: Vec<&RatioCurve> = curves.iter().map(|(_, c)| c).collect();
    Ok(status(&refs))
}

pub const CURVATURE_HEADER: [&str; 13] = [
    "surface",
    "u",
    "v",
    "phi",
    "K_hat",
    "K_analytic",
    "error",
    "residual_rms",
    "c1_bound",
    "r_min",
    "r_max",
    "samples",
    "offset_flagged",
];

pub fn cmd_curvature(a: &CurvatureArgs) -> Result<u8, CliError> {
    let surface = a.surface.build().map_err(CliError::config)?;
    let p = a.point.resolve(&surface).map_err(CliError::config)?;
    let engine = engine_for(surface, &a.engine)?;
    let curve = ratio_curve(&engine, p, a.phi, &grid_for(&a.grid, &surface, p))?;
    let est = estimate_curvature(&curve)?;

    let err_kind = if est.k_analytic == 0.0 { "absolute" } else { "relative" };
    println!("surface      {}", surface.kind());
    println!("point        ({}, {})", p.u, p.v);
    println!("K_hat        {:.10}", est.k_hat);
    println!("K_analytic   {:.10}", est.k_analytic);
    println!("error        {:.3e} ({err_kind})", est.error());
    println!("residual     {:.3e}", est.residual_rms);
    println!("c1 bound     {:.3e}", est.slope_bound());
    println!("fit range    [{:.4e}, {:.4e}] over {} samples", est.r_min, est.r_max, est.samples_used);
    if est.offset_flagged {
        println!("warning      c0 = {:.6} is not 1/2", est.coefficients[0]);
    }

    if let Some(path) = &a.out {
        let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut w = csv::Writer::from_writer(file);
        if fresh {
            w.write_record(CURVATURE_HEADER)?;
        }
        w.write_record([
            surface.kind().to_string(),
            num(p.u),
            num(p.v),
            num(a.phi),
            num(est.k_hat),
            num(est.k_analytic),
            num(est.error()),
            num(est.residual_rms),
            num(est.slope_bound()),
            num(est.r_min),
            num(est.r_max),
            est.samples_used.to_string(),
            est.offset_flagged.to_string(),
        ])?;
        w.flush()?;
    }
    Ok(status(&[&curve]))
}

/// A line and an off-line point whose foot is known by symmetry.
fn perpendicular_setup(engine: &GeodesicEngine) -> Result<(ChartPoint, crate::geodesic::GeodesicPath), GeometryError> {
    let s = engine.surface();
    // the x-axis on the plane; equator, outer equator and a circle-tangent line elsewhere
    let (base, psi, c, half) = match *s {
        Surface::Plane => (ChartPoint::new(0.0, 0.0), 0.0, ChartPoint::new(0.0, 1.0), 5.0),
        Surface::Sphere { radius } => (ChartPoint::new(PI / 2.0, 0.0), PI / 2.0, ChartPoint::new(PI / 4.0, 0.0), radius),
        Surface::Torus { tube_radius, .. } => (ChartPoint::new(0.0, 0.0), PI / 2.0, ChartPoint::new(0.6, 0.0), 1.6 * tube_radius),
        Surface::Cone { .. } => (ChartPoint::new(2.0, 0.0), PI / 2.0, ChartPoint::new(2.5, 0.0), 1.0),
    };
    let line = engine.line_through(base, &s.direction(base, psi)?, half)?;
    Ok((c, line))
}

/// Every `(rA, rB, dAB)` on the `k/4` grid, `k < 20`, against explicit circle intersection.
fn rounds_sweep() -> ProbeReport {
    let vals: Vec<f64> = (0..20).map(|k| k as f64 * 0.25).collect();
    let mut report = ProbeReport {
        name: "round intersections".into(),
        trials: vals.len().pow(3),
        violations: 0,
        skipped: 0,
        worst_slack: f64::NEG_INFINITY,
        details: Vec::new(),
    };
    for &ra in &vals {
        for &rb in &vals {
            for &d in &vals {
                let label = round_intersection_check(ra, rb, d);
                let brute = planar_circle_intersections(ra, rb, d).map(|p| p.len());
                let ok = label.intersection_count() == brute;
                report.worst_slack = report.worst_slack.max(if ok { 0.0 } else { 1.0 });
                if !ok {
                    report.violations += 1;
                }
            }
        }
    }
    report
}

pub fn cmd_axioms(a: &AxiomsArgs) -> Result<u8, CliError> {
    let surface = a.surface.build().map_err(CliError::config)?;
    let engine = engine_for(surface, &a.engine)?;
    let mut reports = Vec::new();
    if a.trials > 0 {
        reports.push(metric_axioms_check(&engine, a.trials, a.seed)?);
        let (c, line) = perpendicular_setup(&engine)?;
        reports.push(perpendicular_uniqueness_check(&engine, c, &line)?);
        reports.push(rounds_sweep());
    }

    let mut table = String::new();
    table.push_str(&format!(
        "{:<28} {:>8} {:>10} {:>8} {:>14}  status\n",
        "probe", "trials", "violations", "skipped", "worst slack"
    ));
    for r in &reports {
        table.push_str(&format!(
            "{:<28} {:>8} {:>10} {:>8} {:>14.3e}  {}\n",
            r.name,
            r.trials,
            r.violations,
            r.skipped,
            r.worst_slack,
            if r.passed() { "pass" } else { "FAIL" }
        ));
    }
    print!("{table}");
    if let Some(path) = &a.out {
        fs::write(path, &table)?;
    }
    Ok(if reports.iter().all(ProbeReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
