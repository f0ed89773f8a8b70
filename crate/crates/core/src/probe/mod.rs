//! Numeric probes of the distance axioms, perpendicular feet, intersecting rounds
//! and squares built on a right angle.
//!
//! Random probes draw their inputs from a seeded ChaCha stream up front and
//! evaluate trials in parallel, so a report depends only on the seed.

mod rounds;
mod square;

pub use rounds::{planar_circle_intersections, round_intersection_check, RoundRelation};
pub use square::{square_construction, SquareReport};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::geodesic::{GeodesicEngine, GeodesicPath};
use crate::ratio::{angle_distance_ratio, length_scale};
use crate::surface::{ChartPoint, Surface};

/// `d(A, A)` must stay below this.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Relative tolerance on `d(A, B) = d(B, A)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;
/// Absolute slack on the triangle inequality.
pub const TRIANGLE_TOLERANCE: f64 = 1e-8;
/// Allowed deviation of the right ratio at a perpendicular foot.
pub const FOOT_RATIO_TOLERANCE: f64 = 1e-4;
const FOOT_SCAN: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trial: usize,
    pub check: &'static str,
    pub points: Vec<ChartPoint>,
    pub measured: Vec<f64>,
    /// Amount by which the tolerance was exceeded.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    /// Trials dropped because the engine did not converge.
    pub skipped: usize,
    /// Largest signed margin `measured − tolerance` over all evaluated checks;
    /// positive exactly when something was violated.
    pub worst_slack: f64,
    pub details: Vec<Violation>,
}

impl ProbeReport {
    fn new(name: impl Into<String>, trials: usize) -> Self {
        ProbeReport {
            name: name.into(),
            trials,
            violations: 0,
            skipped: 0,
            worst_slack: f64::NEG_INFINITY,
            details: Vec::new(),
        }
    }

    /// Record one check; counts a violation for the trial at most once.
    fn record(&mut self, trial: usize, check: &'static str, points: &[ChartPoint], measured: &[f64], slack: f64) {
        self.worst_slack = self.worst_slack.max(slack);
        if slack > 0.0 {
            if self.details.last().map(|v| v.trial) != Some(trial) {
                self.violations += 1;
            }
            self.details.push(Violation {
                trial,
                check,
                points: points.to_vec(),
                measured: measured.to_vec(),
                slack,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Ball used by [`metric_axioms_check`]: sphere equator radius 1, torus outer
/// equator radius 0.3, a cone ball well clear of the apex, a radius-10 disc on the plane.
pub fn default_ball(surface: &Surface) -> (ChartPoint, f64) {
    match *surface {
        Surface::Plane => (ChartPoint::new(0.0, 0.0), 10.0),
        Surface::Sphere { radius } => (ChartPoint::new(PI / 2.0, 0.0), radius),
        Surface::Torus { tube_radius, .. } => (ChartPoint::new(0.0, 0.0), 0.6 * tube_radius),
        Surface::Cone { .. } => (ChartPoint::new(2.0, 0.0), 0.5),
    }
}

/// A triple and its distances `AA, AB, BA, AC, CB, BB`.
type Triple = ([ChartPoint; 3], [f64; 6]);

pub fn metric_axioms_check(engine: &GeodesicEngine, trials: usize, seed: u64) -> Result<ProbeReport> {
    let (center, radius) = default_ball(engine.surface());
    metric_axioms_check_in(engine, center, radius, trials, seed)
}

/// Identity, symmetry and triangle inequality on random triples drawn from the
/// geodesic ball of `radius` around `center`.
pub fn metric_axioms_check_in(
    engine: &GeodesicEngine,
    center: ChartPoint,
    radius: f64,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let surface = engine.surface();
    surface.check_regular(center)?;
    if !(radius > 0.0) {
        return Err(GeometryError::ProbeMisconfigured("ball radius must be positive".into()));
    }
    if 2.0 * radius > surface.injectivity_bound(center) {
        return Err(GeometryError::ProbeMisconfigured(format!(
            "ball radius {radius} exceeds half the injectivity bound"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<[(f64, f64); 3]> = (0..trials)
        .map(|_| std::array::from_fn(|_| (rng.random::<f64>() * 2.0 * PI, radius * rng.random::<f64>().sqrt())))
        .collect();

    let point = |(psi, rho): (f64, f64)| -> Result<ChartPoint> {
        engine.exp_map(center, &surface.direction(center, psi)?, rho)
    };
    let dist = |a: ChartPoint, b: ChartPoint| -> Result<Option<f64>> {
        let r = engine.distance(a, b)?;
        Ok(r.converged.then_some(r.distance))
    };
    let outcomes: Vec<Result<Option<Triple>>> = draws
        .par_iter()
        .map(|d| {
            let [a, b, c] = [point(d[0])?, point(d[1])?, point(d[2])?];
            let ds = [dist(a, a)?, dist(a, b)?, dist(b, a)?, dist(a, c)?, dist(c, b)?, dist(b, b)?];
            if ds.iter().any(Option::is_none) {
                return Ok(None);
            }
            Ok(Some(([a, b, c], ds.map(Option::unwrap))))
        })
        .collect();

    let mut report = ProbeReport::new(format!("metric axioms on {}", surface.kind()), trials);
    for (i, out) in outcomes.into_iter().enumerate() {
        let Some(([a, b, c], [aa, ab, ba, ac, cb, bb])) = out? else {
            report.skipped += 1;
            continue;
        };
        let ident = aa.max(bb);
        report.record(i, "identity", &[a, b], &[aa, bb], ident - IDENTITY_TOLERANCE);
        let asym = (ab - ba).abs();
        report.record(i, "symmetry", &[a, b], &[ab, ba], asym - SYMMETRY_TOLERANCE * ab.max(ba));
        report.record(i, "triangle", &[a, b, c], &[ab, ac, cb], ab - ac - cb - TRIANGLE_TOLERANCE);
    }
    Ok(report)
}

/// Uniqueness and perpendicularity of the foot of `c` on `line`.
///
/// The distance to the line is scanned on a grid and must fall strictly towards
/// the foot and rise strictly after it; at the foot the angle between the line
/// and the geodesic towards `c` must have right ratio 1/2 on both sides.
pub fn perpendicular_uniqueness_check(engine: &GeodesicEngine, c: ChartPoint, line: &GeodesicPath) -> Result<ProbeReport> {
    let foot = engine.foot_of_perpendicular(c, line)?;
    let extent = line.length();
    let dist = |t: f64| -> Result<f64> {
        let r = engine.shoot(c, line.point_at(t)?)?;
        if r.converged {
            Ok(r.distance)
        } else {
            Err(GeometryError::NotConverged {
                residual: r.residual,
                iterations: r.iterations,
            })
        }
    };
    let mut ts: Vec<f64> = (0..=FOOT_SCAN).map(|i| extent * i as f64 / FOOT_SCAN as f64).collect();
    ts.retain(|t| (t - foot.t).abs() > 1e-9 * (1.0 + extent));
    ts.push(foot.t);
    ts.sort_by(f64::total_cmp);
    let ds = ts.par_iter().map(|&t| dist(t)).collect::<Result<Vec<f64>>>()?;

    let mut report = ProbeReport::new("perpendicular foot", ts.len() - 1 + 2);
    for (i, w) in ts.windows(2).enumerate() {
        let (d0, d1) = (ds[i], ds[i + 1]);
        // strictly downhill before the foot, strictly uphill after it
        let slack = if w[1] <= foot.t { d1 - d0 } else { d0 - d1 };
        report.record(i, "monotone", &[line.point_at(w[0])?, line.point_at(w[1])?], &[d0, d1], slack);
    }

    let r = (0.01 * length_scale(engine.surface(), foot.point)).min(0.5 * foot.distance);
    let n = ts.len() - 1;
    for (k, side) in [foot.line_tangent, foot.line_tangent.neg()].iter().enumerate() {
        let s = angle_distance_ratio(engine, foot.point, &foot.toward, side, r);
        let slack = if s.converged {
            (s.ratio - 0.5).abs() - FOOT_RATIO_TOLERANCE
        } else {
            f64::INFINITY
        };
        report.record(n + k, "right ratio at foot", &[c, foot.point], &[s.ratio, r], slack);
    }
    Ok(report)
}
