//! Angle distance ratios, right ratios and what can be read off them.
//!
//! For an angle with vertex `p` and unit arm directions `a`, `b`, the points
//! `D = exp_p(r·a)` and `E = exp_p(r·b)` lie on the geodesic circle of radius `r`;
//! the ratio is `|DE|² / (2r)²` with `|DE|` the intrinsic geodesic distance.
//! A ray gives 0, a straight line 1, and a right angle on a flat surface 1/2.
//! Near a point of Gaussian curvature `K` the right ratio expands as
//! `1/2 − K·r²/12 + O(r³)`, which [`estimate_curvature`] inverts.

mod cone;
mod fit;

pub use cone::{cone_discontinuity_probe, JumpKind, RatioJump, CONE_PROBE_FRAME_ANGLE};
pub use fit::{estimate_curvature, CurvatureEstimate, FIT_FRACTION, MIN_FIT_SAMPLES};

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::geodesic::GeodesicEngine;
use crate::surface::{ChartPoint, Surface, TangentVector};

/// Overshoot above 1 that is clamped rather than flagged.
pub const RATIO_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample {
    /// Angle measuring distance.
    pub r: f64,
    pub ratio: f64,
    /// Geodesic distance `|DE|`.
    pub chord: f64,
    /// Straight-line distance between the embedded `D` and `E` (diagnostic only).
    pub ambient_chord: f64,
    pub converged: bool,
}

impl RatioSample {
    fn failed(r: f64) -> Self {
        RatioSample {
            r,
            ratio: f64::NAN,
            chord: f64::NAN,
            ambient_chord: f64::NAN,
            converged: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioCurve {
    pub surface: Surface,
    pub point: ChartPoint,
    pub phi: f64,
    pub samples: Vec<RatioSample>,
}

impl RatioCurve {
    pub fn converged(&self) -> impl Iterator<Item = &RatioSample> {
        self.samples.iter().filter(|s| s.converged)
    }

    pub fn converged_count(&self) -> usize {
        self.converged().count()
    }

    pub fn all_converged(&self) -> bool {
        self.samples.iter().all(|s| s.converged)
    }
}

/// Angle distance ratio for arms `dir1`, `dir2` at `p` and measuring distance `r`.
///
/// Engine failures and out-of-range ratios yield a non-converged sample.
pub fn angle_distance_ratio(
    engine: &GeodesicEngine,
    p: ChartPoint,
    dir1: &TangentVector,
    dir2: &TangentVector,
    r: f64,
) -> RatioSample {
    try_ratio(engine, p, dir1, dir2, r).unwrap_or_else(|_| RatioSample::failed(r))
}

fn try_ratio(
    engine: &GeodesicEngine,
    p: ChartPoint,
    dir1: &TangentVector,
    dir2: &TangentVector,
    r: f64,
) -> Result<RatioSample> {
    let surface = engine.surface();
    if !(r.is_finite() && r > 0.0) || r > surface.injectivity_bound(p) {
        return Ok(RatioSample::failed(r));
    }
    let d = engine.exp_map(p, dir1, r)?;
    let e = engine.exp_map(p, dir2, r)?;
    let dist = engine.distance(d, e)?;
    let (xd, xe) = (surface.embed(d), surface.embed(e));
    let ambient = ((xd[0] - xe[0]).powi(2) + (xd[1] - xe[1]).powi(2) + (xd[2] - xe[2]).powi(2)).sqrt();
    Ok(ratio_sample(r, dist.distance, ambient, dist.converged))
}

/// Assemble a sample from a measured chord, clamping a tiny overshoot past 1.
pub(crate) fn ratio_sample(r: f64, chord: f64, ambient_chord: f64, converged: bool) -> RatioSample {
    let mut chord = chord;
    let mut converged = converged && chord.is_finite();
    let mut ratio = chord * chord / (4.0 * r * r);
    if ratio > 1.0 {
        if ratio <= 1.0 + RATIO_SLACK {
            chord = 2.0 * r;
            ratio = 1.0;
        } else {
            converged = false;
        }
    }
    RatioSample {
        r,
        ratio,
        chord,
        ambient_chord,
        converged,
    }
}

/// Right ratio at `p`, arms along the orthonormal frame rotated by `phi`.
pub fn right_ratio(engine: &GeodesicEngine, p: ChartPoint, phi: f64, r: f64) -> RatioSample {
    match engine.surface().orthonormal_frame(p, phi) {
        Ok((e1, e2)) => angle_distance_ratio(engine, p, &e1, &e2, r),
        Err(_) => RatioSample::failed(r),
    }
}

/// Right ratios over an increasing grid of measuring distances, evaluated in parallel.
pub fn ratio_curve(engine: &GeodesicEngine, p: ChartPoint, phi: f64, r_grid: &[f64]) -> Result<RatioCurve> {
    validate_grid(r_grid)?;
    let surface = engine.surface();
    surface.check_regular(p)?;
    let p = surface.reduce(p);
    let samples = r_grid.par_iter().map(|&r| right_ratio(engine, p, phi, r)).collect();
    Ok(RatioCurve {
        surface: *surface,
        point: p,
        phi,
        samples,
    })
}

fn validate_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() {
        return Err(GeometryError::ProbeMisconfigured("empty r grid".into()));
    }
    if r_grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(GeometryError::ProbeMisconfigured("r grid values must be positive".into()));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GeometryError::ProbeMisconfigured("r grid must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatnessReport {
    pub flat: bool,
    pub max_deviation: f64,
}

/// Flat iff every converged sample is within `tol` of 1/2.
pub fn flatness_test(curve: &RatioCurve, tol: f64) -> Result<FlatnessReport> {
    if curve.converged_count() == 0 {
        return Err(GeometryError::DegenerateCurve {
            converged: 0,
            required: 1,
        });
    }
    let max_deviation = curve
        .converged()
        .map(|s| (s.ratio - 0.5).abs())
        .fold(0.0, f64::max);
    Ok(FlatnessReport {
        flat: max_deviation <= tol,
        max_deviation,
    })
}

pub fn linear_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..count)
            .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

pub fn log_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    let (lo, hi) = (min.ln(), max.ln());
    linear_grid(lo, hi, count).into_iter().map(f64::exp).collect()
}

/// Natural length unit at `p`: sphere radius, tube radius, slant distance on the cone, 1 on the plane.
pub fn length_scale(surface: &Surface, p: ChartPoint) -> f64 {
    match *surface {
        Surface::Plane => 1.0,
        Surface::Sphere { radius } => radius,
        Surface::Torus { tube_radius, .. } => tube_radius,
        Surface::Cone { .. } => p.u,
    }
}

/// 50 log-spaced samples from `0.01·L` to `min(0.45·π·L, injectivity bound)`.
pub fn default_grid(surface: &Surface, p: ChartPoint) -> Vec<f64> {
    let scale = length_scale(surface, p);
    let hi = (0.45 * PI * scale).min(surface.injectivity_bound(p));
    log_grid(0.01 * scale, hi, 50)
}
