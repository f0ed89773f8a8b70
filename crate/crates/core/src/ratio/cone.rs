//! Right ratios whose arms straddle the cone tip.
//!
//! The base point sits at slant distance `s0` and the right angle is turned so its
//! bisector points at the apex. Once `r` passes `s0` the two circle points can be
//! joined around the far side of the tip, and `ρ(r)` changes branch there.
//! Positions and distances come from the unrolled sector, so the branch choice
//! is exact (minimum over winding images).

use std::f64::consts::PI;

use crate::error::{GeometryError, Result};
use crate::geodesic::{cone_exp_unrolled, cone_unrolled_distance};
use crate::surface::{ChartPoint, Surface, TangentVector};

use super::{ratio_sample, RatioSample};

/// Frame rotation that puts both arms at 45° either side of the direction to the apex.
pub const CONE_PROBE_FRAME_ANGLE: f64 = 0.75 * PI;
/// A difference must exceed this multiple of its neighbours to count.
pub const JUMP_SCORE: f64 = 10.0;
/// Neighbourhood half-width, in samples, used for the score.
const WINDOW: usize = 5;
/// Second differences below this are round-off.
const FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpKind {
    None,
    /// `ρ` itself jumps between two samples.
    Value,
    /// `ρ` is continuous but its slope jumps.
    Slope,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioJump {
    pub kind: JumpKind,
    /// Grid location of the break (midpoint of the two samples for a value jump).
    pub location: f64,
    /// Size of the jump: `Δρ` for a value jump, change of `dρ/dr` for a slope jump.
    pub magnitude: f64,
    /// Largest difference over the largest neighbouring one.
    pub score: f64,
    pub samples: Vec<RatioSample>,
}

/// Scan `ρ(r)` at `p` (slant distance `p.u`) over `r_grid` for a break.
///
/// Accepts a cone or the plane (as a control, where the same arms give `ρ ≡ 1/2`).
pub fn cone_discontinuity_probe(surface: &Surface, p: ChartPoint, r_grid: &[f64]) -> Result<RatioJump> {
    super::validate_grid(r_grid)?;
    if r_grid.len() < 3 {
        return Err(GeometryError::ProbeMisconfigured("need at least three samples".into()));
    }
    if !(r_grid[0] < p.u && p.u < r_grid[r_grid.len() - 1]) {
        return Err(GeometryError::ProbeMisconfigured(format!(
            "grid [{}, {}] does not straddle the apex distance {}",
            r_grid[0],
            r_grid[r_grid.len() - 1],
            p.u
        )));
    }
    let samples = match *surface {
        Surface::Cone { half_angle } => {
            surface.check_regular(p)?;
            let (e1, e2) = surface.orthonormal_frame(p, CONE_PROBE_FRAME_ANGLE)?;
            r_grid.iter().map(|&r| cone_sample(half_angle, p, &e1, &e2, r)).collect()
        }
        Surface::Plane => {
            // the flat control: the same construction on a full 2π sector
            if !(p.u > 0.0) {
                return Err(GeometryError::ProbeMisconfigured("control point needs positive radius".into()));
            }
            let cone = Surface::cone(PI / 2.0)?;
            let q = ChartPoint::new(p.u, 0.0);
            let (e1, e2) = cone.orthonormal_frame(q, CONE_PROBE_FRAME_ANGLE)?;
            r_grid.iter().map(|&r| cone_sample(PI / 2.0, q, &e1, &e2, r)).collect()
        }
        _ => {
            return Err(GeometryError::ProbeMisconfigured(format!(
                "discontinuity probe needs a cone or the plane, got {}",
                surface.kind()
            )))
        }
    };
    Ok(detect(samples))
}

fn cone_sample(half_angle: f64, p: ChartPoint, e1: &TangentVector, e2: &TangentVector, r: f64) -> RatioSample {
    let pts = cone_exp_unrolled(half_angle, p, e1, r).and_then(|d| Ok((d, cone_exp_unrolled(half_angle, p, e2, r)?)));
    match pts {
        Ok((d, e)) => {
            let surface = Surface::Cone { half_angle };
            let (xd, xe) = (surface.embed(d), surface.embed(e));
            let ambient = ((xd[0] - xe[0]).powi(2) + (xd[1] - xe[1]).powi(2) + (xd[2] - xe[2]).powi(2)).sqrt();
            ratio_sample(r, cone_unrolled_distance(half_angle, d, e), ambient, true)
        }
        Err(_) => RatioSample {
            r,
            ratio: f64::NAN,
            chord: f64::NAN,
            ambient_chord: f64::NAN,
            converged: false,
        },
    }
}

fn peak(diffs: &[f64]) -> Option<(usize, f64, f64)> {
    let (j, m) = diffs
        .iter()
        .map(|d| d.abs())
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    let lo = j.saturating_sub(WINDOW);
    let hi = (j + WINDOW).min(diffs.len() - 1);
    let neighbour = (lo..=hi)
        .filter(|&i| i != j)
        .map(|i| diffs[i].abs())
        .fold(0.0, f64::max);
    let score = if neighbour > 0.0 { m / neighbour } else { f64::INFINITY };
    Some((j, m, score))
}

fn detect(samples: Vec<RatioSample>) -> RatioJump {
    let none = |samples| RatioJump {
        kind: JumpKind::None,
        location: f64::NAN,
        magnitude: 0.0,
        score: 0.0,
        samples,
    };
    if samples.iter().any(|s| !s.converged) {
        return none(samples);
    }
    let rho: Vec<f64> = samples.iter().map(|s| s.ratio).collect();
    let d1: Vec<f64> = rho.windows(2).map(|w| w[1] - w[0]).collect();
    let d2: Vec<f64> = d1.windows(2).map(|w| w[1] - w[0]).collect();

    if let Some((j, m, score)) = peak(&d1) {
        if score >= JUMP_SCORE && m > FLOOR {
            return RatioJump {
                kind: JumpKind::Value,
                location: 0.5 * (samples[j].r + samples[j + 1].r),
                magnitude: d1[j],
                score,
                samples,
            };
        }
    }
    if let Some((j, m, score)) = peak(&d2) {
        if score >= JUMP_SCORE && m > FLOOR {
            let h = 0.5 * (samples[j + 2].r - samples[j].r);
            return RatioJump {
                kind: JumpKind::Slope,
                location: samples[j + 1].r,
                magnitude: d2[j] / h,
                score,
                samples,
            };
        }
    }
    none(samples)
}
