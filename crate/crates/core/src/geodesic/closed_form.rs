//! Exact distances where the surface admits them.
//!
//! The cone is developable: cutting along a generator and unrolling gives a planar
//! sector of angle `2π·sin α`, in which geodesics are straight segments. Distances
//! are planar distances minimized over the winding images of the second point.

use std::f64::consts::PI;

use crate::error::{GeometryError, Result};
use crate::surface::{reduce_angle, ChartPoint, Surface, TangentVector, CHART_GUARD};

pub fn closed_form_distance(surface: &Surface, a: ChartPoint, b: ChartPoint) -> Option<f64> {
    match *surface {
        Surface::Plane => Some((b.u - a.u).hypot(b.v - a.v)),
        Surface::Sphere { radius } => Some(sphere_distance(radius, a, b)),
        Surface::Cone { half_angle } => Some(cone_unrolled_distance(half_angle, a, b)),
        Surface::Torus { .. } => None,
    }
}

/// Great-circle distance, `R·∠(a, b)` with the angle taken from the ambient vectors.
pub fn sphere_distance(radius: f64, a: ChartPoint, b: ChartPoint) -> f64 {
    let unit = |p: ChartPoint| {
        let (st, ct) = p.u.sin_cos();
        let (sp, cp) = p.v.sin_cos();
        [st * cp, st * sp, ct]
    };
    let (x, y) = (unit(a), unit(b));
    let dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let cross = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    radius * sin.atan2(dot)
}

/// Intrinsic cone distance between `(s, v)` chart points, via the unrolled sector.
pub fn cone_unrolled_distance(half_angle: f64, a: ChartPoint, b: ChartPoint) -> f64 {
    let k = half_angle.sin();
    let sector = 2.0 * PI * k;
    let base = k * reduce_angle(b.v - a.v);
    (-2..=2)
        .map(|j| {
            let theta = (base + j as f64 * sector).abs();
            if theta < PI {
                (a.u * a.u + b.u * b.u - 2.0 * a.u * b.u * theta.cos()).max(0.0).sqrt()
            } else {
                // the straight segment would leave the sector; the shortest path runs through the apex
                a.u + b.u
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Exponential map on the cone by walking a straight segment in the unrolled sector.
pub fn cone_exp_unrolled(half_angle: f64, p: ChartPoint, dir: &TangentVector, r: f64) -> Result<ChartPoint> {
    let k = half_angle.sin();
    let start = (p.u, 0.0);
    let d = (dir.du, p.u * k * dir.dv);
    // closest approach of the segment to the apex
    let t = (-(start.0 * d.0 + start.1 * d.1)).clamp(0.0, r);
    let near = (start.0 + t * d.0, start.1 + t * d.1);
    if near.0.hypot(near.1) <= CHART_GUARD {
        return Err(GeometryError::SingularTrajectory {
            arc_length: t,
            point: ChartPoint::new(0.0, p.v),
        });
    }
    let q = (start.0 + r * d.0, start.1 + r * d.1);
    let theta = q.1.atan2(q.0);
    Ok(ChartPoint::new(q.0.hypot(q.1), reduce_angle(p.v + theta / k)))
}
