//! Perpendicular feet and circle–line intersections on a geodesic line.

use crate::error::{GeometryError, Result};
use crate::optimize::{bisect, brent_minimize};
use crate::surface::{ChartPoint, TangentVector};

use super::{GeodesicEngine, GeodesicPath};

/// Half-width of the band around `r = |CD|` treated as tangency.
pub const TANGENT_BAND: f64 = 1e-9;
/// Coarse samples along the line before the local minimization.
const FOOT_GRID: usize = 64;

/// Nearest point `D` on a line to an off-line point `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Foot {
    /// Line parameter (arc length from the line start).
    pub t: f64,
    pub point: ChartPoint,
    /// `|CD|`.
    pub distance: f64,
    /// Unit tangent of the line at the foot.
    pub line_tangent: TangentVector,
    /// Unit direction at the foot pointing along the geodesic towards `C`.
    pub toward: TangentVector,
}

impl GeodesicEngine {
    fn distance_to_line(&self, c: ChartPoint, line: &GeodesicPath, t: f64) -> Result<f64> {
        let r = self.shoot(c, line.point_at(t)?)?;
        if r.converged {
            Ok(r.distance)
        } else {
            Err(GeometryError::NotConverged {
                residual: r.residual,
                iterations: r.iterations,
            })
        }
    }

    /// First variation of `t ↦ d(C, line(t))`: the metric inner product of the line
    /// tangent with the unit arrival direction of the geodesic from `C`.
    fn distance_slope(&self, c: ChartPoint, line: &GeodesicPath, t: f64) -> Result<f64> {
        let st = line.state_at(t)?;
        let r = self.shoot(c, st.position)?;
        let arrival = r.arrival.ok_or(GeometryError::NotConverged {
            residual: r.residual,
            iterations: r.iterations,
        })?;
        Ok(self.surface.metric_at(st.position)?.inner(arrival.velocity, st.velocity))
    }

    /// Minimize `t ↦ d(C, line(t))`: coarse scan, Brent refinement to 1e-9 in `t`,
    /// then a secant polish on the first variation.
    pub fn foot_of_perpendicular(&self, c: ChartPoint, line: &GeodesicPath) -> Result<Foot> {
        let extent = line.length();
        let h = extent / FOOT_GRID as f64;
        let mut best = (0usize, f64::INFINITY);
        for i in 0..=FOOT_GRID {
            let d = match self.distance_to_line(c, line, i as f64 * h) {
                Ok(d) => d,
                Err(GeometryError::NotConverged { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            if d < best.1 {
                best = (i, d);
            }
        }
        let (i, _) = best;
        if i == 0 || i == FOOT_GRID {
            return Err(GeometryError::FootOutsideSegment {
                t: i as f64 * h,
                extent,
            });
        }
        let (lo, hi) = ((i - 1) as f64 * h, (i + 1) as f64 * h);
        let (mut t, _) = brent_minimize(|t| self.distance_to_line(c, line, t), lo, hi, 1e-9, 200)?;

        // secant on the slope; kept only if it stays in the bracket
        let mut t0 = t;
        let mut g0 = self.distance_slope(c, line, t0)?;
        let mut t1 = t0 + 1e-6 * (1.0 + extent);
        let mut g1 = self.distance_slope(c, line, t1)?;
        for _ in 0..20 {
            if g1 == g0 {
                break;
            }
            let t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
            if !(t2.is_finite() && t2 > lo && t2 < hi) {
                break;
            }
            let done = (t2 - t1).abs() <= 1e-14 * (1.0 + extent);
            t0 = t1;
            g0 = g1;
            t1 = t2;
            if done {
                break;
            }
            g1 = self.distance_slope(c, line, t1)?;
        }
        if t1 > lo && t1 < hi && (t1 - t).abs() < h {
            t = t1;
        }
        if t <= 1e-12 * extent || t >= extent * (1.0 - 1e-12) {
            return Err(GeometryError::FootOutsideSegment { t, extent });
        }

        let st = line.state_at(t)?;
        let r = self.shoot(c, st.position)?;
        if !r.converged {
            return Err(GeometryError::NotConverged {
                residual: r.residual,
                iterations: r.iterations,
            });
        }
        let arrival = r.arrival.expect("shooting reports an arrival state");
        Ok(Foot {
            t,
            point: st.position,
            distance: r.distance,
            line_tangent: st.tangent(),
            toward: arrival.reversed().tangent(),
        })
    }

    /// Points of `line` at geodesic distance `r` from `C`, ordered by line parameter.
    ///
    /// Empty below the foot distance, the foot alone within [`TANGENT_BAND`] of it,
    /// and otherwise one root on each side of the foot.
    pub fn circle_intersections(&self, c: ChartPoint, r: f64, line: &GeodesicPath) -> Result<Vec<ChartPoint>> {
        let foot = self.foot_of_perpendicular(c, line)?;
        self.circle_intersections_from_foot(c, r, line, &foot)
    }

    pub fn circle_intersections_from_foot(
        &self,
        c: ChartPoint,
        r: f64,
        line: &GeodesicPath,
        foot: &Foot,
    ) -> Result<Vec<ChartPoint>> {
        let d = foot.distance;
        if r < d - TANGENT_BAND {
            return Ok(Vec::new());
        }
        if (r - d).abs() <= TANGENT_BAND {
            return Ok(vec![foot.point]);
        }
        let extent = line.length();
        let g = |t: f64| -> Result<f64> { Ok(self.distance_to_line(c, line, t)? - r) };
        let mut out = Vec::with_capacity(2);
        for side in [-1.0, 1.0] {
            let mut step = (r * r - d * d).sqrt().max(r - d);
            let mut inner = foot.t;
            let outer = loop {
                let t = foot.t + side * step;
                let clamped = t.clamp(0.0, extent);
                if g(clamped)? > 0.0 {
                    break clamped;
                }
                if clamped != t {
                    return Err(GeometryError::InsufficientLineExtent { extent });
                }
                inner = t;
                step *= 2.0;
            };
            let t = bisect(g, inner, outer, 1e-12, 200)?;
            out.push(line.point_at(t)?);
        }
        Ok(out)
    }
}
