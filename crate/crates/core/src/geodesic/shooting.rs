//! Two-point geodesic distance by shooting on the launch angle.
//!
//! For a trial launch angle the geodesic is followed to its closest approach to
//! the target (Newton on arc length), and the signed perpendicular miss there is
//! driven to zero by secant steps, falling back to bisection once a sign change
//! brackets the root.

use crate::error::Result;
use crate::surface::{ChartPoint, Surface, TangentVector};

use super::{GeodesicEngine, GeodesicState};

/// Relative miss at which the solver stops refining.
const FINE_TOLERANCE: f64 = 1e-14;
const MAX_APPROACH_ITERATIONS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    pub distance: f64,
    /// Unit launch direction at the start point.
    pub launch: TangentVector,
    /// Unit velocity at the closest approach to the target; `None` for closed-form results.
    pub arrival: Option<GeodesicState>,
    /// Metric length of the terminal miss.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl ShootingResult {
    pub(super) fn closed_form(surface: &Surface, a: ChartPoint, distance: f64) -> Self {
        let launch = surface
            .direction(a, 0.0)
            .unwrap_or(TangentVector::new(a, 0.0, 0.0));
        ShootingResult {
            distance,
            launch,
            arrival: None,
            residual: 0.0,
            iterations: 0,
            converged: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    psi: f64,
    s: f64,
    signed_miss: f64,
    miss: f64,
    end: GeodesicState,
}

impl GeodesicEngine {
    /// Shooting solve for the geodesic distance between `a` and `b`.
    ///
    /// Non-convergence is reported through [`ShootingResult::converged`]; errors are
    /// reserved for singular points and integration failures.
    pub fn shoot(&self, a: ChartPoint, b: ChartPoint) -> Result<ShootingResult> {
        let surface = &self.surface;
        surface.check_regular(a)?;
        surface.check_regular(b)?;
        let a = surface.reduce(a);
        let b = surface.reduce(b);

        let metric_a = surface.metric_at(a)?;
        if metric_a.norm(surface.chart_delta(a, b)) <= 1e-15 {
            return Ok(ShootingResult {
                distance: 0.0,
                launch: surface.direction(a, 0.0)?,
                arrival: Some(GeodesicState::new(a, surface.direction(a, 0.0)?.components())),
                residual: 0.0,
                iterations: 0,
                converged: true,
            });
        }

        let (psi0, chord) = self.initial_guess(a, b)?;
        let mut iterations = 1;
        let t0 = self.trial(a, b, psi0, chord)?;
        let mut best = t0;
        let done = |t: &Trial| t.miss <= FINE_TOLERANCE * (1.0 + t.s);

        if !done(&t0) {
            let mut prev = t0;
            let mut cur = self.trial(a, b, psi0 - t0.signed_miss / t0.s.max(1e-12), t0.s)?;
            iterations += 1;
            let mut bracket: Option<(Trial, Trial)> = None;
            loop {
                if cur.miss < best.miss {
                    best = cur;
                }
                if done(&best) || iterations >= self.config.max_shooting_iterations {
                    break;
                }
                if cur.signed_miss.signum() != prev.signed_miss.signum() {
                    bracket = Some((prev, cur));
                } else if let Some((lo, hi)) = bracket {
                    bracket = Some(if cur.signed_miss.signum() == lo.signed_miss.signum() {
                        (cur, hi)
                    } else {
                        (lo, cur)
                    });
                }

                let denom = cur.signed_miss - prev.signed_miss;
                let mut next = cur.psi - cur.signed_miss * (cur.psi - prev.psi) / denom;
                if let Some((lo, hi)) = bracket {
                    let (l, h) = if lo.psi < hi.psi { (lo.psi, hi.psi) } else { (hi.psi, lo.psi) };
                    if !(next.is_finite() && next > l && next < h) {
                        next = 0.5 * (l + h);
                    }
                } else if !next.is_finite() {
                    next = cur.psi - cur.signed_miss / cur.s.max(1e-12);
                }
                if (next - cur.psi).abs() <= 1e-16 * (1.0 + cur.psi.abs()) {
                    break;
                }
                let t = self.trial(a, b, next, cur.s)?;
                iterations += 1;
                prev = cur;
                cur = t;
            }
        }

        Ok(ShootingResult {
            distance: best.s,
            launch: surface.direction(a, best.psi)?,
            arrival: Some(best.end),
            residual: best.miss,
            iterations,
            converged: best.miss <= self.config.shooting_tolerance * (1.0 + best.s),
        })
    }

    /// Launch angle from the ambient chord projected on the tangent plane at `a`,
    /// together with the chord length as a first arc-length estimate.
    fn initial_guess(&self, a: ChartPoint, b: ChartPoint) -> Result<(f64, f64)> {
        let surface = &self.surface;
        let xa = surface.embed(a);
        let xb = surface.embed(b);
        let c = [xb[0] - xa[0], xb[1] - xa[1], xb[2] - xa[2]];
        let chord = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        let (xu, xv) = surface.tangent_basis(a);
        let dot = |p: [f64; 3], q: [f64; 3]| p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
        let m = surface.metric_at(a)?;
        let (ru, rv) = (dot(xu, c), dot(xv, c));
        let det = m.det();
        let du = (m.g * ru - m.f * rv) / det;
        let dv = (m.e * rv - m.f * ru) / det;
        let psi = surface.direction_angle(&TangentVector::new(a, du, dv))?;
        Ok((psi, chord.max(1e-12)))
    }

    fn trial(&self, a: ChartPoint, b: ChartPoint, psi: f64, s_guess: f64) -> Result<Trial> {
        let surface = &self.surface;
        let start = GeodesicState::from_direction(&surface.direction(a, psi)?);
        let mut s = s_guess.max(0.0);
        let mut st = self.advance(start, s)?;
        for _ in 0..MAX_APPROACH_ITERATIONS {
            let m = surface.metric_at(st.position)?;
            let delta = surface.chart_delta(st.position, b);
            let mut step = m.inner(delta, st.velocity);
            if s + step < 0.0 {
                step = -s;
            }
            if step.abs() <= 1e-15 * (1.0 + s) {
                break;
            }
            st = if s + step == 0.0 { start } else { self.advance(st, step)? };
            s += step;
        }
        let m = surface.metric_at(st.position)?;
        let delta = surface.chart_delta(st.position, b);
        Ok(Trial {
            psi,
            s,
            signed_miss: m.cross(st.velocity, delta),
            miss: m.norm(delta),
            end: st,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::closed_form_distance;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn plane_pythagoras() {
        let eng = GeodesicEngine::new(Surface::plane());
        let r = eng.shoot(ChartPoint::new(0.0, 0.0), ChartPoint::new(3.0, 4.0)).unwrap();
        assert!(r.converged);
        assert!(close(r.distance, 5.0, 1e-12));
        assert!(close(r.launch.du, 0.6, 1e-10) && close(r.launch.dv, 0.8, 1e-10));
    }

    #[test]
    fn sphere_equator_arc() {
        let eng = GeodesicEngine::new(Surface::sphere(1.0).unwrap());
        let r = eng
            .shoot(ChartPoint::new(PI / 2.0, 0.0), ChartPoint::new(PI / 2.0, 1.0))
            .unwrap();
        assert!(r.converged && close(r.distance, 1.0, 1e-10), "{r:?}");
    }

    #[test]
    fn torus_meridian_arc() {
        let eng = GeodesicEngine::new(Surface::torus(2.5, 0.5).unwrap());
        let r = eng
            .shoot(ChartPoint::new(PI, 0.0), ChartPoint::new(PI - 0.4, 0.0))
            .unwrap();
        assert!(r.converged && close(r.distance, 0.2, 1e-10), "{r:?}");
        // across the periodic seam
        let r = eng
            .shoot(ChartPoint::new(PI - 0.1, 0.0), ChartPoint::new(-PI + 0.1, 0.0))
            .unwrap();
        assert!(r.converged && close(r.distance, 0.1, 1e-10), "{r:?}");
    }

    #[test]
    fn coincident_points() {
        let eng = GeodesicEngine::new(Surface::torus(2.5, 0.5).unwrap());
        let p = ChartPoint::new(0.3, 0.2);
        let r = eng.shoot(p, p).unwrap();
        assert!(r.converged && r.distance == 0.0);
    }

    #[test]
    fn sphere_and_cone_match_closed_forms() {
        let sphere = Surface::sphere(1.0).unwrap();
        let cone = Surface::cone_from_sector(1.5 * PI).unwrap();
        let cases = [
            (sphere, ChartPoint::new(1.0, 0.2), ChartPoint::new(2.0, 1.3)),
            (sphere, ChartPoint::new(0.6, -0.4), ChartPoint::new(0.9, 2.0)),
            (cone, ChartPoint::new(2.0, 0.0), ChartPoint::new(2.5, 0.8)),
            (cone, ChartPoint::new(1.5, 3.0), ChartPoint::new(1.2, -2.9)),
        ];
        for (s, a, b) in cases {
            let eng = GeodesicEngine::new(s);
            let r = eng.shoot(a, b).unwrap();
            let exact = closed_form_distance(&s, a, b).unwrap();
            assert!(r.converged, "{s:?} {a:?} {b:?}: {r:?}");
            assert!(close(r.distance, exact, 1e-9 * (1.0 + exact)), "{} vs {exact}", r.distance);
        }
    }

    #[test]
    fn closed_form_preference() {
        let s = Surface::sphere(1.0).unwrap();
        let eng = GeodesicEngine::with_config(
            s,
            crate::geodesic::EngineConfig {
                prefer_closed_form: true,
                ..Default::default()
            },
        );
        let r = eng.distance(ChartPoint::new(1.0, 0.0), ChartPoint::new(1.0, 0.5)).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.arrival.is_none());
    }
}
