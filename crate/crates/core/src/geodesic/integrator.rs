//! Adaptive fourth-order Runge–Kutta for the geodesic equation.
//!
//! Error control by step doubling: a full step is compared with two half steps,
//! the difference (in metric length) must stay below `tolerance · h`, and the
//! accepted state is the Richardson-extrapolated combination. After every
//! accepted step the velocity is rescaled to unit metric speed.

use crate::error::{GeometryError, Result};
use crate::surface::{ChartPoint, Surface};

use super::{EngineConfig, GeodesicState};

type Y = [f64; 4];

pub(crate) struct Integrator<'a> {
    pub surface: &'a Surface,
    pub config: &'a EngineConfig,
}

impl Integrator<'_> {
    fn rhs(&self, y: &Y) -> std::result::Result<Y, ChartPoint> {
        let p = ChartPoint::new(y[0], y[1]);
        let gamma = self.surface.christoffel_at(p).map_err(|_| self.surface.reduce(p))?;
        let (au, av) = gamma.acceleration(y[2], y[3]);
        Ok([y[2], y[3], au, av])
    }

    fn rk4(&self, y: &Y, h: f64) -> std::result::Result<Y, ChartPoint> {
        let add = |a: &Y, k: &Y, c: f64| [a[0] + c * k[0], a[1] + c * k[1], a[2] + c * k[2], a[3] + c * k[3]];
        let k1 = self.rhs(y)?;
        let k2 = self.rhs(&add(y, &k1, h / 2.0))?;
        let k3 = self.rhs(&add(y, &k2, h / 2.0))?;
        let k4 = self.rhs(&add(y, &k3, h))?;
        let mut out = *y;
        for i in 0..4 {
            out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        Ok(out)
    }

    /// Advance `state` by signed arc length `length`, calling `on_step(s, state)` after
    /// every accepted step (`s` measured from the start, always nonnegative).
    pub fn advance(
        &self,
        state: GeodesicState,
        length: f64,
        mut on_step: impl FnMut(f64, &GeodesicState),
    ) -> Result<GeodesicState> {
        if length == 0.0 {
            return Ok(state);
        }
        if length < 0.0 {
            let end = self.advance_forward(state.reversed(), -length, |s, st| on_step(s, &st.reversed()))?;
            return Ok(end.reversed());
        }
        self.advance_forward(state, length, on_step)
    }

    fn advance_forward(
        &self,
        state: GeodesicState,
        length: f64,
        mut on_step: impl FnMut(f64, &GeodesicState),
    ) -> Result<GeodesicState> {
        let cfg = self.config;
        let mut y: Y = [state.position.u, state.position.v, state.velocity.0, state.velocity.1];
        let mut s = 0.0;
        let mut h = cfg.max_step.min(length);
        let singular = |arc_length: f64, point: ChartPoint| GeometryError::SingularTrajectory { arc_length, point };

        while s < length {
            let remaining = length - s;
            if remaining <= 1e-9 {
                // round-off leftover: one unchecked step
                let next = self.rk4(&y, remaining).map_err(|p| singular(length, p))?;
                let pos = self.surface.reduce(ChartPoint::new(next[0], next[1]));
                let metric = self.surface.metric_at(pos).map_err(|_| singular(length, pos))?;
                let speed = metric.norm((next[2], next[3]));
                y = [pos.u, pos.v, next[2] / speed, next[3] / speed];
                s = length;
                on_step(s, &GeodesicState::new(pos, (y[2], y[3])));
                break;
            }
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            let full = self.rk4(&y, h).map_err(|p| singular(s + h, p))?;
            let half = self.rk4(&y, h / 2.0).map_err(|p| singular(s + h / 2.0, p))?;
            let two_half = self.rk4(&half, h / 2.0).map_err(|p| singular(s + h, p))?;

            let m = self
                .surface
                .metric_at(ChartPoint::new(y[0], y[1]))
                .map_err(|_| singular(s, self.surface.reduce(ChartPoint::new(y[0], y[1]))))?;
            let err = m.norm((two_half[0] - full[0], two_half[1] - full[1]))
                + m.norm((two_half[2] - full[2], two_half[3] - full[3]));
            let allowed = (cfg.tolerance * h).max(1e-15);

            if err <= allowed || h <= cfg.min_step {
                if !(err <= allowed) && h <= cfg.min_step {
                    return Err(GeometryError::IntegrationFailure { arc_length: s, step: h });
                }
                let mut next = [0.0; 4];
                for i in 0..4 {
                    next[i] = two_half[i] + (two_half[i] - full[i]) / 15.0;
                }
                let pos = self.surface.reduce(ChartPoint::new(next[0], next[1]));
                let metric = self.surface.metric_at(pos).map_err(|_| singular(s + h, pos))?;
                let speed = metric.norm((next[2], next[3]));
                if !(speed.is_finite() && speed > 0.0) {
                    return Err(GeometryError::IntegrationFailure { arc_length: s, step: h });
                }
                y = [pos.u, pos.v, next[2] / speed, next[3] / speed];
                s = if last { length } else { s + h };
                on_step(
                    s,
                    &GeodesicState {
                        position: pos,
                        velocity: (y[2], y[3]),
                    },
                );
                let grow = if err > 0.0 { 0.9 * (allowed / err).powf(0.25) } else { 4.0 };
                h = (h * grow.clamp(0.2, 4.0)).min(cfg.max_step);
            } else {
                let shrink = 0.9 * (allowed / err).powf(0.25);
                h = (h * shrink.clamp(0.1, 0.9)).max(cfg.min_step);
            }
        }
        Ok(GeodesicState {
            position: ChartPoint::new(y[0], y[1]),
            velocity: (y[2], y[3]),
        })
    }
}
