//! Geodesics on analytic surfaces: initial-value integration, the exponential map,
//! two-point distances by shooting, and the perpendicular-foot and circle–line
//! operations built on them.

mod closed_form;
mod integrator;
mod line;
mod shooting;

pub use closed_form::{closed_form_distance, cone_exp_unrolled, cone_unrolled_distance, sphere_distance};
pub use line::Foot;
pub use shooting::ShootingResult;

use crate::error::{GeometryError, Result};
use crate::surface::{ChartPoint, Surface, TangentVector};

use integrator::Integrator;

/// Tolerance on the metric norm of a direction declared "unit".
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Local error tolerance per unit arc length.
    pub tolerance: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub max_shooting_iterations: usize,
    /// Relative miss tolerance for declaring a shooting solve converged.
    pub shooting_tolerance: f64,
    /// Use the plane/sphere/cone closed forms for distances when available.
    pub prefer_closed_form: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            tolerance: 1e-10,
            max_step: 0.05,
            min_step: 1e-14,
            max_shooting_iterations: 64,
            shooting_tolerance: 1e-9,
            prefer_closed_form: false,
        }
    }
}

/// Position and unit-speed velocity of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub position: ChartPoint,
    pub velocity: (f64, f64),
}

impl GeodesicState {
    pub fn new(position: ChartPoint, velocity: (f64, f64)) -> Self {
        GeodesicState { position, velocity }
    }

    pub fn from_direction(dir: &TangentVector) -> Self {
        GeodesicState::new(dir.base, dir.components())
    }

    pub fn reversed(&self) -> Self {
        GeodesicState::new(self.position, (-self.velocity.0, -self.velocity.1))
    }

    pub fn tangent(&self) -> TangentVector {
        TangentVector::new(self.position, self.velocity.0, self.velocity.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub s: f64,
    pub state: GeodesicState,
}

/// Arc-length sampled geodesic. Samples start at `s = 0` and end at `s = length`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    surface: Surface,
    config: EngineConfig,
    samples: Vec<PathSample>,
}

impl GeodesicPath {
    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }

    pub fn length(&self) -> f64 {
        self.samples.last().map_or(0.0, |p| p.s)
    }

    pub fn start(&self) -> GeodesicState {
        self.samples[0].state
    }

    pub fn end(&self) -> GeodesicState {
        self.samples[self.samples.len() - 1].state
    }

    /// State at arc length `t`, re-integrated from the nearest sample at or below `t`.
    pub fn state_at(&self, t: f64) -> Result<GeodesicState> {
        let t = t.clamp(0.0, self.length());
        let idx = self.samples.partition_point(|p| p.s <= t).saturating_sub(1);
        let base = self.samples[idx];
        let integrator = Integrator {
            surface: &self.surface,
            config: &self.config,
        };
        integrator.advance(base.state, t - base.s, |_, _| {})
    }

    pub fn point_at(&self, t: f64) -> Result<ChartPoint> {
        Ok(self.state_at(t)?.position)
    }
}

/// Geodesic computations on one surface.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicEngine {
    surface: Surface,
    config: EngineConfig,
}

impl GeodesicEngine {
    pub fn new(surface: Surface) -> Self {
        GeodesicEngine::with_config(surface, EngineConfig::default())
    }

    pub fn with_config(surface: Surface, config: EngineConfig) -> Self {
        GeodesicEngine { surface, config }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn integrator(&self) -> Integrator<'_> {
        Integrator {
            surface: &self.surface,
            config: &self.config,
        }
    }

    fn unit_state(&self, start: ChartPoint, dir: &TangentVector) -> Result<GeodesicState> {
        self.surface.check_regular(start)?;
        let norm = self.surface.metric_at(start)?.norm(dir.components());
        if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(GeometryError::NonUnitDirection { norm });
        }
        Ok(GeodesicState::new(start, dir.components()))
    }

    /// Unit-speed geodesic from `start` along `dir`, sampled at every accepted step.
    pub fn integrate(&self, start: ChartPoint, dir: &TangentVector, length: f64) -> Result<GeodesicPath> {
        if !(length.is_finite() && length > 0.0) {
            return Err(GeometryError::ProbeMisconfigured(format!(
                "geodesic length must be positive, got {length}"
            )));
        }
        let state = self.unit_state(start, dir)?;
        let mut samples = vec![PathSample { s: 0.0, state }];
        self.integrator()
            .advance(state, length, |s, st| samples.push(PathSample { s, state: *st }))?;
        Ok(GeodesicPath {
            surface: self.surface,
            config: self.config.clone(),
            samples,
        })
    }

    /// Advance a state by signed arc length without recording samples.
    pub fn advance(&self, state: GeodesicState, length: f64) -> Result<GeodesicState> {
        self.integrator().advance(state, length, |_, _| {})
    }

    /// End state of the unit-speed geodesic from `p` along `dir` after arc length `r`.
    pub fn exp_state(&self, p: ChartPoint, dir: &TangentVector, r: f64) -> Result<GeodesicState> {
        let state = self.unit_state(p, dir)?;
        self.advance(state, r)
    }

    pub fn exp_map(&self, p: ChartPoint, dir: &TangentVector, r: f64) -> Result<ChartPoint> {
        Ok(self.exp_state(p, dir, r)?.position)
    }

    /// Geodesic "straight line" through `p` along `dir`, extending `half_length` each way.
    /// The line parameter `t = half_length` corresponds to `p`.
    pub fn line_through(&self, p: ChartPoint, dir: &TangentVector, half_length: f64) -> Result<GeodesicPath> {
        let state = self.unit_state(p, dir)?;
        let back = self.advance(state.reversed(), half_length)?;
        let start = back.reversed();
        self.integrate(start.position, &start.tangent(), 2.0 * half_length)
    }

    /// Distance between two points: the closed form when configured and available,
    /// otherwise the shooting solver.
    pub fn distance(&self, a: ChartPoint, b: ChartPoint) -> Result<ShootingResult> {
        if self.config.prefer_closed_form {
            if let Some(d) = closed_form_distance(&self.surface, a, b) {
                return Ok(ShootingResult::closed_form(&self.surface, a, d));
            }
        }
        self.shoot(a, b)
    }
}
