use thiserror::Error;

use crate::surface::ChartPoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid surface parameters: {0}")]
    InvalidSurface(String),

    #[error("point ({u}, {v}) lies outside the chart domain")]
    OutsideDomain { u: f64, v: f64 },

    #[error("point {0:?} is a singular point of the chart")]
    SingularPoint(ChartPoint),

    #[error("geodesic entered the singular guard band at arc length {arc_length} near {point:?}")]
    SingularTrajectory { arc_length: f64, point: ChartPoint },

    #[error("geodesic integration failed at arc length {arc_length} (step {step:e} underflowed)")]
    IntegrationFailure { arc_length: f64, step: f64 },

    #[error("direction is not metric-unit (norm {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("minimizer t = {t} sits on the boundary of the line parameter range [0, {extent}]")]
    FootOutsideSegment { t: f64, extent: f64 },

    #[error("bracket for the circle intersection ran past the line extent {extent}")]
    InsufficientLineExtent { extent: f64 },

    #[error("shooting did not converge (residual {residual:e} after {iterations} iterations)")]
    NotConverged { residual: f64, iterations: usize },

    #[error("degenerate ratio curve: {converged} converged samples, {required} required")]
    DegenerateCurve { converged: usize, required: usize },

    #[error("ill-conditioned curvature fit (condition number {condition:e})")]
    IllConditionedFit { condition: f64 },

    #[error("probe misconfigured: {0}")]
    ProbeMisconfigured(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
