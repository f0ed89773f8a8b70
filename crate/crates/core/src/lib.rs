//! Right-ratio curvature analytic on analytic parametric surfaces.
//!
//! The library measures angles by the ratio `|DE|² / (2r)²`, where `D` and `E` are
//! the points at geodesic distance `r` along the two arms, and studies the
//! value of that ratio on right angles ("right ratio") as a local curvature probe:
//! it is `1/2` on flat surfaces and behaves like `1/2 − K·r²/12` near a point of
//! Gaussian curvature `K`.
//!
//! Modules:
//! - [`surface`]: analytic surfaces, metrics, Christoffel symbols, frames.
//! - [`geodesic`]: integration, exponential map, shooting distances, feet and intersections.
//! - [`ratio`]: angle distance ratios, ratio curves, curvature recovery, flatness and cone probes.
//! - [`probe`]: numeric checks of the metric axioms, perpendicular feet, round intersections
//!   and square constructions.
//! - [`cli`]: the `right-ratio` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geodesic;
pub mod optimize;
pub mod probe;
pub mod ratio;
pub mod surface;

pub use error::{GeometryError, Result};
pub use geodesic::{EngineConfig, GeodesicEngine, GeodesicPath, GeodesicState, ShootingResult};
pub use surface::{ChartPoint, ChristoffelSymbols, MetricTensor, Surface, SurfaceKind, TangentVector};
