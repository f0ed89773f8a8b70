//! Analytic parametric surfaces and their intrinsic geometry.
//!
//! Every surface is described in a single standard chart:
//!
//! | surface | u | v |
//! |---------|---|---|
//! | plane   | x | y |
//! | sphere  | colatitude θ | longitude φ (periodic) |
//! | torus   | tube angle (0 on the outer equator) | axial angle (both periodic) |
//! | cone    | slant distance from the apex | azimuth (periodic) |
//!
//! Periodic coordinates are reduced to `(-π, π]`. Sphere poles and the cone apex
//! are excluded by a guard band of [`CHART_GUARD`].

use std::f64::consts::{PI, TAU};

use crate::error::{GeometryError, Result};

/// Width of the excluded band around chart singularities.
pub const CHART_GUARD: f64 = 1e-9;

/// Step for the central-difference Christoffel symbols.
pub const FD_STEP: f64 = 1e-6;

/// Reduce an angle to `(-π, π]`.
pub fn reduce_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Plane,
    Sphere,
    Torus,
    Cone,
}

impl std::fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SurfaceKind::Plane => "plane",
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Torus => "torus",
            SurfaceKind::Cone => "cone",
        };
        f.write_str(s)
    }
}

/// Range of one chart coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordRange {
    pub min: f64,
    pub max: f64,
    pub periodic: bool,
}

impl CoordRange {
    const UNBOUNDED: CoordRange = CoordRange {
        min: f64::NEG_INFINITY,
        max: f64::INFINITY,
        periodic: false,
    };
    const ANGLE: CoordRange = CoordRange {
        min: -PI,
        max: PI,
        periodic: true,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartDomain {
    pub u: CoordRange,
    pub v: CoordRange,
}

/// One of the supported analytic surfaces together with its parameters.
///
/// Construct through [`Surface::plane`], [`Surface::sphere`], [`Surface::torus`]
/// or [`Surface::cone`], which validate the parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Surface {
    Plane,
    Sphere { radius: f64 },
    Torus { center_radius: f64, tube_radius: f64 },
    /// `half_angle` in `(0, π/2]`; `π/2` degenerates to the plane in polar coordinates.
    Cone { half_angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChartPoint {
    pub u: f64,
    pub v: f64,
}

impl ChartPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        ChartPoint { u, v }
    }
}

/// First fundamental form at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl MetricTensor {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn inner(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        self.e * a.0 * b.0 + self.f * (a.0 * b.1 + a.1 * b.0) + self.g * a.1 * b.1
    }

    pub fn norm(&self, a: (f64, f64)) -> f64 {
        self.inner(a, a).max(0.0).sqrt()
    }

    /// Oriented area spanned by `a` then `b`; positive when `b` lies counterclockwise of `a`
    /// with respect to the `(∂u, ∂v)` orientation.
    pub fn cross(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        self.det().max(0.0).sqrt() * (a.0 * b.1 - a.1 * b.0)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.e > 0.0 && self.g > 0.0 && self.det() > 0.0
    }
}

/// Christoffel symbols of the second kind; the mixed lower index is stored once.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChristoffelSymbols {
    pub u_uu: f64,
    pub u_uv: f64,
    pub u_vv: f64,
    pub v_uu: f64,
    pub v_uv: f64,
    pub v_vv: f64,
}

impl ChristoffelSymbols {
    /// Symbols from the metric and its first partial derivatives.
    #[allow(clippy::too_many_arguments)]
    pub fn from_metric_derivatives(
        m: MetricTensor,
        e_u: f64,
        e_v: f64,
        f_u: f64,
        f_v: f64,
        g_u: f64,
        g_v: f64,
    ) -> Self {
        let (e, f, g) = (m.e, m.f, m.g);
        let two_det = 2.0 * m.det();
        ChristoffelSymbols {
            u_uu: (g * e_u - 2.0 * f * f_u + f * e_v) / two_det,
            u_uv: (g * e_v - f * g_u) / two_det,
            u_vv: (2.0 * g * f_v - g * g_u - f * g_v) / two_det,
            v_uu: (2.0 * e * f_u - e * e_v - f * e_u) / two_det,
            v_uv: (e * g_u - f * e_v) / two_det,
            v_vv: (e * g_v - 2.0 * f * f_v + f * g_u) / two_det,
        }
    }

    /// Geodesic acceleration `(u'', v'')` for velocity `(du, dv)`.
    pub fn acceleration(&self, du: f64, dv: f64) -> (f64, f64) {
        (
            -(self.u_uu * du * du + 2.0 * self.u_uv * du * dv + self.u_vv * dv * dv),
            -(self.v_uu * du * du + 2.0 * self.v_uv * du * dv + self.v_vv * dv * dv),
        )
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.u_uu - other.u_uu,
            self.u_uv - other.u_uv,
            self.u_vv - other.u_vv,
            self.v_uu - other.v_uu,
            self.v_uv - other.v_uv,
            self.v_vv - other.v_vv,
        ]
        .iter()
        .fold(0.0_f64, |acc, d| acc.max(d.abs()))
    }
}

/// A tangent vector given by its chart-coordinate rates at a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: ChartPoint,
    pub du: f64,
    pub dv: f64,
}

impl TangentVector {
    pub const fn new(base: ChartPoint, du: f64, dv: f64) -> Self {
        TangentVector { base, du, dv }
    }

    pub fn components(&self) -> (f64, f64) {
        (self.du, self.dv)
    }

    pub fn scaled(&self, k: f64) -> Self {
        TangentVector::new(self.base, k * self.du, k * self.dv)
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn norm(&self, surface: &Surface) -> Result<f64> {
        Ok(surface.metric_at(self.base)?.norm(self.components()))
    }

    pub fn normalized(&self, surface: &Surface) -> Result<Self> {
        let n = self.norm(surface)?;
        if !(n.is_finite() && n > 0.0) {
            return Err(GeometryError::NonUnitDirection { norm: n });
        }
        Ok(self.scaled(1.0 / n))
    }
}

impl Surface {
    pub fn plane() -> Self {
        Surface::Plane
    }

    pub fn sphere(radius: f64) -> Result<Self> {
        positive("sphere radius", radius)?;
        Ok(Surface::Sphere { radius })
    }

    pub fn torus(center_radius: f64, tube_radius: f64) -> Result<Self> {
        positive("torus center radius", center_radius)?;
        positive("torus tube radius", tube_radius)?;
        if tube_radius >= center_radius {
            return Err(GeometryError::InvalidSurface(format!(
                "torus tube radius {tube_radius} must be below the center radius {center_radius}"
            )));
        }
        Ok(Surface::Torus {
            center_radius,
            tube_radius,
        })
    }

    pub fn cone(half_angle: f64) -> Result<Self> {
        if !(half_angle.is_finite() && half_angle > 0.0 && half_angle <= PI / 2.0) {
            return Err(GeometryError::InvalidSurface(format!(
                "cone half-angle {half_angle} must lie in (0, π/2]"
            )));
        }
        Ok(Surface::Cone { half_angle })
    }

    /// Cone whose unrolled sector spans `sector_angle` radians (`2π·sin α`).
    pub fn cone_from_sector(sector_angle: f64) -> Result<Self> {
        if !(sector_angle.is_finite() && sector_angle > 0.0 && sector_angle <= TAU) {
            return Err(GeometryError::InvalidSurface(format!(
                "cone sector angle {sector_angle} must lie in (0, 2π]"
            )));
        }
        Surface::cone((sector_angle / TAU).min(1.0).asin())
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            Surface::Plane => SurfaceKind::Plane,
            Surface::Sphere { .. } => SurfaceKind::Sphere,
            Surface::Torus { .. } => SurfaceKind::Torus,
            Surface::Cone { .. } => SurfaceKind::Cone,
        }
    }

    /// Unrolled sector angle of a cone, `2π·sin α`.
    pub fn sector_angle(&self) -> Option<f64> {
        match *self {
            Surface::Cone { half_angle } => Some(TAU * half_angle.sin()),
            _ => None,
        }
    }

    pub fn domain(&self) -> ChartDomain {
        match self {
            Surface::Plane => ChartDomain {
                u: CoordRange::UNBOUNDED,
                v: CoordRange::UNBOUNDED,
            },
            Surface::Sphere { .. } => ChartDomain {
                u: CoordRange {
                    min: 0.0,
                    max: PI,
                    periodic: false,
                },
                v: CoordRange::ANGLE,
            },
            Surface::Torus { .. } => ChartDomain {
                u: CoordRange::ANGLE,
                v: CoordRange::ANGLE,
            },
            Surface::Cone { .. } => ChartDomain {
                u: CoordRange {
                    min: 0.0,
                    max: f64::INFINITY,
                    periodic: false,
                },
                v: CoordRange::ANGLE,
            },
        }
    }

    /// Reduce periodic coordinates without any domain check.
    pub fn reduce(&self, p: ChartPoint) -> ChartPoint {
        let d = self.domain();
        ChartPoint {
            u: if d.u.periodic { reduce_angle(p.u) } else { p.u },
            v: if d.v.periodic { reduce_angle(p.v) } else { p.v },
        }
    }

    /// Build a validated, reduced chart point away from any singular guard band.
    pub fn point(&self, u: f64, v: f64) -> Result<ChartPoint> {
        let p = self.reduce(ChartPoint::new(u, v));
        self.check_regular(p)?;
        Ok(p)
    }

    /// Error if `p` is outside the chart or inside a singular guard band.
    pub fn check_regular(&self, p: ChartPoint) -> Result<()> {
        if !(p.u.is_finite() && p.v.is_finite()) {
            return Err(GeometryError::OutsideDomain { u: p.u, v: p.v });
        }
        match *self {
            Surface::Sphere { .. } => {
                if !(0.0..=PI).contains(&p.u) {
                    return Err(GeometryError::OutsideDomain { u: p.u, v: p.v });
                }
                if p.u <= CHART_GUARD || p.u >= PI - CHART_GUARD {
                    return Err(GeometryError::SingularPoint(p));
                }
            }
            Surface::Cone { .. } => {
                if p.u < 0.0 {
                    return Err(GeometryError::OutsideDomain { u: p.u, v: p.v });
                }
                if p.u <= CHART_GUARD {
                    return Err(GeometryError::SingularPoint(p));
                }
            }
            Surface::Plane | Surface::Torus { .. } => {}
        }
        Ok(())
    }

    /// Chart displacement from `from` to `to`, with periodic coordinates wrapped.
    pub fn chart_delta(&self, from: ChartPoint, to: ChartPoint) -> (f64, f64) {
        let d = self.domain();
        let du = to.u - from.u;
        let dv = to.v - from.v;
        (
            if d.u.periodic { reduce_angle(du) } else { du },
            if d.v.periodic { reduce_angle(dv) } else { dv },
        )
    }

    /// Standard embedding into R³. Valid at the cone apex as well.
    pub fn embed(&self, p: ChartPoint) -> [f64; 3] {
        match *self {
            Surface::Plane => [p.u, p.v, 0.0],
            Surface::Sphere { radius } => {
                let (st, ct) = p.u.sin_cos();
                let (sp, cp) = p.v.sin_cos();
                [radius * st * cp, radius * st * sp, radius * ct]
            }
            Surface::Torus {
                center_radius,
                tube_radius,
            } => {
                let rho = center_radius + tube_radius * p.u.cos();
                let (sv, cv) = p.v.sin_cos();
                [rho * cv, rho * sv, tube_radius * p.u.sin()]
            }
            Surface::Cone { half_angle } => {
                let (sa, ca) = half_angle.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                [p.u * sa * cv, p.u * sa * sv, p.u * ca]
            }
        }
    }

    /// Partial derivatives of the embedding, `(∂X/∂u, ∂X/∂v)`.
    pub fn tangent_basis(&self, p: ChartPoint) -> ([f64; 3], [f64; 3]) {
        match *self {
            Surface::Plane => ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            Surface::Sphere { radius } => {
                let (st, ct) = p.u.sin_cos();
                let (sp, cp) = p.v.sin_cos();
                (
                    [radius * ct * cp, radius * ct * sp, -radius * st],
                    [-radius * st * sp, radius * st * cp, 0.0],
                )
            }
            Surface::Torus {
                center_radius,
                tube_radius,
            } => {
                let (su, cu) = p.u.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                let rho = center_radius + tube_radius * cu;
                (
                    [-tube_radius * su * cv, -tube_radius * su * sv, tube_radius * cu],
                    [-rho * sv, rho * cv, 0.0],
                )
            }
            Surface::Cone { half_angle } => {
                let (sa, ca) = half_angle.sin_cos();
                let (sv, cv) = p.v.sin_cos();
                ([sa * cv, sa * sv, ca], [-p.u * sa * sv, p.u * sa * cv, 0.0])
            }
        }
    }

    pub fn metric_at(&self, p: ChartPoint) -> Result<MetricTensor> {
        self.check_regular(p)?;
        Ok(self.metric_unchecked(p))
    }

    fn metric_unchecked(&self, p: ChartPoint) -> MetricTensor {
        match *self {
            Surface::Plane => MetricTensor {
                e: 1.0,
                f: 0.0,
                g: 1.0,
            },
            Surface::Sphere { radius } => {
                let r2 = radius * radius;
                let st = p.u.sin();
                MetricTensor {
                    e: r2,
                    f: 0.0,
                    g: r2 * st * st,
                }
            }
            Surface::Torus {
                center_radius,
                tube_radius,
            } => {
                let rho = center_radius + tube_radius * p.u.cos();
                MetricTensor {
                    e: tube_radius * tube_radius,
                    f: 0.0,
                    g: rho * rho,
                }
            }
            Surface::Cone { half_angle } => {
                let w = p.u * half_angle.sin();
                MetricTensor {
                    e: 1.0,
                    f: 0.0,
                    g: w * w,
                }
            }
        }
    }

    /// Closed-form Christoffel symbols.
    pub fn christoffel_at(&self, p: ChartPoint) -> Result<ChristoffelSymbols> {
        self.check_regular(p)?;
        Ok(match *self {
            Surface::Plane => ChristoffelSymbols::default(),
            Surface::Sphere { .. } => {
                let (st, ct) = p.u.sin_cos();
                ChristoffelSymbols {
                    u_vv: -st * ct,
                    v_uv: ct / st,
                    ..Default::default()
                }
            }
            Surface::Torus {
                center_radius,
                tube_radius,
            } => {
                let (su, cu) = p.u.sin_cos();
                let rho = center_radius + tube_radius * cu;
                ChristoffelSymbols {
                    u_vv: rho * su / tube_radius,
                    v_uv: -tube_radius * su / rho,
                    ..Default::default()
                }
            }
            Surface::Cone { half_angle } => {
                let sa = half_angle.sin();
                ChristoffelSymbols {
                    u_vv: -p.u * sa * sa,
                    v_uv: 1.0 / p.u,
                    ..Default::default()
                }
            }
        })
    }

    /// Christoffel symbols from central differences of the metric (step [`FD_STEP`]).
    pub fn christoffel_fd(&self, p: ChartPoint) -> Result<ChristoffelSymbols> {
        let m = self.metric_at(p)?;
        let h = FD_STEP;
        let at = |du: f64, dv: f64| self.metric_at(ChartPoint::new(p.u + du, p.v + dv));
        let (up, um) = (at(h, 0.0)?, at(-h, 0.0)?);
        let (vp, vm) = (at(0.0, h)?, at(0.0, -h)?);
        let d = |a: f64, b: f64| (a - b) / (2.0 * h);
        Ok(ChristoffelSymbols::from_metric_derivatives(
            m,
            d(up.e, um.e),
            d(vp.e, vm.e),
            d(up.f, um.f),
            d(vp.f, vm.f),
            d(up.g, um.g),
            d(vp.g, vm.g),
        ))
    }

    pub fn gaussian_curvature(&self, p: ChartPoint) -> Result<f64> {
        self.check_regular(p)?;
        Ok(match *self {
            Surface::Plane | Surface::Cone { .. } => 0.0,
            Surface::Sphere { radius } => 1.0 / (radius * radius),
            Surface::Torus {
                center_radius,
                tube_radius,
            } => {
                let cu = p.u.cos();
                cu / (tube_radius * (center_radius + tube_radius * cu))
            }
        })
    }

    /// Metric-orthonormal pair `(e1, e2)` at `p`, rotated by `phi` in the tangent plane.
    ///
    /// At `phi = 0`, `e1` is the normalized `∂u` direction and `e2` its Gram–Schmidt
    /// complement built from `∂v`, so `(e1, e2)` has the chart's orientation.
    pub fn orthonormal_frame(&self, p: ChartPoint, phi: f64) -> Result<(TangentVector, TangentVector)> {
        let m = self.metric_at(p)?;
        let se = m.e.sqrt();
        let a = (1.0 / se, 0.0);
        // ∂v minus its projection on ∂u, then normalized
        let w = (-m.f / m.e, 1.0);
        let wn = m.norm(w);
        let b = (w.0 / wn, w.1 / wn);
        let (s, c) = phi.sin_cos();
        let e1 = (c * a.0 + s * b.0, c * a.1 + s * b.1);
        let e2 = (-s * a.0 + c * b.0, -s * a.1 + c * b.1);
        Ok((
            TangentVector::new(p, e1.0, e1.1),
            TangentVector::new(p, e2.0, e2.1),
        ))
    }

    /// Unit tangent at angle `psi` measured from the `phi = 0` frame.
    pub fn direction(&self, p: ChartPoint, psi: f64) -> Result<TangentVector> {
        Ok(self.orthonormal_frame(p, psi)?.0)
    }

    /// Angle of `t` in the `phi = 0` frame at its base point.
    pub fn direction_angle(&self, t: &TangentVector) -> Result<f64> {
        let m = self.metric_at(t.base)?;
        let (e1, e2) = self.orthonormal_frame(t.base, 0.0)?;
        let x = m.inner(t.components(), e1.components());
        let y = m.inner(t.components(), e2.components());
        Ok(y.atan2(x))
    }

    /// Radius below which geodesics from `p` are treated as unique shortest paths.
    pub fn injectivity_bound(&self, p: ChartPoint) -> f64 {
        match *self {
            Surface::Plane => f64::INFINITY,
            Surface::Sphere { radius } => 0.99 * PI * radius,
            Surface::Torus { tube_radius, .. } => 0.9 * PI * tube_radius,
            Surface::Cone { .. } => 0.9 * p.u.max(0.0),
        }
    }
}

fn positive(what: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidSurface(format!("{what} must be positive, got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fig2_torus() -> Surface {
        Surface::torus(2.5, 0.5).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn random_point(s: &Surface, rng: &mut ChaCha8Rng) -> ChartPoint {
        match s {
            Surface::Plane => ChartPoint::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)),
            Surface::Sphere { .. } => ChartPoint::new(rng.random_range(0.05..PI - 0.05), rng.random_range(-PI..PI)),
            Surface::Torus { .. } => ChartPoint::new(rng.random_range(-PI..PI), rng.random_range(-PI..PI)),
            Surface::Cone { .. } => ChartPoint::new(rng.random_range(0.05..5.0), rng.random_range(-PI..PI)),
        }
    }

    fn catalog() -> Vec<Surface> {
        vec![
            Surface::plane(),
            Surface::sphere(1.0).unwrap(),
            Surface::sphere(2.0).unwrap(),
            fig2_torus(),
            Surface::cone(0.4).unwrap(),
            Surface::cone_from_sector(1.5 * PI).unwrap(),
        ]
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Surface::sphere(0.0).is_err());
        assert!(Surface::sphere(-1.0).is_err());
        assert!(Surface::torus(0.5, 0.5).is_err());
        assert!(Surface::torus(1.0, 2.0).is_err());
        assert!(Surface::torus(f64::NAN, 0.1).is_err());
        assert!(Surface::cone(0.0).is_err());
        assert!(Surface::cone(2.0).is_err());
        assert!(Surface::cone(PI / 2.0).is_ok());
    }

    #[test]
    fn angle_reduction() {
        assert_eq!(reduce_angle(PI), PI);
        assert_eq!(reduce_angle(-PI), PI);
        assert!(close(reduce_angle(3.0 * PI / 2.0), -PI / 2.0, 1e-15));
        assert!(close(reduce_angle(PI + 1.0), 1.0 - PI, 1e-15));
        let t = fig2_torus();
        let p = t.point(7.0, -7.0).unwrap();
        assert!(close(p.u, 7.0 - TAU, 1e-15) && close(p.v, TAU - 7.0, 1e-15));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(Surface::plane().embed(ChartPoint::new(3.0, 4.0)), [3.0, 4.0, 0.0]);
        let t = fig2_torus();
        let outer = t.embed(ChartPoint::new(0.0, 0.0));
        assert!(close(outer[0], 3.0, 1e-15) && close(outer[1], 0.0, 1e-15) && close(outer[2], 0.0, 1e-15));
        let inner = t.embed(ChartPoint::new(PI, 0.0));
        assert!(close(inner[0], 2.0, 1e-15) && close(inner[1], 0.0, 1e-15) && close(inner[2], 0.0, 1e-15));
        // the apex embeds, but is singular for metric queries
        let c = Surface::cone(0.3).unwrap();
        assert_eq!(c.embed(ChartPoint::new(0.0, 1.0)), [0.0, 0.0, 0.0]);
        assert!(matches!(
            c.metric_at(ChartPoint::new(0.0, 1.0)),
            Err(GeometryError::SingularPoint(_))
        ));
    }

    #[test]
    fn metric_examples() {
        let m = Surface::plane().metric_at(ChartPoint::new(5.0, -2.0)).unwrap();
        assert_eq!((m.e, m.f, m.g), (1.0, 0.0, 1.0));
        let m = fig2_torus().metric_at(ChartPoint::new(0.0, 1.2)).unwrap();
        assert!(close(m.e, 0.25, 1e-15) && m.f == 0.0 && close(m.g, 9.0, 1e-14));
        let m = Surface::sphere(1.0).unwrap().metric_at(ChartPoint::new(PI / 2.0, 0.0)).unwrap();
        assert!(close(m.e, 1.0, 1e-15) && m.f == 0.0 && close(m.g, 1.0, 1e-15));
    }

    #[test]
    fn singular_guard_bands() {
        let s = Surface::sphere(1.0).unwrap();
        assert!(matches!(s.point(0.5e-9, 0.0), Err(GeometryError::SingularPoint(_))));
        assert!(matches!(s.point(PI, 0.0), Err(GeometryError::SingularPoint(_))));
        assert!(matches!(s.point(-0.1, 0.0), Err(GeometryError::OutsideDomain { .. })));
        assert!(s.point(2e-9, 0.0).is_ok());
        let c = Surface::cone(0.5).unwrap();
        assert!(matches!(c.christoffel_at(ChartPoint::new(1e-10, 0.0)), Err(GeometryError::SingularPoint(_))));
        assert!(matches!(c.gaussian_curvature(ChartPoint::new(0.0, 0.0)), Err(GeometryError::SingularPoint(_))));
    }

    #[test]
    fn christoffel_examples() {
        let g = Surface::plane().christoffel_at(ChartPoint::new(1.0, 2.0)).unwrap();
        assert_eq!(g, ChristoffelSymbols::default());
        let g = Surface::sphere(1.0).unwrap().christoffel_at(ChartPoint::new(PI / 2.0, 0.3)).unwrap();
        assert!(close(g.u_vv, 0.0, 1e-15) && close(g.v_uv, 0.0, 1e-15));
        let g = fig2_torus().christoffel_at(ChartPoint::new(0.0, 0.0)).unwrap();
        assert_eq!(g.u_vv, 0.0);
    }

    #[test]
    fn curvature_examples() {
        let t = fig2_torus();
        assert!(close(t.gaussian_curvature(ChartPoint::new(PI, 0.0)).unwrap(), -1.0, 1e-15));
        assert!(close(t.gaussian_curvature(ChartPoint::new(0.0, 0.0)).unwrap(), 2.0 / 3.0, 1e-15));
        assert_eq!(Surface::plane().gaussian_curvature(ChartPoint::new(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(Surface::sphere(2.0).unwrap().gaussian_curvature(ChartPoint::new(1.0, 0.0)).unwrap(), 0.25);
    }

    #[test]
    fn torus_curvature_sign_map() {
        let t = fig2_torus();
        for i in 0..=400 {
            let u = -PI + TAU * i as f64 / 400.0;
            let k = t.gaussian_curvature(ChartPoint::new(u, 0.0)).unwrap();
            let a = reduce_angle(u).abs();
            if (a - PI / 2.0).abs() < 1e-12 {
                assert!(k.abs() < 1e-15);
            } else if a < PI / 2.0 {
                assert!(k > 0.0, "u={u} k={k}");
            } else {
                assert!(k < 0.0, "u={u} k={k}");
            }
        }
        assert!(t.gaussian_curvature(ChartPoint::new(PI / 2.0, 0.0)).unwrap().abs() < 1e-15);
        assert!(t.gaussian_curvature(ChartPoint::new(-PI / 2.0, 0.0)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn frame_examples() {
        let (e1, e2) = Surface::plane().orthonormal_frame(ChartPoint::new(0.0, 0.0), 0.0).unwrap();
        assert_eq!((e1.du, e1.dv, e2.du, e2.dv), (1.0, 0.0, 0.0, 1.0));
        let (e1, e2) = fig2_torus().orthonormal_frame(ChartPoint::new(0.0, 0.0), 0.0).unwrap();
        assert!(close(e1.du, 2.0, 1e-15) && e1.dv == 0.0);
        assert!(e2.du == 0.0 && close(e2.dv, 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn frame_quarter_turn() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in catalog() {
            let p = random_point(&s, &mut rng);
            let phi = rng.random_range(-PI..PI);
            let (a1, a2) = s.orthonormal_frame(p, phi).unwrap();
            let (b1, b2) = s.orthonormal_frame(p, phi + PI / 2.0).unwrap();
            assert!(close(b1.du, a2.du, 1e-12) && close(b1.dv, a2.dv, 1e-12));
            assert!(close(b2.du, -a1.du, 1e-12) && close(b2.dv, -a1.dv, 1e-12));
        }
    }

    #[test]
    fn positive_definite_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in catalog() {
            for _ in 0..10_000 {
                let p = random_point(&s, &mut rng);
                let m = s.metric_at(p).unwrap();
                assert!(m.is_positive_definite(), "{s:?} at {p:?}: {m:?}");
            }
        }
    }

    #[test]
    fn analytic_christoffel_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for s in catalog() {
            for _ in 0..1000 {
                let p = random_point(&s, &mut rng);
                let a = s.christoffel_at(p).unwrap();
                let fd = s.christoffel_fd(p).unwrap();
                assert!(a.max_abs_diff(&fd) <= 1e-6, "{s:?} at {p:?}: {a:?} vs {fd:?}");
            }
        }
    }

    #[test]
    fn frame_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for s in catalog() {
            for _ in 0..1000 {
                let p = random_point(&s, &mut rng);
                let phi = rng.random_range(-10.0..10.0);
                let m = s.metric_at(p).unwrap();
                let (e1, e2) = s.orthonormal_frame(p, phi).unwrap();
                assert!(close(m.norm(e1.components()), 1.0, 1e-12));
                assert!(close(m.norm(e2.components()), 1.0, 1e-12));
                assert!(m.inner(e1.components(), e2.components()).abs() <= 1e-12);
                assert!(m.cross(e1.components(), e2.components()) > 0.0);
            }
        }
    }

    #[test]
    fn embedding_pulls_back_to_metric() {
        // E = X_u·X_u etc. checked against central differences of the embedding
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let h = 1e-6;
        for s in catalog() {
            for _ in 0..200 {
                let p = random_point(&s, &mut rng);
                let d = |du: f64, dv: f64| {
                    let a = s.embed(ChartPoint::new(p.u + du, p.v + dv));
                    let b = s.embed(ChartPoint::new(p.u - du, p.v - dv));
                    [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h), (a[2] - b[2]) / (2.0 * h)]
                };
                let xu = d(h, 0.0);
                let xv = d(0.0, h);
                let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
                let m = s.metric_at(p).unwrap();
                let scale = 1.0 + m.g.abs();
                assert!(close(dot(xu, xu), m.e, 1e-6 * scale));
                assert!(close(dot(xu, xv), m.f, 1e-6 * scale));
                assert!(close(dot(xv, xv), m.g, 1e-6 * scale));
                let (bu, bv) = s.tangent_basis(p);
                for i in 0..3 {
                    assert!(close(bu[i], xu[i], 1e-6 * scale) && close(bv[i], xv[i], 1e-6 * scale));
                }
            }
        }
    }

    #[test]
    fn cone_sector_roundtrip() {
        let c = Surface::cone_from_sector(1.5 * PI).unwrap();
        assert!(close(c.sector_angle().unwrap(), 1.5 * PI, 1e-14));
        let flat = Surface::cone_from_sector(TAU).unwrap();
        assert!(close(flat.sector_angle().unwrap(), TAU, 1e-14));
    }
}
