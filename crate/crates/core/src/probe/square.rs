//! A square built on two perpendicular lines through a centre point.
//!
//! `A`, `B` sit at distance `h` along `±e1` from the centre `O` and `C`, `D` along
//! `±e2`. The sides `AC`, `CB`, `BD`, `DA` are geodesics with midpoints `E`, `F`,
//! `G`, `H`. Each corner ratio is the angle distance ratio between its two sides,
//! measured at the shorter of the two side lengths.

use crate::error::{GeometryError, Result};
use crate::geodesic::{GeodesicEngine, ShootingResult};
use crate::ratio::angle_distance_ratio;
use crate::surface::ChartPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareReport {
    pub o: ChartPoint,
    pub a: ChartPoint,
    pub b: ChartPoint,
    pub c: ChartPoint,
    pub d: ChartPoint,
    pub e: ChartPoint,
    pub f: ChartPoint,
    pub g: ChartPoint,
    pub h: ChartPoint,
    pub half_diagonal: f64,
    /// `|AC|, |CB|, |BD|, |DA|`.
    pub sides: [f64; 4],
    /// `|AB|, |CD|`.
    pub diagonals: [f64; 2],
    /// Ratios at `A`, `C`, `B`, `D`.
    pub corner_ratios: [f64; 4],
    /// Largest `|ratio − 1/2|` over the corners.
    pub max_deviation: f64,
}

impl SquareReport {
    /// Longest minus shortest side.
    pub fn side_spread(&self) -> f64 {
        let max = self.sides.iter().copied().fold(f64::MIN, f64::max);
        let min = self.sides.iter().copied().fold(f64::MAX, f64::min);
        max - min
    }
}

fn leg(engine: &GeodesicEngine, p: ChartPoint, q: ChartPoint) -> Result<ShootingResult> {
    let r = engine.shoot(p, q)?;
    if !r.converged {
        return Err(GeometryError::NotConverged {
            residual: r.residual,
            iterations: r.iterations,
        });
    }
    Ok(r)
}

pub fn square_construction(engine: &GeodesicEngine, center: ChartPoint, half_diagonal: f64, phi: f64) -> Result<SquareReport> {
    let surface = engine.surface();
    surface.check_regular(center)?;
    if !(half_diagonal > 0.0) || 2.0 * half_diagonal > surface.injectivity_bound(center) {
        return Err(GeometryError::ProbeMisconfigured(format!(
            "half diagonal {half_diagonal} must be positive and at most half the injectivity bound"
        )));
    }
    let o = surface.reduce(center);
    let (e1, e2) = surface.orthonormal_frame(o, phi)?;
    let a = engine.exp_map(o, &e1, half_diagonal)?;
    let b = engine.exp_map(o, &e1.neg(), half_diagonal)?;
    let c = engine.exp_map(o, &e2, half_diagonal)?;
    let d = engine.exp_map(o, &e2.neg(), half_diagonal)?;

    let ac = leg(engine, a, c)?;
    let cb = leg(engine, c, b)?;
    let bd = leg(engine, b, d)?;
    let da = leg(engine, d, a)?;
    let mid = |p: ChartPoint, s: &ShootingResult| engine.exp_map(p, &s.launch, 0.5 * s.distance);
    let (e, f, g, h) = (mid(a, &ac)?, mid(c, &cb)?, mid(b, &bd)?, mid(d, &da)?);

    let ab = leg(engine, a, b)?.distance;
    let cd = leg(engine, c, d)?.distance;

    // each corner looks along its two sides
    let ca = leg(engine, c, a)?;
    let bc = leg(engine, b, c)?;
    let db = leg(engine, d, b)?;
    let ad = leg(engine, a, d)?;
    let corner = |p: ChartPoint, s1: &ShootingResult, s2: &ShootingResult| -> Result<f64> {
        let r = s1.distance.min(s2.distance);
        let s = angle_distance_ratio(engine, p, &s1.launch, &s2.launch, r);
        if s.converged {
            Ok(s.ratio)
        } else {
            Err(GeometryError::NotConverged {
                residual: f64::NAN,
                iterations: 0,
            })
        }
    };
    let corner_ratios = [
        corner(a, &ac, &ad)?,
        corner(c, &ca, &cb)?,
        corner(b, &bc, &bd)?,
        corner(d, &db, &da)?,
    ];
    let max_deviation = corner_ratios.iter().map(|q| (q - 0.5).abs()).fold(0.0, f64::max);
    Ok(SquareReport {
        o,
        a,
        b,
        c,
        d,
        e,
        f,
        g,
        h,
        half_diagonal,
        sides: [ac.distance, cb.distance, bd.distance, da.distance],
        diagonals: [ab, cd],
        corner_ratios,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn plane_square() {
        let eng = GeodesicEngine::new(Surface::plane());
        let sq = square_construction(&eng, ChartPoint::new(0.0, 0.0), 1.0, 0.0).unwrap();
        for s in sq.sides {
            assert!((s - SQRT_2).abs() < 1e-9, "{s}");
        }
        for dg in sq.diagonals {
            assert!((dg - 2.0).abs() < 1e-9);
        }
        for q in sq.corner_ratios {
            assert!((q - 0.5).abs() < 1e-9);
        }
        assert!((sq.e.u - 0.5).abs() < 1e-9 && (sq.e.v - 0.5).abs() < 1e-9, "{:?}", sq.e);
        assert!((sq.g.u + 0.5).abs() < 1e-9 && (sq.g.v + 0.5).abs() < 1e-9);
    }

    #[test]
    fn sphere_square_bulges() {
        let eng = GeodesicEngine::new(Surface::sphere(1.0).unwrap());
        let sq = square_construction(&eng, ChartPoint::new(PI / 2.0, 0.0), 0.3, 0.0).unwrap();
        // side from the right spherical triangle with legs 0.3: arccos(cos² 0.3)
        for s in sq.sides {
            assert!((s - 0.421_031_603_412_696_9).abs() < 1e-8, "{s}");
        }
        assert!(sq.side_spread() < 1e-6);
        // corners are wider than a right angle, so the ratio measured at the side length exceeds 1/2
        for q in sq.corner_ratios {
            assert!((q - 0.507_706_960_428_940_4).abs() < 1e-7, "{q}");
        }
    }

    #[test]
    fn torus_outer_square_mirror_pairs() {
        let eng = GeodesicEngine::new(Surface::torus(2.5, 0.5).unwrap());
        let sq = square_construction(&eng, ChartPoint::new(0.0, 0.0), 0.2, 0.0).unwrap();
        let [ac, cb, bd, da] = sq.sides;
        assert!((ac - da).abs() < 1e-8 && (cb - bd).abs() < 1e-8);
        assert!(sq.corner_ratios.iter().all(|q| (0.0..=1.0).contains(q)));
    }
}
