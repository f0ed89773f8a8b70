use std::f64::consts::PI;

use proptest::prelude::*;

use right_ratio::geodesic::GeodesicEngine;
use right_ratio::probe::{planar_circle_intersections, round_intersection_check, RoundRelation};
use right_ratio::ratio::{angle_distance_ratio, right_ratio};
use right_ratio::{ChartPoint, Surface, TangentVector};

fn torus() -> Surface {
    Surface::torus(2.5, 0.5).unwrap()
}

fn surface_and_point() -> impl Strategy<Value = (Surface, ChartPoint)> {
    prop_oneof![
        (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(u, v)| (Surface::plane(), ChartPoint::new(u, v))),
        (0.5..2.6f64, -PI..PI).prop_map(|(u, v)| (Surface::sphere(1.0).unwrap(), ChartPoint::new(u, v))),
        (-PI..PI, -PI..PI).prop_map(|(u, v)| (torus(), ChartPoint::new(u, v))),
        (1.0..3.0f64, -PI..PI).prop_map(|(u, v)| (Surface::cone(0.6).unwrap(), ChartPoint::new(u, v))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_then_distance_returns_the_radius((s, p) in surface_and_point(), psi in -PI..PI, frac in 0.05..0.45f64) {
        let eng = GeodesicEngine::new(s);
        let r = frac * s.injectivity_bound(p).min(2.0);
        let q = eng.exp_map(p, &s.direction(p, psi).unwrap(), r).unwrap();
        let d = eng.shoot(p, q).unwrap();
        prop_assert!(d.converged);
        prop_assert!((d.distance - r).abs() <= 1e-7 * (1.0 + r), "{} vs {}", d.distance, r);
    }

    #[test]
    fn distance_is_symmetric((s, p) in surface_and_point(), a in -PI..PI, b in -PI..PI, f1 in 0.05..0.4f64, f2 in 0.05..0.4f64) {
        let eng = GeodesicEngine::new(s);
        let scale = s.injectivity_bound(p).min(2.0);
        let x = eng.exp_map(p, &s.direction(p, a).unwrap(), f1 * scale).unwrap();
        let y = eng.exp_map(p, &s.direction(p, b).unwrap(), f2 * scale).unwrap();
        let (xy, yx) = (eng.shoot(x, y).unwrap(), eng.shoot(y, x).unwrap());
        prop_assert!(xy.converged && yx.converged);
        prop_assert!((xy.distance - yx.distance).abs() <= 1e-8 * (1.0 + xy.distance));
    }

    #[test]
    fn sphere_pipeline_matches_closed_form(x in 0.05..1.0f64, radius in 0.5..3.0f64, u in 0.6..2.5f64, phi in -PI..PI) {
        let eng = GeodesicEngine::new(Surface::sphere(radius).unwrap());
        let r = x * radius;
        let s = right_ratio(&eng, ChartPoint::new(u, 0.2), phi, r);
        let chord = (x.cos().powi(2)).acos() * radius;
        let expect = chord * chord / (4.0 * r * r);
        prop_assert!(s.converged);
        prop_assert!(((s.ratio - expect) / expect).abs() <= 1e-5);
    }

    #[test]
    fn isotropic_surfaces_ignore_the_frame(sphere in any::<bool>(), phi1 in -PI..PI, phi2 in -PI..PI, r in 0.05..1.2f64) {
        let (s, p) = if sphere {
            (Surface::sphere(1.0).unwrap(), ChartPoint::new(1.2, -0.7))
        } else {
            (Surface::plane(), ChartPoint::new(0.3, 2.0))
        };
        let eng = GeodesicEngine::new(s);
        let a = right_ratio(&eng, p, phi1, r);
        let b = right_ratio(&eng, p, phi2, r);
        prop_assert!(a.converged && b.converged);
        prop_assert!((a.ratio - b.ratio).abs() <= 1e-7);
    }

    #[test]
    fn small_radius_sign_follows_curvature(which in 0usize..4, frac in 0.02..0.1f64, phi in -PI..PI, v in -PI..PI) {
        let (s, p) = match which {
            0 => (Surface::sphere(1.0).unwrap(), ChartPoint::new(PI / 2.0, v)),
            1 => (Surface::sphere(2.0).unwrap(), ChartPoint::new(1.0, v)),
            2 => (torus(), ChartPoint::new(0.0, v)),
            _ => (torus(), ChartPoint::new(PI, v)),
        };
        let k = s.gaussian_curvature(p).unwrap();
        let r = frac / k.abs().sqrt();
        let q = right_ratio(&GeodesicEngine::new(s), p, phi, r);
        prop_assert!(q.converged);
        prop_assert_eq!((0.5 - q.ratio).signum(), k.signum());
    }

    #[test]
    fn ratios_lie_in_the_unit_interval((s, p) in surface_and_point(), a in -PI..PI, b in -PI..PI, frac in 0.05..0.45f64) {
        let eng = GeodesicEngine::new(s);
        let r = frac * s.injectivity_bound(p).min(2.0);
        let q = angle_distance_ratio(&eng, p, &s.direction(p, a).unwrap(), &s.direction(p, b).unwrap(), r);
        prop_assert!(q.converged);
        prop_assert!((0.0..=1.0).contains(&q.ratio));
        prop_assert_eq!(q.ratio, q.chord * q.chord / (4.0 * r * r));
    }

    #[test]
    fn foot_is_stable_under_small_perpendicular_moves(x in -3.0..3.0f64, h in 0.3..2.0f64, delta in -1e-3..1e-3f64) {
        let eng = GeodesicEngine::new(Surface::plane());
        let o = ChartPoint::new(0.0, 0.0);
        let line = eng.line_through(o, &TangentVector::new(o, 1.0, 0.0), 6.0).unwrap();
        let f0 = eng.foot_of_perpendicular(ChartPoint::new(x, h), &line).unwrap();
        let f1 = eng.foot_of_perpendicular(ChartPoint::new(x, h + delta), &line).unwrap();
        prop_assert!((f0.point.u - f1.point.u).hypot(f0.point.v - f1.point.v) <= 1e-6);
        prop_assert!((f0.point.u - x).abs() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn every_triple_gets_one_consistent_label(a in 0u32..400, b in 0u32..400, c in 0u32..400) {
        let (ra, rb, d) = (a as f64 / 8.0, b as f64 / 8.0, c as f64 / 8.0);
        let label = round_intersection_check(ra, rb, d);
        let (sum, diff) = (ra + rb, (ra - rb).abs());
        let expected = if d == 0.0 && diff == 0.0 {
            RoundRelation::Degenerate
        } else if d > sum {
            RoundRelation::ExclusivelyOutside
        } else if d == sum {
            RoundRelation::InclusivelyOutside
        } else if d > diff {
            RoundRelation::Intersecting
        } else if d == diff {
            RoundRelation::InclusivelyInside
        } else {
            RoundRelation::ExclusivelyInside
        };
        prop_assert_eq!(label, expected);
        prop_assert_eq!(label.intersection_count(), planar_circle_intersections(ra, rb, d).map(|p| p.len()));
    }

    #[test]
    fn any_nonnegative_triple_is_classified(ra in 0.0..1e6f64, rb in 0.0..1e6f64, d in 0.0..1e6f64) {
        let label = round_intersection_check(ra, rb, d);
        prop_assert!(label.intersection_count().is_some() || (d == 0.0 && ra == rb));
    }
}
