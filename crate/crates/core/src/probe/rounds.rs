//! Relative position of two rounds (circles) in the plane.

use std::fmt;

/// Position of round `B` (radius `rB`) relative to round `A` (radius `rA`)
/// with centres `dAB` apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundRelation {
    /// `rA + rB < dAB`.
    ExclusivelyOutside,
    /// `dAB = rA + rB`: touching from outside.
    InclusivelyOutside,
    /// `|rA − rB| < dAB < rA + rB`.
    Intersecting,
    /// `0 < dAB = |rA − rB|`: touching from inside.
    InclusivelyInside,
    /// `dAB < |rA − rB|`.
    ExclusivelyInside,
    /// Coincident rounds, including two points at the same place.
    Degenerate,
}

impl RoundRelation {
    /// Number of common points; `None` for coincident rounds.
    pub fn intersection_count(self) -> Option<usize> {
        match self {
            RoundRelation::ExclusivelyOutside | RoundRelation::ExclusivelyInside => Some(0),
            RoundRelation::InclusivelyOutside | RoundRelation::InclusivelyInside => Some(1),
            RoundRelation::Intersecting => Some(2),
            RoundRelation::Degenerate => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RoundRelation::ExclusivelyOutside => "exclusively-outside",
            RoundRelation::InclusivelyOutside => "inclusively-outside",
            RoundRelation::Intersecting => "intersecting",
            RoundRelation::InclusivelyInside => "inclusively-inside",
            RoundRelation::ExclusivelyInside => "exclusively-inside",
            RoundRelation::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for RoundRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classify by comparing `dAB` with the sum and difference of the radii.
///
/// Inputs must be nonnegative; panics otherwise. Comparisons are exact, so
/// tangency is only reported when the values meet exactly.
pub fn round_intersection_check(ra: f64, rb: f64, dab: f64) -> RoundRelation {
    assert!(ra >= 0.0 && rb >= 0.0 && dab >= 0.0, "radii and distance must be nonnegative");
    let sum = ra + rb;
    let diff = (ra - rb).abs();
    if dab == 0.0 && diff == 0.0 {
        RoundRelation::Degenerate
    } else if dab > sum {
        RoundRelation::ExclusivelyOutside
    } else if dab == sum {
        RoundRelation::InclusivelyOutside
    } else if dab > diff {
        RoundRelation::Intersecting
    } else if dab == diff {
        RoundRelation::InclusivelyInside
    } else {
        RoundRelation::ExclusivelyInside
    }
}

/// Common points of the circles `|x| = ra` and `|x − (dab, 0)| = rb`, found by
/// solving the two circle equations. `None` when the circles coincide.
pub fn planar_circle_intersections(ra: f64, rb: f64, dab: f64) -> Option<Vec<(f64, f64)>> {
    if dab == 0.0 {
        return if ra == rb { None } else { Some(Vec::new()) };
    }
    // subtracting the equations gives the radical line x = const
    let x = (dab * dab + ra * ra - rb * rb) / (2.0 * dab);
    let y2 = ra * ra - x * x;
    if y2 < 0.0 {
        Some(Vec::new())
    } else if y2 == 0.0 {
        Some(vec![(x, 0.0)])
    } else {
        let y = y2.sqrt();
        Some(vec![(x, -y), (x, y)])
    }
}
