//! Point-line duality and the dual line arrangement.
//!
//! A point `(a, b)` maps to the line `y = ax + b` and back. The map sends a
//! point on a line to a line through the corresponding point only after the
//! reflection `u -> -u` on the dual side, so the search code converts dual
//! points to primal lines with [`primal_line_of`], which does preserve
//! incidences and (reversed) above/below order.

mod arrangement;
mod level;
mod zone;

pub use arrangement::{build_arrangement, Arrangement, FaceId, HalfEdge, HalfEdgeId, Vertex, VertexId};
pub use level::{
    pole_flags, projective_levels_stat, signed_middle_level_walk, walk_levels, LevelCursor, LevelPosition,
    LevelStats, Pole,
};
pub use zone::{zone_cells, zone_hints, zone_walk, ZoneStep};

use crate::error::{Error, Result};
use crate::geom::{OrientedLine, Point, Side};
use crate::scalar::{self, Scalar};

/// Dual line `y = slope * x + intercept` of an input point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLine {
    pub slope: Scalar,
    pub intercept: Scalar,
    /// `(set index, point index within the set)`.
    pub origin_label: (usize, usize),
    /// Side of the current pole, set by [`DualLine::orient_to`].
    pub flag: Side,
}

impl DualLine {
    pub fn new(slope: Scalar, intercept: Scalar, origin_label: (usize, usize)) -> Self {
        DualLine {
            slope,
            intercept,
            origin_label,
            flag: Side::Zero,
        }
    }

    /// Positive above the line, negative below.
    pub fn side_of(&self, p: &Point) -> Side {
        Side::from_ordering(scalar::sign(&(&p.y - &self.slope * &p.x - &self.intercept)))
    }

    pub fn eval_at(&self, x: &Scalar) -> Scalar {
        &self.slope * x + &self.intercept
    }

    pub fn orient_to(&mut self, pole: &Point) {
        self.flag = self.side_of(pole);
    }

    pub fn as_oriented_line(&self) -> OrientedLine {
        // y - m x - k >= 0 above
        OrientedLine {
            a: -self.slope.clone(),
            b: scalar::int(1),
            c: -self.intercept.clone(),
        }
    }
}

pub fn dualize_point(p: &Point) -> DualLine {
    DualLine::new(p.x.clone(), p.y.clone(), (0, 0))
}

/// Inverse of [`dualize_point`]: `y = ax + b` maps to `(a, b)`.
pub fn dualize_line(line: &OrientedLine) -> Result<Point> {
    if line.is_at_infinity() || line.is_vertical() {
        return Err(Error::VerticalLineNotDualizable(line.to_string()));
    }
    // ax + by + c = 0  <=>  y = (-a/b) x + (-c/b)
    Ok(Point::new(-(&line.a / &line.b), -(&line.c / &line.b)))
}

/// Primal line of a dual-plane point `(u, v)`: `y = -u x + v`, oriented with
/// the positive side below. An input point lies on it exactly when its dual
/// line passes through `(u, v)`.
pub fn primal_line_of(dual: &Point) -> OrientedLine {
    OrientedLine {
        a: -dual.x.clone(),
        b: scalar::int(-1),
        c: dual.y.clone(),
    }
}

/// Dual-plane point of a non-vertical primal line; inverse of [`primal_line_of`].
pub fn dual_point_of(line: &OrientedLine) -> Result<Point> {
    let p = dualize_line(line)?;
    Ok(Point::new(-p.x, p.y))
}
