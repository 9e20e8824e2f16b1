//! Walking a line through the cells it meets.

use std::cmp::Ordering;

use num::Zero;

use super::arrangement::{Arrangement, FaceId, HalfEdgeId, VertexId};
use super::DualLine;
use crate::error::{Error, Result};
use crate::geom::{OrientedLine, Point};
use crate::scalar::{self, Scalar};

/// One cell met by the zone line, with the points where the line enters and
/// leaves it (clipped to the bounding box).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneStep {
    pub face: FaceId,
    pub enter: Point,
    pub exit: Point,
}

enum Exit {
    Edge(HalfEdgeId),
    Vertex(VertexId),
}

struct Walk<'a> {
    arr: &'a Arrangement,
    line: &'a OrientedLine,
    dx: Scalar,
    dy: Scalar,
}

impl Walk<'_> {
    fn param(&self, p: &Point) -> Scalar {
        &self.dx * &p.x + &self.dy * &p.y
    }

    /// Intersection of the zone line with the segment of `h`, if any.
    fn hit(&self, h: HalfEdgeId) -> Result<Option<(Point, Exit)>> {
        let arr = self.arr;
        let a_id = arr.half_edge(h).origin;
        let b_id = arr.dest(h);
        let a = &arr.vertex(a_id).point;
        let b = &arr.vertex(b_id).point;
        let ea = self.line.eval(a);
        let eb = self.line.eval(b);
        if ea.is_zero() && eb.is_zero() {
            return Err(Error::ZoneDegenerate(format!("{} runs along an arrangement edge", self.line)));
        }
        if ea.is_zero() {
            return Ok(Some((a.clone(), Exit::Vertex(a_id))));
        }
        if eb.is_zero() {
            return Ok(Some((b.clone(), Exit::Vertex(b_id))));
        }
        if scalar::sign(&ea) == scalar::sign(&eb) {
            return Ok(None);
        }
        let t = &ea / (&ea - &eb);
        let p = Point::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t);
        Ok(Some((p, Exit::Edge(h))))
    }

    /// Face entered when leaving vertex `v` in the walking direction.
    fn wedge(&self, v: VertexId) -> Result<FaceId> {
        let arr = self.arr;
        let origin = &arr.vertex(v).point;
        let dir = (self.dx.clone(), self.dy.clone());
        let out = &arr.vertex(v).out;
        let dirs: Vec<(Scalar, Scalar)> = out
            .iter()
            .map(|&h| {
                let d = &arr.vertex(arr.dest(h)).point;
                (&d.x - &origin.x, &d.y - &origin.y)
            })
            .collect();
        let mut idx = dirs.len();
        for (i, d) in dirs.iter().enumerate() {
            match angle_cmp(d, &dir) {
                Ordering::Equal => {
                    return Err(Error::ZoneDegenerate(format!("{} runs along an arrangement edge", self.line)))
                }
                Ordering::Greater => {
                    idx = i;
                    break;
                }
                Ordering::Less => {}
            }
        }
        let prev = out[(idx + out.len() - 1) % out.len()];
        Ok(arr.half_edge(prev).face)
    }
}

fn angle_cmp(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Ordering {
    let half = |d: &(Scalar, Scalar)| {
        if d.1 > Scalar::zero() || (d.1.is_zero() && d.0 > Scalar::zero()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        scalar::sign(&cross).reverse()
    })
}

/// Points of `line` that a bounding box must contain for a zone walk along
/// it to stay inside: its crossings with every arrangement line, plus one
/// point of `line` itself.
pub fn zone_hints(lines: &[DualLine], line: &OrientedLine) -> Vec<Point> {
    let mut out = Vec::new();
    // ax + by + c = 0 against y = m x + k
    for d in lines {
        let (m, k) = (&d.slope, &d.intercept);
        let den = &line.a + &line.b * m;
        if den.is_zero() {
            continue;
        }
        let x = -(&line.c + &line.b * k) / den;
        let y = m * &x + k;
        out.push(Point::new(x, y));
    }
    if line.b.is_zero() {
        out.push(Point::new(-&line.c / &line.a, Scalar::zero()));
    } else {
        out.push(Point::new(Scalar::zero(), -&line.c / &line.b));
    }
    out
}

/// Cells met by `line`, in order along it. The walking direction is
/// `(-b, a)`. Fails when the line contains an arrangement edge or crosses an
/// arrangement line outside the bounding box.
pub fn zone_walk(arr: &Arrangement, line: &OrientedLine) -> Result<Vec<ZoneStep>> {
    if line.is_at_infinity() {
        return Err(Error::ZoneDegenerate("at infinity".into()));
    }
    let walk = Walk {
        arr,
        line,
        dx: -line.b.clone(),
        dy: line.a.clone(),
    };
    let [x0, x1, y0, y1] = arr.bounding_box();
    for l in 0..arr.line_count() {
        let g = &arr.lines[l];
        let den = &line.a + &line.b * &g.slope;
        if den.is_zero() {
            continue;
        }
        let x = -(&line.c + &line.b * &g.intercept) / den;
        let y = &g.slope * &x + &g.intercept;
        if x <= *x0 || x >= *x1 || y <= *y0 || y >= *y1 {
            return Err(Error::ZoneDegenerate(format!("{line} meets a line outside the bounding box")));
        }
    }

    // entry: the box crossing with the smallest parameter
    let mut entry: Option<(Scalar, Point, Exit)> = None;
    for &b in &arr.box_tour {
        if let Some((p, e)) = walk.hit(b)? {
            let t = walk.param(&p);
            if entry.as_ref().is_none_or(|(best, _, _)| t < *best) {
                entry = Some((t, p, e));
            }
        }
    }
    let Some((mut t, mut at, how)) = entry else {
        return Err(Error::ZoneDegenerate(format!("{line} misses the bounding box")));
    };
    let mut face = match how {
        Exit::Edge(b) => arr.half_edge(b).face,
        Exit::Vertex(v) => walk.wedge(v)?,
    };
    let mut steps = Vec::new();
    while face != arr.outer_face() {
        let mut best: Option<(Scalar, Point, Exit)> = None;
        for h in arr.face_cycle(face) {
            if let Some((p, e)) = walk.hit(h)? {
                let s = walk.param(&p);
                if s > t && best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    best = Some((s, p, e));
                }
            }
        }
        let Some((s, p, e)) = best else {
            return Err(Error::ZoneDegenerate(format!("{line} touches a cell without crossing it")));
        };
        steps.push(ZoneStep {
            face,
            enter: at,
            exit: p.clone(),
        });
        face = match e {
            Exit::Edge(h) => arr.half_edge(arr.half_edge(h).twin).face,
            Exit::Vertex(v) => walk.wedge(v)?,
        };
        t = s;
        at = p;
    }
    Ok(steps)
}

pub fn zone_cells(arr: &Arrangement, line: &OrientedLine) -> Result<Vec<FaceId>> {
    Ok(zone_walk(arr, line)?.into_iter().map(|s| s.face).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{dualize_point, Arrangement};

    fn build(pts: &[(i64, i64)], zone: &OrientedLine) -> Arrangement {
        let lines: Vec<_> = pts.iter().map(|&(a, b)| dualize_point(&Point::from_ints(a, b))).collect();
        Arrangement::build(&lines, &zone_hints(&lines, zone)).unwrap()
    }

    #[test]
    fn vertical_through_parallel_pair() {
        let v = OrientedLine::from_ints(1, 0, -2);
        let arr = build(&[(0, 1), (0, -1)], &v);
        assert_eq!(zone_cells(&arr, &v).unwrap().len(), 3);
    }

    #[test]
    fn one_line_crossed() {
        let z = OrientedLine::from_ints(1, 1, 0);
        let arr = build(&[(2, 3)], &z);
        assert_eq!(zone_cells(&arr, &z).unwrap().len(), 2);
    }

    #[test]
    fn generic_line_meets_n_plus_one_cells() {
        let z = OrientedLine::from_ints(7, -3, 2);
        let arr = build(&[(0, 0), (1, 5), (-2, 3), (3, -1), (5, 7)], &z);
        let steps = zone_walk(&arr, &z).unwrap();
        assert_eq!(steps.len(), 6);
        for s in &steps {
            assert!(z.contains(&s.enter) && z.contains(&s.exit));
        }
    }

    #[test]
    fn through_a_vertex() {
        // lines y = x and y = -x meet at the origin; the zone line y = 2x
        // passes through that vertex
        let z = OrientedLine::from_ints(2, -1, 0);
        let arr = build(&[(1, 0), (-1, 0)], &z);
        assert_eq!(zone_cells(&arr, &z).unwrap().len(), 2);
    }

    #[test]
    fn along_a_line_is_rejected() {
        let z = OrientedLine::from_ints(1, -1, 0);
        let arr = build(&[(1, 0), (-1, 0)], &z);
        assert!(zone_cells(&arr, &z).is_err());
    }
}
