//! Pole-and-level search over the dual arrangement.
//!
//! The first line is the primal line of a pole in the dual plane, the second
//! that of a point on a signed level of the pole. A point lies in the Even
//! region exactly when the pole and the level position are on the same side
//! of its dual line, so the per-set above/below counts of a level cursor are
//! the Even/Odd counts of the pair.
//!
//! Moving either dual point onto a line only turns a point into a boundary
//! point, so a solution survives being pushed to a vertex of its cell. Poles
//! are therefore taken at arrangement vertices (or, for constrained poles, at
//! crossings of the constraint line), and level positions at edges and
//! vertices of a narrow band of levels around the middle.
//!
//! Each search runs in up to four sheared coordinate frames so that vertical
//! lines and vertex-free arrangements are covered as well.

use std::ops::ControlFlow;

use num::Zero;

use super::{verify, PointSetFamily};
use crate::dual::{
    dualize_point, primal_line_of, walk_levels, zone_hints, zone_walk, Arrangement, DualLine, LevelCursor,
    LevelPosition, Pole,
};
use crate::error::{Error, Result};
use crate::geom::{shear_point, LinePair, OrientedLine, Point, Side};
use crate::scalar::{self, Scalar};

const SHEARS: [i64; 4] = [0, 1, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Evaluate poles on the rayon pool. Ignored without the `parallel` feature.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            parallel: cfg!(feature = "parallel"),
        }
    }
}

#[derive(Clone, Debug)]
enum PoleConstraint {
    Free,
    /// The first line must be parallel to this one.
    Parallel(OrientedLine),
    /// The first line must pass through this point.
    Through(Point),
}

pub fn bisect_four(family: &PointSetFamily) -> Result<LinePair> {
    bisect_four_with(family, &SearchOptions::default())
}

pub fn bisect_four_with(family: &PointSetFamily, opts: &SearchOptions) -> Result<LinePair> {
    family.expect_sets(4)?;
    search(family, &PoleConstraint::Free, opts)
}

/// Unconstrained search for any number of sets. Solutions are guaranteed for
/// at most four sets.
pub fn bisect_sets(family: &PointSetFamily, opts: &SearchOptions) -> Result<LinePair> {
    search(family, &PoleConstraint::Free, opts)
}

/// Three sets, first line parallel to `line`. A line at infinity is parallel
/// to everything and leaves the first line free.
pub fn bisect_three_parallel(family: &PointSetFamily, line: &OrientedLine) -> Result<LinePair> {
    bisect_three_parallel_with(family, line, &SearchOptions::default())
}

pub fn bisect_three_parallel_with(family: &PointSetFamily, line: &OrientedLine, opts: &SearchOptions) -> Result<LinePair> {
    family.expect_sets(3)?;
    if line.is_at_infinity() {
        return search(family, &PoleConstraint::Free, opts);
    }
    search(family, &PoleConstraint::Parallel(line.clone()), opts)
}

/// Three sets, first line through `q`.
pub fn bisect_three_through(family: &PointSetFamily, q: &Point) -> Result<LinePair> {
    bisect_three_through_with(family, q, &SearchOptions::default())
}

pub fn bisect_three_through_with(family: &PointSetFamily, q: &Point, opts: &SearchOptions) -> Result<LinePair> {
    family.expect_sets(3)?;
    search(family, &PoleConstraint::Through(q.clone()), opts)
}

fn search(family: &PointSetFamily, constraint: &PoleConstraint, opts: &SearchOptions) -> Result<LinePair> {
    for s in SHEARS {
        if let Some(pair) = search_frame(family, constraint, &scalar::int(s), opts)? {
            return Ok(pair);
        }
    }
    Err(Error::NoSolutionFound)
}

struct Frame<'a> {
    family: &'a PointSetFamily,
    arr: Arrangement,
    shear: Scalar,
    halves: Vec<usize>,
    slack: usize,
}

fn search_frame(
    family: &PointSetFamily,
    constraint: &PoleConstraint,
    shear: &Scalar,
    opts: &SearchOptions,
) -> Result<Option<LinePair>> {
    let mut index_in_set = vec![0usize; family.num_sets()];
    let lines: Vec<DualLine> = family
        .labelled_points()
        .map(|(set, p)| {
            let q = shear_point(p, shear);
            let label = (set, index_in_set[set]);
            index_in_set[set] += 1;
            DualLine::new(q.x, q.y, label)
        })
        .collect();

    // dual line that must carry the pole
    let pole_line = match constraint {
        PoleConstraint::Free => None,
        PoleConstraint::Parallel(l) => {
            let f = l.to_shear_frame(shear);
            if f.b.is_zero() {
                return Ok(None);
            }
            // primal line of (u, v) has normal (-u, -1), parallel to (a, b) iff u = a / b
            Some(OrientedLine {
                a: scalar::int(1),
                b: Scalar::zero(),
                c: -(&f.a / &f.b),
            })
        }
        PoleConstraint::Through(q) => Some(dualize_point(&shear_point(q, shear)).as_oriented_line()),
    };
    let hints = pole_line.as_ref().map(|z| zone_hints(&lines, z)).unwrap_or_default();
    let arr = Arrangement::build(&lines, &hints)?;
    let poles = candidate_poles(&arr, pole_line.as_ref())?;

    let max_through = arr
        .real_vertices()
        .map(|v| arr.vertex(v).lines.iter().map(|&l| arr.line_members(l).len()).sum::<usize>())
        .max()
        .unwrap_or(1);
    let frame = Frame {
        family,
        halves: family.sets().iter().map(|s| s.points.len() / 2).collect(),
        slack: max_through.div_ceil(2) + 1,
        arr,
        shear: shear.clone(),
    };
    let check = |pole: &Pole| frame.solve_pole(pole);
    #[cfg(feature = "parallel")]
    if opts.parallel {
        use rayon::prelude::*;
        return Ok(poles.par_iter().find_map_first(check));
    }
    let _ = opts;
    Ok(poles.iter().find_map(check))
}

/// Poles to try: every vertex for a free pole, else the crossings of the
/// constraint line with the arrangement.
fn candidate_poles(arr: &Arrangement, pole_line: Option<&OrientedLine>) -> Result<Vec<Pole>> {
    let Some(z) = pole_line else {
        if arr.num_vertices() > 0 {
            return Ok(arr.real_vertices().map(Pole::Vertex).collect());
        }
        let mut poles: Vec<Pole> = (0..arr.line_count())
            .map(|l| {
                let d = &arr.input()[arr.line_members(l)[0]];
                Pole::Point(Point::new(Scalar::zero(), d.intercept.clone()))
            })
            .collect();
        poles.extend(arr.cells_with_representatives().into_iter().map(|(_, p)| Pole::Point(p)));
        return Ok(poles);
    };
    // the constraint line may itself be an arrangement line
    if let Some(l) = (0..arr.line_count()).find(|&l| {
        let d = &arr.input()[arr.line_members(l)[0]];
        d.as_oriented_line().same_unoriented(z)
    }) {
        let verts = &arr.line_vertices[l];
        if verts.is_empty() {
            let d = &arr.input()[arr.line_members(l)[0]];
            return Ok(vec![Pole::Point(Point::new(Scalar::zero(), d.intercept.clone()))]);
        }
        return Ok(verts.iter().map(|&v| Pole::Vertex(v)).collect());
    }
    let steps = zone_walk(arr, z)?;
    if steps.len() == 1 {
        return Ok(vec![Pole::Point(steps[0].enter.midpoint(&steps[0].exit))]);
    }
    Ok(steps[..steps.len() - 1].iter().map(|s| Pole::Point(s.exit.clone())).collect())
}

impl Frame<'_> {
    fn pole_point(&self, pole: &Pole) -> Point {
        match pole {
            Pole::Point(p) => p.clone(),
            Pole::Vertex(v) => self.arr.vertex(*v).point.clone(),
            Pole::VerticalInfinity => unreachable!("search poles are finite"),
        }
    }

    fn to_primal(&self, dual: &Point) -> OrientedLine {
        primal_line_of(dual).from_shear_frame(&self.shear)
    }

    fn position_point(&self, cursor: &LevelCursor) -> Point {
        match cursor.position {
            LevelPosition::Edge(h) => self.arr.edge_midpoint(h),
            LevelPosition::Vertex(v) => self.arr.vertex(v).point.clone(),
        }
    }

    fn balanced(&self, c: &LevelCursor) -> bool {
        (0..self.halves.len()).all(|i| c.above[i] <= self.halves[i] && c.below[i] <= self.halves[i])
    }

    fn solve_pole(&self, pole: &Pole) -> Option<LinePair> {
        let arr = &self.arr;
        let first = self.to_primal(&self.pole_point(pole));
        let flags = crate::dual::pole_flags(arr, pole);
        let active: usize = (0..arr.line_count())
            .filter(|&l| flags[l] != Side::Zero)
            .map(|l| arr.line_members(l).len())
            .sum();
        if active == 0 {
            // every point is on the first line
            let pair = LinePair::new(first.clone(), first);
            return verify(self.family, &pair).verdict.then_some(pair);
        }
        let h: usize = self.halves.iter().sum();
        let a = active as i64 - h as i64 - 1;
        let b = h as i64;
        let lo = (a.min(b) - self.slack as i64).max(0) as usize;
        let hi = ((a.max(b) + self.slack as i64).max(0) as usize).min(active - 1);
        let outcome = walk_levels(arr, pole, self.halves.len(), lo..=hi, |c| {
            if !self.balanced(c) {
                return ControlFlow::Continue(());
            }
            let pair = LinePair::new(first.clone(), self.to_primal(&self.position_point(c)));
            if verify(self.family, &pair).verdict {
                ControlFlow::Break(pair)
            } else {
                ControlFlow::Continue(())
            }
        });
        match outcome {
            ControlFlow::Break(pair) => Some(pair),
            ControlFlow::Continue(()) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisect::verify;

    fn family(sets: &[&[(i64, i64)]]) -> PointSetFamily {
        PointSetFamily::from_points(
            sets.iter()
                .map(|s| s.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn mirror(k: i64) -> PointSetFamily {
        PointSetFamily::from_points((1..=k).map(|x| vec![Point::from_ints(x, 1), Point::from_ints(-x, 1)]).collect())
            .unwrap()
    }

    #[test]
    fn mirror_family() {
        let fam = mirror(4);
        let pair = bisect_four(&fam).unwrap();
        assert!(verify(&fam, &pair).verdict);
    }

    #[test]
    fn singletons() {
        let fam = family(&[&[(0, 0)], &[(1, 0)], &[(0, 1)], &[(1, 1)]]);
        let pair = bisect_four(&fam).unwrap();
        let r = verify(&fam, &pair);
        assert!(r.verdict);
        assert!(r.counts.iter().all(|c| c.boundary == 1));
    }

    #[test]
    fn vertical_column_of_points() {
        let fam = family(&[&[(0, 0), (0, 1)], &[(0, 2), (0, 3)], &[(0, 4)], &[(0, 5), (0, 6), (0, 7)]]);
        assert!(verify(&fam, &bisect_four(&fam).unwrap()).verdict);
    }

    #[test]
    fn wrong_set_count() {
        let fam = mirror(3);
        assert!(matches!(bisect_four(&fam), Err(Error::WrongSetCount { expected: 4, got: 3 })));
    }

    #[test]
    fn parallel_to_x_axis() {
        let fam = mirror(3);
        let l = OrientedLine::from_ints(0, 1, 0);
        let pair = bisect_three_parallel(&fam, &l).unwrap();
        assert!(verify(&fam, &pair).verdict);
        assert!(pair.first.is_parallel_to(&l));
    }

    #[test]
    fn parallel_to_vertical_and_infinity() {
        let fam = family(&[&[(0, 0), (3, 1), (5, 5)], &[(1, 4), (2, -2)], &[(-3, 1), (7, 2), (4, 4), (6, -1)]]);
        for l in [OrientedLine::from_ints(1, 0, -2), OrientedLine::at_infinity(), OrientedLine::from_ints(3, -7, 1)] {
            let pair = bisect_three_parallel(&fam, &l).unwrap();
            assert!(verify(&fam, &pair).verdict);
            assert!(pair.first.is_parallel_to(&l) || l.is_at_infinity());
        }
    }

    #[test]
    fn through_points() {
        let fam = mirror(3);
        for q in [Point::from_ints(0, 0), Point::from_ints(100, -50), Point::from_ints(1, 1)] {
            let pair = bisect_three_through(&fam, &q).unwrap();
            assert!(verify(&fam, &pair).verdict);
            assert!(pair.first.contains(&q));
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let fam = family(&[&[(0, 0), (3, 1), (5, 5)], &[(1, 4), (2, -2)], &[(-3, 1), (7, 2)], &[(4, 4), (6, -1), (9, 9)]]);
        let a = bisect_four_with(&fam, &SearchOptions { parallel: false }).unwrap();
        let b = bisect_four_with(&fam, &SearchOptions { parallel: true }).unwrap();
        assert_eq!(a, b);
    }
}
