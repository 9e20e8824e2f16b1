//! Signed level walks.
//!
//! Every dual line is flagged with the side of a pole. For a point of the
//! plane, a line counts as "above" when the point is on the pole's side of it,
//! "below" when it is on the other side and "on" when the point lies on it or
//! the line passes through the pole. Along any ray leaving the pole the
//! above-count never increases, so each level set is star-shaped around the
//! pole; that is what lets a single box tour plus one ray find every
//! component of a level.

use std::ops::{ControlFlow, RangeInclusive};

use super::arrangement::{Arrangement, FaceId, HalfEdgeId, VertexId};
use crate::geom::{Point, Side};

/// Position of the signed orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pole {
    /// An arbitrary point; lines through it are excluded from the counts.
    Point(Point),
    /// A vertex of the arrangement; its lines are excluded.
    Vertex(VertexId),
    /// Far above every line: the ordinary (unsigned) levels.
    VerticalInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelPosition {
    Edge(HalfEdgeId),
    Vertex(VertexId),
}

/// Per-set counts at a point of a walked level. `level` is the threshold
/// being walked: the face on one side of the position has at most `level`
/// lines above, the face on the other side more.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCursor {
    pub position: LevelPosition,
    pub level: usize,
    pub above: Vec<usize>,
    pub below: Vec<usize>,
    pub on: Vec<usize>,
}

impl LevelCursor {
    pub fn total_above(&self) -> usize {
        self.above.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub total: usize,
    /// `(cell, number of middle-level edges with the pole in that cell)`.
    pub per_cell: Vec<(FaceId, usize)>,
}

impl LevelStats {
    pub fn max(&self) -> usize {
        self.per_cell.iter().map(|c| c.1).max().unwrap_or(0)
    }
}

/// Side of the pole for every distinct line of `arr`.
pub fn pole_flags(arr: &Arrangement, pole: &Pole) -> Vec<Side> {
    (0..arr.line_count())
        .map(|l| match pole {
            Pole::Point(p) => arr.side_of(l, p),
            Pole::Vertex(v) => arr.vertex_side(*v, l),
            Pole::VerticalInfinity => Side::Positive,
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Counts {
    same: Vec<usize>,
    opp: Vec<usize>,
    total_same: usize,
}

struct Walker<'a> {
    arr: &'a Arrangement,
    flags: Vec<Side>,
    /// Set index of every member of each distinct line.
    line_sets: Vec<Vec<usize>>,
    excluded: Vec<usize>,
    set_sizes: Vec<usize>,
}

enum TraceEnd<B> {
    Box,
    Closed,
    Stop(B),
}

impl<'a> Walker<'a> {
    fn new(arr: &'a Arrangement, pole: &Pole, num_sets: usize) -> Self {
        let flags = pole_flags(arr, pole);
        let line_sets: Vec<Vec<usize>> = (0..arr.line_count())
            .map(|l| arr.line_members(l).iter().map(|&m| arr.input()[m].origin_label.0).collect())
            .collect();
        let num_sets = num_sets.max(line_sets.iter().flatten().map(|s| s + 1).max().unwrap_or(0));
        let mut excluded = vec![0; num_sets];
        let mut set_sizes = vec![0; num_sets];
        for (l, sets) in line_sets.iter().enumerate() {
            for &s in sets {
                set_sizes[s] += 1;
                if flags[l] == Side::Zero {
                    excluded[s] += 1;
                }
            }
        }
        Walker {
            arr,
            flags,
            line_sets,
            excluded,
            set_sizes,
        }
    }

    fn active_total(&self) -> usize {
        self.set_sizes.iter().sum::<usize>() - self.excluded.iter().sum::<usize>()
    }

    fn corner_counts(&self) -> Counts {
        let n = self.set_sizes.len();
        let mut c = Counts {
            same: vec![0; n],
            opp: vec![0; n],
            total_same: 0,
        };
        for (l, side) in self.arr.corner_sides.iter().enumerate() {
            let flag = self.flags[l];
            if flag == Side::Zero {
                continue;
            }
            for &s in &self.line_sets[l] {
                if *side == flag {
                    c.same[s] += 1;
                    c.total_same += 1;
                } else {
                    c.opp[s] += 1;
                }
            }
        }
        c
    }

    /// Counts just off the pole on the positive side of `line`: every active
    /// line is above there.
    fn near_pole_counts(&self) -> Counts {
        let n = self.set_sizes.len();
        let same: Vec<usize> = (0..n).map(|s| self.set_sizes[s] - self.excluded[s]).collect();
        Counts {
            total_same: same.iter().sum(),
            same,
            opp: vec![0; n],
        }
    }

    /// Moves `c` from the face left of `h` to the face right of it.
    fn cross(&self, c: &mut Counts, h: HalfEdgeId) {
        let he = self.arr.half_edge(h);
        let Some(l) = he.line else { return };
        let flag = self.flags[l];
        if flag == Side::Zero {
            return;
        }
        let leaving_same = he.left_side == flag;
        for &s in &self.line_sets[l] {
            if leaving_same {
                c.same[s] -= 1;
                c.opp[s] += 1;
                c.total_same -= 1;
            } else {
                c.opp[s] -= 1;
                c.same[s] += 1;
                c.total_same += 1;
            }
        }
    }

    fn total_after(&self, c: &Counts, h: HalfEdgeId) -> usize {
        let he = self.arr.half_edge(h);
        let Some(l) = he.line else { return c.total_same };
        let flag = self.flags[l];
        if flag == Side::Zero {
            return c.total_same;
        }
        let k = self.line_sets[l].len();
        if he.left_side == flag {
            c.total_same - k
        } else {
            c.total_same + k
        }
    }

    fn base_cursor(&self, c: &Counts, position: LevelPosition, level: usize) -> LevelCursor {
        LevelCursor {
            position,
            level,
            above: c.same.clone(),
            below: c.opp.clone(),
            on: self.excluded.clone(),
        }
    }

    /// Marks the members of line `l` as on, given that the current face lies
    /// on side `side` of it.
    fn put_on(&self, cur: &mut LevelCursor, l: usize, side: Side) {
        let flag = self.flags[l];
        if flag == Side::Zero {
            return;
        }
        for &s in &self.line_sets[l] {
            if side == flag {
                cur.above[s] -= 1;
            } else {
                cur.below[s] -= 1;
            }
            cur.on[s] += 1;
        }
    }

    fn edge_cursor(&self, c: &Counts, h: HalfEdgeId, level: usize) -> LevelCursor {
        let mut cur = self.base_cursor(c, LevelPosition::Edge(h), level);
        let he = self.arr.half_edge(h);
        if let Some(l) = he.line {
            self.put_on(&mut cur, l, he.left_side);
        }
        cur
    }

    /// Cursor at the head of `h`, from the counts of the face left of `h`.
    fn vertex_cursor(&self, c: &Counts, h: HalfEdgeId, level: usize) -> LevelCursor {
        let arr = self.arr;
        let v = arr.dest(h);
        let mut cur = self.base_cursor(c, LevelPosition::Vertex(v), level);
        let lines = &arr.vertex(v).lines;
        let mut seen = vec![false; lines.len()];
        let start = arr.half_edge(h).next;
        let mut g = start;
        loop {
            let he = arr.half_edge(g);
            if let Some(l) = he.line {
                let k = lines.binary_search(&l).expect("edge line passes through its origin");
                if !seen[k] {
                    seen[k] = true;
                    self.put_on(&mut cur, l, he.left_side);
                }
            }
            g = arr.half_edge(he.twin).next;
            if g == start {
                break;
            }
        }
        cur
    }

    /// Follows the boundary of `{above <= t}` starting with edge `start`,
    /// whose left face has counts `c`.
    fn trace<B, F>(&self, start: HalfEdgeId, mut c: Counts, t: usize, emit: bool, visit: &mut F) -> TraceEnd<B>
    where
        F: FnMut(&LevelCursor) -> ControlFlow<B>,
    {
        let arr = self.arr;
        let mut h = start;
        loop {
            if emit {
                if let ControlFlow::Break(b) = visit(&self.edge_cursor(&c, h, t)) {
                    return TraceEnd::Stop(b);
                }
            }
            let v = arr.dest(h);
            if arr.vertex(v).on_box {
                return TraceEnd::Box;
            }
            if emit {
                if let ControlFlow::Break(b) = visit(&self.vertex_cursor(&c, h, t)) {
                    return TraceEnd::Stop(b);
                }
            }
            let mut g = arr.half_edge(h).next;
            loop {
                if self.total_after(&c, g) > t {
                    break;
                }
                self.cross(&mut c, g);
                g = arr.half_edge(arr.half_edge(g).twin).next;
            }
            h = g;
            if h == start {
                return TraceEnd::Closed;
            }
        }
    }

    fn walk_level<B, F>(&self, t: usize, ray: Option<HalfEdgeId>, visit: &mut F) -> ControlFlow<B>
    where
        F: FnMut(&LevelCursor) -> ControlFlow<B>,
    {
        let arr = self.arr;
        let tour = &arr.box_tour;
        let mut c = self.corner_counts();
        for (k, &b) in tour.iter().enumerate() {
            let v = arr.dest(b);
            if arr.vertex(v).lines.is_empty() {
                continue;
            }
            let here = arr.half_edge(b).face;
            let e = *arr
                .vertex(v)
                .out
                .iter()
                .find(|&&g| arr.half_edge(g).line.is_some())
                .expect("box vertex carries a line");
            let crossing = if arr.half_edge(e).face == here { e } else { arr.half_edge(e).twin };
            let before = c.clone();
            self.cross(&mut c, crossing);
            debug_assert_eq!(arr.half_edge(tour[(k + 1) % tour.len()]).face, arr.half_edge(arr.half_edge(crossing).twin).face);
            let (lo, hi) = (before.total_same.min(c.total_same), before.total_same.max(c.total_same));
            if lo <= t && t < hi {
                let low = if before.total_same <= t { &before } else { &c };
                let low_face = if before.total_same <= t { here } else { arr.half_edge(arr.half_edge(crossing).twin).face };
                if arr.half_edge(e).face == low_face {
                    if let TraceEnd::Stop(b) = self.trace(e, low.clone(), t, true, visit) {
                        return ControlFlow::Break(b);
                    }
                }
            }
        }
        if let Some(first) = ray {
            if let Some((h, counts)) = self.closed_start(first, t) {
                if matches!(self.trace::<B, F>(h, counts.clone(), t, false, visit), TraceEnd::Closed) {
                    if let TraceEnd::Stop(b) = self.trace(h, counts, t, true, visit) {
                        return ControlFlow::Break(b);
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Walks the faces just above the forward edges of a line through the
    /// pole, starting with `first`, and returns the first level-`t` edge met
    /// (oriented with the low face on its left) together with those counts.
    fn closed_start(&self, first: HalfEdgeId, t: usize) -> Option<(HalfEdgeId, Counts)> {
        let arr = self.arr;
        let l = arr.half_edge(first).line?;
        let edges = &arr.line_edges[l];
        let pos = edges.iter().position(|&e| e == first)?;
        let mut c = self.near_pole_counts();
        if c.total_same <= t {
            return None;
        }
        for j in pos..edges.len() - 1 {
            let target = edges[j + 1];
            let mut g = arr.half_edge(edges[j]).next;
            while g != target {
                let after = self.total_after(&c, g);
                if c.total_same > t && after <= t {
                    let mut low = c.clone();
                    self.cross(&mut low, g);
                    return Some((arr.half_edge(g).twin, low));
                }
                self.cross(&mut c, g);
                g = arr.half_edge(arr.half_edge(g).twin).next;
            }
        }
        None
    }

    /// Forward half-edge of a line through the pole that starts at or
    /// contains the pole.
    fn ray_edge(&self, pole: &Pole) -> Option<HalfEdgeId> {
        let arr = self.arr;
        match pole {
            Pole::Vertex(v) => {
                let l = arr.vertex(*v).lines[0];
                let r = arr.line_vertices[l].iter().position(|w| w == v)?;
                Some(arr.line_edges[l][r + 1])
            }
            Pole::Point(p) => {
                let l = (0..arr.line_count()).find(|&l| self.flags[l] == Side::Zero)?;
                let verts = &arr.line_vertices[l];
                let mut r = verts.partition_point(|&w| arr.vertex(w).point.x < p.x);
                if r < verts.len() && arr.vertex(verts[r]).point.x == p.x {
                    r += 1;
                }
                Some(arr.line_edges[l][r])
            }
            Pole::VerticalInfinity => None,
        }
    }
}

/// Walks every level `t` in `levels` (thresholds on the signed above-count),
/// reporting each edge and vertex of the boundary between the faces with at
/// most `t` lines above and those with more.
pub fn walk_levels<B, F>(
    arr: &Arrangement,
    pole: &Pole,
    num_sets: usize,
    levels: RangeInclusive<usize>,
    mut visit: F,
) -> ControlFlow<B>
where
    F: FnMut(&LevelCursor) -> ControlFlow<B>,
{
    let walker = Walker::new(arr, pole, num_sets);
    let active = walker.active_total();
    if active == 0 {
        return ControlFlow::Continue(());
    }
    let ray = walker.ray_edge(pole);
    let hi = (*levels.end()).min(active - 1);
    for t in *levels.start()..=hi {
        walker.walk_level(t, ray, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// The signed middle level: the boundary where ⌊N/2⌋ lines are above.
pub fn signed_middle_level_walk(arr: &Arrangement, pole: &Pole, set_sizes: &[usize]) -> impl Iterator<Item = LevelCursor> {
    let mut out = Vec::new();
    let n: usize = arr.input().len();
    let _ = walk_levels::<(), _>(arr, pole, set_sizes.len(), n / 2..=n / 2, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    });
    out.into_iter()
}

fn middle_level_edges(arr: &Arrangement, pole: &Pole) -> usize {
    let n = arr.input().len();
    let mut edges = 0;
    let _ = walk_levels::<(), _>(arr, pole, 1, n / 2..=n / 2, |c| {
        if matches!(c.position, LevelPosition::Edge(_)) {
            edges += 1;
        }
        ControlFlow::Continue(())
    });
    edges
}

/// Size of the signed middle level for a pole in every cell.
pub fn projective_levels_stat(arr: &Arrangement) -> LevelStats {
    let cells = arr.cells_with_representatives();
    let count = |(f, rep): &(FaceId, Point)| (*f, middle_level_edges(arr, &Pole::Point(rep.clone())));
    #[cfg(feature = "parallel")]
    let per_cell: Vec<(FaceId, usize)> = {
        use rayon::prelude::*;
        cells.par_iter().map(count).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_cell: Vec<(FaceId, usize)> = cells.iter().map(count).collect();
    LevelStats {
        total: per_cell.iter().map(|c| c.1).sum(),
        per_cell,
    }
}
