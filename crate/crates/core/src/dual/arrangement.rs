//! Doubly-connected edge list of a line arrangement, clipped to a bounding box.
//!
//! The box strictly contains every vertex, every y-intercept and any extra
//! hint points, so each line crosses it in exactly two points and unbounded
//! cells become box-adjacent faces. Box edges carry no line.

use std::cmp::Ordering;
use std::collections::HashMap;

use num::{Signed, Zero};

use super::DualLine;
use crate::error::{Error, Result};
use crate::geom::{Point, Side};
use crate::scalar::{self, Scalar};

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type FaceId = usize;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub point: Point,
    /// Unique lines through the vertex; empty for box corners, one line for
    /// points where a line meets the box.
    pub lines: Vec<usize>,
    pub on_box: bool,
    /// Outgoing half-edges in counter-clockwise order.
    pub out: Vec<HalfEdgeId>,
    rank: u32,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub twin: HalfEdgeId,
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    pub face: FaceId,
    /// `None` for artificial box edges.
    pub line: Option<usize>,
    /// Side of `line` on which the face to the left lies.
    pub left_side: Side,
    out_pos: usize,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub edge: HalfEdgeId,
    pub outer: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct GeoLine {
    pub slope: Scalar,
    pub intercept: Scalar,
    /// Indices into the input list; more than one for duplicated lines.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub(crate) input: Vec<DualLine>,
    pub(crate) lines: Vec<GeoLine>,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) half_edges: Vec<HalfEdge>,
    pub(crate) faces: Vec<Face>,
    pub(crate) outer_face: FaceId,
    pub(crate) bbox: [Scalar; 4],
    /// Real vertices on each line in increasing x.
    pub(crate) line_vertices: Vec<Vec<VertexId>>,
    /// Half-edges along each line directed towards increasing x.
    pub(crate) line_edges: Vec<Vec<HalfEdgeId>>,
    cross_rank: Vec<u32>,
    slope_rank: Vec<u32>,
    /// Counter-clockwise inner box half-edges, starting at the lower-left corner.
    pub(crate) box_tour: Vec<HalfEdgeId>,
    /// Side of every line at the lower-left box corner.
    pub(crate) corner_sides: Vec<Side>,
    real_vertex_count: usize,
}

const NO_CROSS: u32 = u32::MAX;

pub fn build_arrangement(lines: &[DualLine]) -> Result<Arrangement> {
    Arrangement::build(lines, &[])
}

fn angle_cmp(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Ordering {
    let half = |d: &(Scalar, Scalar)| {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
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

impl Arrangement {
    /// Builds the arrangement; `hints` are extra points the bounding box must
    /// strictly contain.
    pub fn build(input: &[DualLine], hints: &[Point]) -> Result<Self> {
        if input.is_empty() {
            return Err(Error::EmptyFamily);
        }
        // merge identical lines
        let mut lines: Vec<GeoLine> = Vec::new();
        let mut index: HashMap<(Scalar, Scalar), usize> = HashMap::new();
        for (i, l) in input.iter().enumerate() {
            let key = (l.slope.clone(), l.intercept.clone());
            match index.get(&key) {
                Some(&j) => lines[j].members.push(i),
                None => {
                    index.insert(key, lines.len());
                    lines.push(GeoLine {
                        slope: l.slope.clone(),
                        intercept: l.intercept.clone(),
                        members: vec![i],
                    });
                }
            }
        }
        let n = lines.len();

        let mut slopes: Vec<usize> = (0..n).collect();
        slopes.sort_by(|&a, &b| lines[a].slope.cmp(&lines[b].slope));
        let mut slope_rank = vec![0u32; n];
        for (k, w) in slopes.iter().enumerate() {
            slope_rank[*w] = if k > 0 && lines[slopes[k - 1]].slope == lines[*w].slope {
                slope_rank[slopes[k - 1]]
            } else {
                k as u32
            };
        }

        // intersections
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut vertex_at: HashMap<Point, VertexId> = HashMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if lines[i].slope == lines[j].slope {
                    continue;
                }
                let x = (&lines[j].intercept - &lines[i].intercept) / (&lines[i].slope - &lines[j].slope);
                let y = &lines[i].slope * &x + &lines[i].intercept;
                let p = Point::new(x, y);
                let v = *vertex_at.entry(p.clone()).or_insert_with(|| {
                    vertices.push(Vertex {
                        point: p,
                        lines: Vec::new(),
                        on_box: false,
                        out: Vec::new(),
                        rank: 0,
                    });
                    vertices.len() - 1
                });
                for l in [i, j] {
                    if !vertices[v].lines.contains(&l) {
                        vertices[v].lines.push(l);
                    }
                }
            }
        }
        for v in vertices.iter_mut() {
            v.lines.sort_unstable();
        }
        let real_vertex_count = vertices.len();

        let mut line_vertices: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (v, vert) in vertices.iter().enumerate() {
            for &l in &vert.lines {
                line_vertices[l].push(v);
            }
        }
        let approx: Vec<f64> = vertices.iter().map(|v| scalar::to_f64(&v.point.x)).collect();
        for lv in line_vertices.iter_mut() {
            lv.sort_by(|&a, &b| {
                let (fa, fb) = (approx[a], approx[b]);
                if (fa - fb).abs() > 1e-9 * (1.0 + fa.abs().max(fb.abs())) {
                    fa.partial_cmp(&fb).expect("finite")
                } else {
                    vertices[a].point.x.cmp(&vertices[b].point.x)
                }
            });
        }
        let mut cross_rank = vec![NO_CROSS; n * n];
        for (l, lv) in line_vertices.iter().enumerate() {
            for (r, &v) in lv.iter().enumerate() {
                for &other in &vertices[v].lines {
                    if other != l {
                        cross_rank[l * n + other] = r as u32;
                    }
                }
                if vertices[v].lines[0] == l {
                    vertices[v].rank = r as u32;
                }
            }
        }

        let bbox = choose_box(&lines, &vertices[..real_vertex_count], hints);
        let [x0, x1, y0, y1] = bbox.clone();

        // line endpoints on the box
        let mut ends: Vec<(VertexId, VertexId)> = Vec::with_capacity(n);
        let mut side_points: [Vec<VertexId>; 4] = Default::default(); // bottom, right, top, left
        for (l, line) in lines.iter().enumerate() {
            let (xl, xr) = if line.slope.is_zero() {
                (x0.clone(), x1.clone())
            } else {
                let ya = (&y0 - &line.intercept) / &line.slope;
                let yb = (&y1 - &line.intercept) / &line.slope;
                let (lo, hi) = if ya < yb { (ya, yb) } else { (yb, ya) };
                (lo.max(x0.clone()), hi.min(x1.clone()))
            };
            let mut ids = [0usize; 2];
            for (k, x) in [xl, xr].into_iter().enumerate() {
                let y = &line.slope * &x + &line.intercept;
                let side = if y == y0 {
                    0
                } else if x == x1 {
                    1
                } else if y == y1 {
                    2
                } else {
                    3
                };
                vertices.push(Vertex {
                    point: Point::new(x, y),
                    lines: vec![l],
                    on_box: true,
                    out: Vec::new(),
                    rank: 0,
                });
                ids[k] = vertices.len() - 1;
                side_points[side].push(ids[k]);
            }
            ends.push((ids[0], ids[1]));
        }
        let corner = |x: &Scalar, y: &Scalar, vs: &mut Vec<Vertex>| {
            vs.push(Vertex {
                point: Point::new(x.clone(), y.clone()),
                lines: Vec::new(),
                on_box: true,
                out: Vec::new(),
                rank: 0,
            });
            vs.len() - 1
        };
        let bl = corner(&x0, &y0, &mut vertices);
        let br = corner(&x1, &y0, &mut vertices);
        let tr = corner(&x1, &y1, &mut vertices);
        let tl = corner(&x0, &y1, &mut vertices);

        let mut half_edges: Vec<HalfEdge> = Vec::new();
        let add_edge = |a: VertexId, b: VertexId, line: Option<usize>, hes: &mut Vec<HalfEdge>| {
            let id = hes.len();
            let (ls, rs) = if line.is_some() {
                (Side::Positive, Side::Negative)
            } else {
                (Side::Zero, Side::Zero)
            };
            for (o, twin, s) in [(a, id + 1, ls), (b, id, rs)] {
                hes.push(HalfEdge {
                    origin: o,
                    twin,
                    next: usize::MAX,
                    prev: usize::MAX,
                    face: usize::MAX,
                    line,
                    left_side: s,
                    out_pos: 0,
                });
            }
            id
        };

        let mut line_edges: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); n];
        for l in 0..n {
            let mut chain = vec![ends[l].0];
            chain.extend(line_vertices[l].iter().copied());
            chain.push(ends[l].1);
            for w in chain.windows(2) {
                let id = add_edge(w[0], w[1], Some(l), &mut half_edges);
                line_edges[l].push(id);
            }
        }

        // box boundary, counter-clockwise from the lower-left corner
        side_points[0].sort_by(|a, b| vertices[*a].point.x.cmp(&vertices[*b].point.x));
        side_points[1].sort_by(|a, b| vertices[*a].point.y.cmp(&vertices[*b].point.y));
        side_points[2].sort_by(|a, b| vertices[*b].point.x.cmp(&vertices[*a].point.x));
        side_points[3].sort_by(|a, b| vertices[*b].point.y.cmp(&vertices[*a].point.y));
        let mut ring = vec![bl];
        ring.extend(side_points[0].iter().copied());
        ring.push(br);
        ring.extend(side_points[1].iter().copied());
        ring.push(tr);
        ring.extend(side_points[2].iter().copied());
        ring.push(tl);
        ring.extend(side_points[3].iter().copied());
        let mut box_tour = Vec::with_capacity(ring.len());
        for k in 0..ring.len() {
            let id = add_edge(ring[k], ring[(k + 1) % ring.len()], None, &mut half_edges);
            box_tour.push(id);
        }

        // angular order at each vertex
        for (h, he) in half_edges.iter().enumerate() {
            vertices[he.origin].out.push(h);
        }
        for v in 0..real_vertex_count {
            // only line edges meet here; order by slope within four half-turn buckets
            let mut keyed: Vec<((u8, u32), HalfEdgeId)> = vertices[v]
                .out
                .iter()
                .map(|&h| {
                    let he = &half_edges[h];
                    let l = he.line.expect("line edge");
                    let forward = he.twin > h;
                    let rising = !lines[l].slope.is_negative();
                    let bucket = match (forward, rising) {
                        (true, true) => 0,
                        (false, false) => 1,
                        (false, true) => 2,
                        (true, false) => 3,
                    };
                    ((bucket, slope_rank[l]), h)
                })
                .collect();
            keyed.sort_unstable();
            vertices[v].out = keyed.into_iter().map(|(_, h)| h).collect();
            for (pos, &h) in vertices[v].out.iter().enumerate() {
                half_edges[h].out_pos = pos;
            }
        }
        for v in real_vertex_count..vertices.len() {
            let origin = vertices[v].point.clone();
            let mut keyed: Vec<((Scalar, Scalar), HalfEdgeId)> = vertices[v]
                .out
                .iter()
                .map(|&h| {
                    let dest = &vertices[half_edges[half_edges[h].twin].origin].point;
                    ((&dest.x - &origin.x, &dest.y - &origin.y), h)
                })
                .collect();
            keyed.sort_by(|a, b| angle_cmp(&a.0, &b.0));
            vertices[v].out = keyed.into_iter().map(|(_, h)| h).collect();
            for (pos, &h) in vertices[v].out.iter().enumerate() {
                half_edges[h].out_pos = pos;
            }
        }
        for h in 0..half_edges.len() {
            let twin = half_edges[h].twin;
            let v = half_edges[twin].origin;
            let out = &vertices[v].out;
            let k = out.len();
            let next = out[(half_edges[twin].out_pos + k - 1) % k];
            half_edges[h].next = next;
            half_edges[next].prev = h;
        }

        // faces
        let mut faces: Vec<Face> = Vec::new();
        let mut outer_face = usize::MAX;
        for h in 0..half_edges.len() {
            if half_edges[h].face != usize::MAX {
                continue;
            }
            let f = faces.len();
            faces.push(Face { edge: h, outer: false });
            let mut g = h;
            loop {
                half_edges[g].face = f;
                if half_edges[g].line.is_none() && box_tour.binary_search(&g).is_err() {
                    faces[f].outer = true;
                    outer_face = f;
                }
                g = half_edges[g].next;
                if g == h {
                    break;
                }
            }
        }

        let corner_pt = Point::new(x0.clone(), y0.clone());
        let corner_sides = lines
            .iter()
            .map(|l| Side::from_ordering(scalar::sign(&(&corner_pt.y - &l.slope * &corner_pt.x - &l.intercept))))
            .collect();

        Ok(Arrangement {
            input: input.to_vec(),
            lines,
            vertices,
            half_edges,
            faces,
            outer_face,
            bbox,
            line_vertices,
            line_edges,
            cross_rank,
            slope_rank,
            box_tour,
            corner_sides,
            real_vertex_count,
        })
    }

    pub fn input(&self) -> &[DualLine] {
        &self.input
    }

    /// Number of distinct lines.
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line_members(&self, line: usize) -> &[usize] {
        &self.lines[line].members
    }

    pub fn num_vertices(&self) -> usize {
        self.real_vertex_count
    }

    /// Edges of the unclipped arrangement (each unbounded edge counted once).
    pub fn num_edges(&self) -> usize {
        self.line_edges.iter().map(Vec::len).sum()
    }

    /// Cells of the arrangement, bounded and unbounded.
    pub fn num_faces(&self) -> usize {
        self.faces.len() - 1
    }

    /// `V - E + F` after adding one vertex at infinity joining all unbounded
    /// edges; equals 2 for every arrangement.
    pub fn euler_characteristic(&self) -> i64 {
        (self.num_vertices() + 1) as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn real_vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.real_vertex_count
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn dest(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[self.half_edges[h].twin].origin
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    /// Inner faces in id order.
    pub fn cells(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |f| !self.faces[*f].outer)
    }

    pub fn face_cycle(&self, f: FaceId) -> Vec<HalfEdgeId> {
        let start = self.faces[f].edge;
        let mut out = vec![start];
        let mut g = self.half_edges[start].next;
        while g != start {
            out.push(g);
            g = self.half_edges[g].next;
        }
        out
    }

    /// Does the face touch the bounding box (an unbounded cell)?
    pub fn is_unbounded(&self, f: FaceId) -> bool {
        self.face_cycle(f).iter().any(|&h| self.half_edges[h].line.is_none())
    }

    pub fn bounding_box(&self) -> &[Scalar; 4] {
        &self.bbox
    }

    /// Interior point of a cell: the mean of its (clipped) corners.
    pub fn representative(&self, f: FaceId) -> Point {
        let cycle = self.face_cycle(f);
        let mut sx = Scalar::zero();
        let mut sy = Scalar::zero();
        for &h in &cycle {
            let p = &self.vertices[self.half_edges[h].origin].point;
            sx += &p.x;
            sy += &p.y;
        }
        let k = scalar::int(cycle.len() as i64);
        Point::new(sx / &k, sy / k)
    }

    pub fn cells_with_representatives(&self) -> Vec<(FaceId, Point)> {
        self.cells().map(|f| (f, self.representative(f))).collect()
    }

    /// Midpoint of the (clipped) segment of a half-edge.
    pub fn edge_midpoint(&self, h: HalfEdgeId) -> Point {
        let a = &self.vertices[self.half_edges[h].origin].point;
        let b = &self.vertices[self.dest(h)].point;
        a.midpoint(b)
    }

    /// Exact side of a point with respect to distinct line `l`.
    pub fn side_of(&self, l: usize, p: &Point) -> Side {
        let line = &self.lines[l];
        Side::from_ordering(scalar::sign(&(&p.y - &line.slope * &p.x - &line.intercept)))
    }

    /// Side of a real vertex with respect to line `l`, from the combinatorial
    /// structure alone.
    pub fn vertex_side(&self, v: VertexId, l: usize) -> Side {
        let vert = &self.vertices[v];
        if vert.lines.binary_search(&l).is_ok() {
            return Side::Zero;
        }
        let a = vert.lines[0];
        let n = self.lines.len();
        let la = &self.lines[a];
        let ll = &self.lines[l];
        if self.slope_rank[a] == self.slope_rank[l] {
            return Side::from_ordering(la.intercept.cmp(&ll.intercept));
        }
        let w = self.cross_rank[a * n + l];
        let along = vert.rank.cmp(&w);
        let slope = self.slope_rank[a].cmp(&self.slope_rank[l]);
        let s = match (along, slope) {
            (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
            (x, y) if x == y => Ordering::Greater,
            _ => Ordering::Less,
        };
        Side::from_ordering(s)
    }
}

fn choose_box(lines: &[GeoLine], vertices: &[Vertex], hints: &[Point]) -> [Scalar; 4] {
    let zero = Scalar::zero();
    let mut xs: Vec<&Scalar> = vec![&zero];
    let mut ys: Vec<&Scalar> = Vec::new();
    for v in vertices {
        xs.push(&v.point.x);
        ys.push(&v.point.y);
    }
    for l in lines {
        ys.push(&l.intercept);
    }
    for h in hints {
        xs.push(&h.x);
        ys.push(&h.y);
    }
    let one = scalar::int(1);
    let mut x0 = xs.iter().min().map(|v| (*v).clone()).unwrap() - &one;
    let mut x1 = xs.iter().max().map(|v| (*v).clone()).unwrap() + &one;
    let mut y0 = ys.iter().min().map(|v| (*v).clone()).unwrap() - &one;
    let mut y1 = ys.iter().max().map(|v| (*v).clone()).unwrap() + &one;
    // no line may pass through a corner
    loop {
        let hits = lines.iter().any(|l| {
            [(&x0, &y0), (&x0, &y1), (&x1, &y0), (&x1, &y1)]
                .iter()
                .any(|(x, y)| (&l.slope * *x + &l.intercept) == **y)
        });
        if !hits {
            break;
        }
        x0 -= &one;
        x1 += &one;
        y0 -= scalar::ratio(3, 2);
        y1 += scalar::ratio(5, 3);
    }
    [x0, x1, y0, y1]
}
