//! Uniform-density polygonal masses.
//!
//! Clipping a polygon by the four sign quadrants of a line pair only ever
//! introduces rational vertices, so the Even/Odd split is exact. The solver
//! searches in floating point and re-checks every candidate exactly.

use std::collections::HashSet;

use nalgebra::{Matrix4, Vector4};
use num::{Signed, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisect::{bisect_four, PointSetFamily};
use crate::conic::{decompose, Conic, Decomposition, LinearFactor, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::geom::{cross, LinePair, OrientedLine, Point};
use crate::scalar::{self, Scalar};

pub const DEFAULT_MASS_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_RESTARTS: usize = 32;

const MAX_ITERATIONS: usize = 200;
const SAMPLES_PER_MASS: usize = 24;
const SAMPLE_GRID: i64 = 1 << 24;

/// A simple polygon with uniform positive density. Vertices are stored
/// counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonMass {
    vertices: Vec<Point>,
    density: Scalar,
}

impl PolygonMass {
    /// Validates simplicity and area; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>, density: Scalar) -> Result<Self> {
        if !density.is_positive() {
            return Err(Error::InvalidPolygon("density must be positive".into()));
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!("{} vertices", vertices.len())));
        }
        let area2 = twice_area(&vertices);
        if area2.is_zero() {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if !is_simple(&vertices) {
            return Err(Error::InvalidPolygon("self-intersecting boundary".into()));
        }
        if area2.is_negative() {
            vertices.reverse();
        }
        Ok(PolygonMass { vertices, density })
    }

    /// Unit-density polygon from integer coordinates.
    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        PolygonMass::new(
            coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect(),
            scalar::int(1),
        )
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn density(&self) -> &Scalar {
        &self.density
    }

    pub fn area(&self) -> Scalar {
        twice_area(&self.vertices) / scalar::int(2)
    }

    pub fn total(&self) -> Scalar {
        self.area() * &self.density
    }

    /// Area-weighted centroid.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let (mut cx, mut cy) = (Scalar::zero(), Scalar::zero());
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            let w = cross(&p.x, &p.y, &q.x, &q.y);
            cx += (&p.x + &q.x) * &w;
            cy += (&p.y + &q.y) * &w;
        }
        let six_a = twice_area(&self.vertices) * scalar::int(3);
        Point::new(cx / &six_a, cy / six_a)
    }

    fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(Point::to_f64).collect()
    }
}

fn twice_area(vs: &[Point]) -> Scalar {
    let n = vs.len();
    (0..n).fold(Scalar::zero(), |acc, i| {
        let p = &vs[i];
        let q = &vs[(i + 1) % n];
        acc + cross(&p.x, &p.y, &q.x, &q.y)
    })
}

fn orient(a: &Point, b: &Point, c: &Point) -> Scalar {
    cross(&(&b.x - &a.x), &(&b.y - &a.y), &(&c.x - &a.x), &(&c.y - &a.y))
}

/// `p` on the closed segment `ab`, given that the three are collinear.
fn within(a: &Point, b: &Point, p: &Point) -> bool {
    p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = scalar::sign(&orient(a, b, c));
    let o2 = scalar::sign(&orient(a, b, d));
    let o3 = scalar::sign(&orient(c, d, a));
    let o4 = scalar::sign(&orient(c, d, b));
    use std::cmp::Ordering::Equal;
    if o1 != o2 && o3 != o4 && o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        return true;
    }
    (o1 == Equal && within(a, b, c))
        || (o2 == Equal && within(a, b, d))
        || (o3 == Equal && within(c, d, a))
        || (o4 == Equal && within(c, d, b))
}

fn is_simple(vs: &[Point]) -> bool {
    let n = vs.len();
    if vs.iter().collect::<HashSet<_>>().len() != n {
        return false;
    }
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (&vs[j], &vs[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared endpoint only: the far ends must not lie on the other edge
                let shared_is_b = j == i + 1;
                let (far_a, far_c, shared) = if shared_is_b { (a, d, b) } else { (b, c, a) };
                if orient(far_a, shared, far_c).is_zero()
                    && (within(shared, far_a, far_c) || within(shared, far_c, far_a))
                {
                    return false;
                }
            } else if segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// The part of `poly` with `line >= 0`.
fn clip(poly: &[Point], line: &OrientedLine) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let vp = line.eval(p);
        let vq = line.eval(q);
        if !vp.is_negative() {
            out.push(p.clone());
        }
        if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
            let t = &vp / (&vp - &vq);
            out.push(Point::new(&p.x + (&q.x - &p.x) * &t, &p.y + (&q.y - &p.y) * &t));
        }
    }
    out
}

fn quadrant_area(poly: &[Point], first: &OrientedLine, second: &OrientedLine) -> Scalar {
    let piece = clip(&clip(poly, first), second);
    if piece.len() < 3 {
        Scalar::zero()
    } else {
        twice_area(&piece) / scalar::int(2)
    }
}

/// Exact `(even, odd)` masses of the pair's checkerboard regions.
pub fn mass_split(mass: &PolygonMass, pair: &LinePair) -> (Scalar, Scalar) {
    let (l1, l2) = (&pair.first, &pair.second);
    let (n1, n2) = (crate::geom::reorient(l1), crate::geom::reorient(l2));
    let poly = &mass.vertices;
    let even = quadrant_area(poly, l1, l2) + quadrant_area(poly, &n1, &n2);
    let odd = quadrant_area(poly, l1, &n2) + quadrant_area(poly, &n1, l2);
    (even * &mass.density, odd * &mass.density)
}

/// Residuals `f_i = μ_i(q > 0) - μ_i(q < 0)` for a degenerate conic.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualVector {
    pub f: Vec<Scalar>,
    pub conic: Conic,
}

impl ResidualVector {
    pub fn to_f64(&self) -> Vec<f64> {
        self.f.iter().map(scalar::to_f64).collect()
    }
}

fn factor_line(f: &LinearFactor) -> Result<OrientedLine> {
    match &f.exact {
        Some(l) => Ok(l.clone()),
        None => OrientedLine::new(scalar::from_f64(f.a), scalar::from_f64(f.b), scalar::from_f64(f.c)),
    }
}

/// The zero set of `q` as a line pair together with the sign of `q` on the
/// pair's Even region.
fn conic_pair(q: &Conic) -> Result<(LinePair, bool)> {
    match decompose(q, DEFAULT_TOLERANCE)? {
        Decomposition::TwoLines { first, second, scale } => {
            Ok((LinePair::new(factor_line(&first)?, factor_line(&second)?), scale > 0.0))
        }
        Decomposition::DoubleLine { line, scale } => {
            let l = factor_line(&line)?;
            Ok((LinePair::new(l.clone(), l), scale > 0.0))
        }
        Decomposition::NonDegenerate => Err(Error::NonDegenerateConic),
        Decomposition::SinglePoint(_) | Decomposition::Empty => Err(Error::NotALinePair),
    }
}

/// Residuals of `masses` under the regions cut out by `q`. Irrational
/// factors are rounded to `f64` first and then evaluated exactly.
pub fn residual(masses: &[PolygonMass], q: &Conic) -> Result<ResidualVector> {
    let (pair, positive_even) = conic_pair(q)?;
    let f = masses
        .iter()
        .map(|m| {
            let (even, odd) = mass_split(m, &pair);
            if positive_even {
                even - odd
            } else {
                odd - even
            }
        })
        .collect();
    Ok(ResidualVector { f, conic: q.clone() })
}

/// `f_i` for a line pair, exact.
pub fn pair_residuals(masses: &[PolygonMass], pair: &LinePair) -> Vec<Scalar> {
    masses
        .iter()
        .map(|m| {
            let (even, odd) = mass_split(m, pair);
            even - odd
        })
        .collect()
}

/// Largest `|f_i| / μ_i(R²)`.
pub fn max_relative_residual(masses: &[PolygonMass], pair: &LinePair) -> f64 {
    masses
        .iter()
        .zip(pair_residuals(masses, pair))
        .map(|(m, f)| scalar::to_f64(&(f.abs() / m.total())))
        .fold(0.0, f64::max)
}

// ---- floating model ------------------------------------------------------

struct FloatMass {
    poly: Vec<(f64, f64)>,
    area: f64,
}

fn area_f64(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.0 * q.1 - p.1 * q.0
        })
        .sum::<f64>()
        / 2.0
}

fn clip_f64(poly: &[(f64, f64)], l: [f64; 3]) -> Vec<(f64, f64)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let vp = l[0] * p.0 + l[1] * p.1 + l[2];
        let vq = l[0] * q.0 + l[1] * q.1 + l[2];
        if vp >= 0.0 {
            out.push(p);
        }
        if (vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0) {
            let t = vp / (vp - vq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

/// `(u, t)` to the line `((1-u²) x + 2u y) / (1+u²) = t`.
fn line_f64(u: f64, t: f64) -> [f64; 3] {
    let w = 1.0 + u * u;
    [(1.0 - u * u) / w, 2.0 * u / w, -t]
}

fn line_exact(u: f64, t: f64) -> OrientedLine {
    let u = scalar::from_f64(u);
    let w = scalar::int(1) + &u * &u;
    let a = (scalar::int(1) - &u * &u) / &w;
    let b = scalar::int(2) * &u / &w;
    OrientedLine::new(a, b, -scalar::from_f64(t)).expect("unit normal")
}

fn pair_from_params(x: &Vector4<f64>) -> LinePair {
    LinePair::new(line_exact(x[0], x[1]), line_exact(x[2], x[3]))
}

fn relative_residuals(masses: &[FloatMass], x: &Vector4<f64>) -> Vector4<f64> {
    let l1 = line_f64(x[0], x[1]);
    let l2 = line_f64(x[2], x[3]);
    let neg = |l: [f64; 3]| [-l[0], -l[1], -l[2]];
    let mut r = Vector4::zeros();
    for (i, m) in masses.iter().enumerate() {
        let a = clip_f64(&m.poly, l1);
        let b = clip_f64(&m.poly, neg(l1));
        let even = area_f64(&clip_f64(&a, l2)) + area_f64(&clip_f64(&b, neg(l2)));
        r[i] = (2.0 * even - m.area) / m.area;
    }
    r
}

/// Levenberg-Marquardt from `x`; returns the first iterate whose exact check
/// passes, with the iteration count.
fn polish(
    masses: &[PolygonMass],
    model: &[FloatMass],
    mut x: Vector4<f64>,
    tol: f64,
    best: &mut f64,
) -> Option<(LinePair, usize)> {
    let mut r = relative_residuals(model, &x);
    let mut lambda = 1e-3;
    for iter in 0..=MAX_ITERATIONS {
        let norm = r.amax();
        if norm <= tol * 0.1 {
            let pair = pair_from_params(&x);
            let exact = max_relative_residual(masses, &pair);
            *best = best.min(exact);
            if exact <= tol {
                return Some((pair, iter));
            }
        }
        if iter == MAX_ITERATIONS {
            break;
        }
        let mut jac = Matrix4::zeros();
        for k in 0..4 {
            let h = 1e-7 * (1.0 + x[k].abs());
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let d = (relative_residuals(model, &xp) - relative_residuals(model, &xm)) / (2.0 * h);
            jac.set_column(k, &d);
        }
        let jtj = jac.transpose() * jac;
        let g = jac.transpose() * r;
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj;
            for k in 0..4 {
                a[(k, k)] += lambda * (jtj[(k, k)] + 1e-12);
            }
            let Some(step) = a.lu().solve(&(-g)) else {
                lambda *= 10.0;
                continue;
            };
            let xn = x + step;
            let rn = relative_residuals(model, &xn);
            if rn.norm() < r.norm() {
                x = xn;
                r = rn;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    *best = best.min(r.amax());
    None
}

fn halton(index: usize, base: usize) -> f64 {
    let (mut f, mut r, mut i) = (1.0, 0.0, index);
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Restart 0 is the horizontal/vertical pair through the common centroid;
/// later restarts spread directions and offsets quasi-randomly.
fn start(k: usize, centre: (f64, f64), spread: f64) -> Vector4<f64> {
    if k == 0 {
        return Vector4::new(0.0, centre.0, 1.0, centre.1);
    }
    let th1 = std::f64::consts::PI * halton(k, 2);
    let th2 = std::f64::consts::PI * halton(k, 3);
    let (u1, u2) = ((th1 / 2.0).tan(), (th2 / 2.0).tan());
    let off = |th: f64, h: f64| th.cos() * centre.0 + th.sin() * centre.1 + spread * (h - 0.5);
    Vector4::new(u1, off(th1, halton(k, 5)), u2, off(th2, halton(k, 7)))
}

/// Parameters `(u, t)` of an exact line, for warm starts.
fn params_of(l: &OrientedLine) -> Option<(f64, f64)> {
    let (a, b, c) = l.to_f64();
    let n = (a * a + b * b).sqrt();
    if n == 0.0 {
        return None;
    }
    let th = b.atan2(a);
    Some(((th / 2.0).tan(), -c / n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassSolution {
    pub pair: LinePair,
    /// Index of the successful start; `restarts` means the sampled fallback.
    pub restart: usize,
    pub iterations: usize,
    pub residuals: Vec<Scalar>,
}

/// Two lines with `|f_i| <= tol * μ_i(R²)` for up to four masses.
pub fn solve_masses(masses: &[PolygonMass], tol: f64, max_restarts: usize) -> Result<LinePair> {
    solve_masses_report(masses, tol, max_restarts, true).map(|s| s.pair)
}

pub fn solve_masses_report(
    masses: &[PolygonMass],
    tol: f64,
    max_restarts: usize,
    parallel: bool,
) -> Result<MassSolution> {
    if masses.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if masses.len() > 4 {
        return Err(Error::WrongSetCount {
            expected: 4,
            got: masses.len(),
        });
    }
    let model: Vec<FloatMass> = masses
        .iter()
        .map(|m| {
            let poly = m.vertices_f64();
            let area = area_f64(&poly);
            FloatMass { poly, area }
        })
        .collect();
    let total: Scalar = masses.iter().map(PolygonMass::total).sum();
    let centre = masses.iter().fold((Scalar::zero(), Scalar::zero()), |acc, m| {
        let c = m.centroid();
        let w = m.total();
        (acc.0 + c.x * &w, acc.1 + c.y * w)
    });
    let centre = (scalar::to_f64(&(centre.0 / &total)), scalar::to_f64(&(centre.1 / &total)));
    let spread = model
        .iter()
        .flat_map(|m| m.poly.iter())
        .map(|p| (p.0 - centre.0).hypot(p.1 - centre.1))
        .fold(0.0, f64::max)
        .max(1e-9);

    let attempt = |k: usize| {
        let mut best = f64::INFINITY;
        polish(masses, &model, start(k, centre, spread), tol, &mut best)
            .map(|(pair, iterations)| (k, pair, iterations))
            .ok_or(best)
    };
    let restarts = max_restarts.max(1);
    let found = run_restarts(restarts, parallel, &attempt);
    let (restart, pair, iterations) = match found {
        Ok(hit) => hit,
        Err(best) => {
            let mut best = best;
            match sampled_start(masses) {
                Some(x) => match polish(masses, &model, x, tol, &mut best) {
                    Some((pair, it)) => (restarts, pair, it),
                    None => return Err(Error::ConvergenceFailure { restarts, best }),
                },
                None => return Err(Error::ConvergenceFailure { restarts, best }),
            }
        }
    };
    let residuals = pair_residuals(masses, &pair);
    Ok(MassSolution {
        pair,
        restart,
        iterations,
        residuals,
    })
}

type Attempt = std::result::Result<(usize, LinePair, usize), f64>;

fn run_restarts(restarts: usize, parallel: bool, attempt: &(dyn Fn(usize) -> Attempt + Sync)) -> Attempt {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        use std::sync::Mutex;
        let best = Mutex::new(f64::INFINITY);
        return (0..restarts)
            .into_par_iter()
            .find_map_first(|k| match attempt(k) {
                Ok(hit) => Some(hit),
                Err(b) => {
                    let mut g = best.lock().expect("poisoned");
                    *g = g.min(b);
                    None
                }
            })
            .ok_or_else(|| *best.lock().expect("poisoned"));
    }
    let _ = parallel;
    let mut best = f64::INFINITY;
    for k in 0..restarts {
        match attempt(k) {
            Ok(hit) => return Ok(hit),
            Err(b) => best = best.min(b),
        }
    }
    Err(best)
}

/// A warm start from the exact bisection of sampled points.
fn sampled_start(masses: &[PolygonMass]) -> Option<Vector4<f64>> {
    let mut seen = HashSet::new();
    let sets: Vec<Vec<Point>> = masses
        .iter()
        .enumerate()
        .map(|(i, m)| {
            sample_to_points(m, SAMPLES_PER_MASS, i as u64)
                .into_iter()
                .filter(|p| seen.insert(p.clone()))
                .collect()
        })
        .collect();
    let mut sets = sets;
    while sets.len() < 4 {
        sets.push(Vec::new());
    }
    let family = PointSetFamily::from_points(sets).ok()?;
    let pair = bisect_four(&family).ok()?;
    let (u1, t1) = params_of(&pair.first)?;
    let (u2, t2) = params_of(&pair.second)?;
    Some(Vector4::new(u1, t1, u2, t2))
}

fn triangulate(vs: &[Point]) -> Vec<[usize; 3]> {
    let mut idx: Vec<usize> = (0..vs.len()).collect();
    let mut out = Vec::with_capacity(vs.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&i| {
            let (a, b, c) = (idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]);
            if !orient(&vs[a], &vs[b], &vs[c]).is_positive() {
                return false;
            }
            idx.iter().all(|&p| {
                p == a
                    || p == b
                    || p == c
                    || orient(&vs[a], &vs[b], &vs[p]).is_negative()
                    || orient(&vs[b], &vs[c], &vs[p]).is_negative()
                    || orient(&vs[c], &vs[a], &vs[p]).is_negative()
            })
        });
        let i = ear.expect("simple polygons have ears");
        out.push([idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]]);
        idx.remove(i);
    }
    out.push([idx[0], idx[1], idx[2]]);
    out
}

/// `k` points drawn uniformly from the interior, deterministic in `seed`.
pub fn sample_to_points(mass: &PolygonMass, k: usize, seed: u64) -> Vec<Point> {
    let vs = &mass.vertices;
    let tris: Vec<[usize; 3]> = triangulate(vs)
        .into_iter()
        .filter(|t| orient(&vs[t[0]], &vs[t[1]], &vs[t[2]]).is_positive())
        .collect();
    let weights: Vec<f64> = tris
        .iter()
        .map(|t| scalar::to_f64(&orient(&vs[t[0]], &vs[t[1]], &vs[t[2]])))
        .collect();
    let pick = WeightedIndex::new(&weights).expect("positive area");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let [a, b, c] = tris[pick.sample(&mut rng)];
        let (mut r1, mut r2) = (rng.gen_range(1..SAMPLE_GRID), rng.gen_range(1..SAMPLE_GRID));
        if r1 + r2 == SAMPLE_GRID {
            continue;
        }
        if r1 + r2 > SAMPLE_GRID {
            (r1, r2) = (SAMPLE_GRID - r1, SAMPLE_GRID - r2);
        }
        let (s, t) = (scalar::ratio(r1, SAMPLE_GRID), scalar::ratio(r2, SAMPLE_GRID));
        let (pa, pb, pc) = (&vs[a], &vs[b], &vs[c]);
        out.push(Point::new(
            &pa.x + (&pb.x - &pa.x) * &s + (&pc.x - &pa.x) * &t,
            &pa.y + (&pb.y - &pa.y) * &s + (&pc.y - &pa.y) * &t,
        ));
    }
    out
}
