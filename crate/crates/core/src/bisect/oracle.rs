//! Exhaustive search over combinatorially distinct line pairs.

use std::collections::{BTreeSet, HashSet};

use num::{Signed, Zero};

use super::PointSetFamily;
use crate::error::{Error, Result};
use crate::geom::{cross, LinePair, OrientedLine, Point, RegionClass, Side};
use crate::scalar::{self, Scalar};

pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// First line parallel to the given line.
    Parallel(OrientedLine),
    /// First line through the point.
    Through(Point),
    /// Both lines through the point.
    BothThrough(Point),
}

impl Constraint {
    pub fn satisfied_by(&self, pair: &LinePair) -> bool {
        match self {
            Constraint::None => true,
            Constraint::Parallel(l) => l.is_at_infinity() || pair.first.is_parallel_to(l),
            Constraint::Through(q) => pair.first.contains(q),
            Constraint::BothThrough(q) => pair.first.contains(q) && pair.second.contains(q),
        }
    }
}

/// Scales a line so that it has a unique representation up to orientation.
fn normalize(line: &OrientedLine) -> OrientedLine {
    let lead = if !line.a.is_zero() {
        &line.a
    } else if !line.b.is_zero() {
        &line.b
    } else {
        &line.c
    };
    let k = lead.abs();
    OrientedLine {
        a: &line.a / &k,
        b: &line.b / &k,
        c: &line.c / &k,
    }
}

fn canonical(line: &OrientedLine) -> OrientedLine {
    let n = normalize(line);
    let lead = if !n.a.is_zero() { &n.a } else { &n.b };
    if lead.is_negative() {
        crate::geom::reorient(&n)
    } else {
        n
    }
}

struct Pool {
    lines: Vec<OrientedLine>,
    seen: HashSet<OrientedLine>,
}

impl Pool {
    fn new() -> Self {
        Pool {
            lines: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn add(&mut self, line: OrientedLine) {
        let c = if line.is_at_infinity() { OrientedLine::at_infinity() } else { canonical(&line) };
        if self.seen.insert(c.clone()) {
            self.lines.push(c);
        }
    }
}

/// Lines with normal `(a, b)` through each point, plus one line strictly
/// between consecutive ones and one beyond each end.
fn parallel_class(pool: &mut Pool, a: &Scalar, b: &Scalar, points: &[&Point]) {
    let mut offsets: Vec<Scalar> = points.iter().map(|p| -(a * &p.x + b * &p.y)).collect();
    offsets.sort();
    offsets.dedup();
    let one = scalar::int(1);
    let two = scalar::int(2);
    let mut all = Vec::with_capacity(2 * offsets.len() + 1);
    all.push(&offsets[0] - &one);
    for w in offsets.windows(2) {
        all.push((&w[0] + &w[1]) / &two);
    }
    all.push(offsets.last().unwrap() + &one);
    all.extend(offsets.iter().cloned());
    for c in all {
        pool.add(OrientedLine {
            a: a.clone(),
            b: b.clone(),
            c,
        });
    }
}

fn general_candidates(points: &[&Point]) -> Vec<OrientedLine> {
    let mut pool = Pool::new();
    let mut normals: BTreeSet<(Scalar, Scalar)> = BTreeSet::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if let Ok(l) = OrientedLine::through(points[i], points[j]) {
                let n = canonical(&l);
                normals.insert((n.a.clone(), n.b.clone()));
            }
        }
    }
    if normals.is_empty() {
        normals.insert((Scalar::zero(), scalar::int(1)));
    }
    for (a, b) in &normals {
        parallel_class(&mut pool, a, b, points);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            for line in tilted_pair_lines(points, points[i], points[j]) {
                pool.add(line);
            }
        }
    }
    pool.add(OrientedLine::at_infinity());
    pool.lines
}

/// The line through `p` and `q` turned slightly both ways about their
/// midpoint, so that `p` and `q` end up on opposite sides while every point
/// off the line keeps its side.
fn tilted_pair_lines(points: &[&Point], p: &Point, q: &Point) -> Vec<OrientedLine> {
    let m = p.midpoint(q);
    let d = (&q.x - &p.x, &q.y - &p.y);
    let n = (-d.1.clone(), d.0.clone());
    let mut eps = scalar::int(1);
    for r in points {
        let rel = (&r.x - &m.x, &r.y - &m.y);
        let c0 = cross(&d.0, &d.1, &rel.0, &rel.1);
        let c1 = cross(&n.0, &n.1, &rel.0, &rel.1);
        if !c0.is_zero() && !c1.is_zero() {
            let bound = (c0 / c1).abs() / scalar::int(2);
            if bound < eps {
                eps = bound;
            }
        }
    }
    [eps.clone(), -eps]
        .into_iter()
        .map(|e| {
            let dir = (&d.0 + &e * &n.0, &d.1 + &e * &n.1);
            let a = dir.1;
            let b = -dir.0;
            let c = -(&a * &m.x + &b * &m.y);
            OrientedLine { a, b, c }
        })
        .collect()
}

/// Keeps the first line of every sign vector (up to negation) over `points`.
fn distinct_by_signs(lines: Vec<OrientedLine>, points: &[&Point]) -> (Vec<OrientedLine>, Vec<Vec<i8>>) {
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    let mut signs = Vec::new();
    for l in lines {
        let sig: Vec<i8> = points
            .iter()
            .map(|p| match l.side_of(p) {
                Side::Positive => 1,
                Side::Zero => 0,
                Side::Negative => -1,
            })
            .collect();
        let mut key = sig.clone();
        if key.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
            key.iter_mut().for_each(|v| *v = -*v);
        }
        if seen.insert(key) {
            kept.push(l);
            signs.push(sig);
        }
    }
    (kept, signs)
}

/// Lines through `q`: through every point, plus one strictly between each
/// angularly adjacent pair.
fn through_candidates(q: &Point, points: &[&Point]) -> Vec<OrientedLine> {
    let mut dirs: Vec<(Scalar, Scalar)> = points
        .iter()
        .filter(|p| **p != q)
        .map(|p| {
            let (dx, dy) = (&p.x - &q.x, &p.y - &q.y);
            if dy.is_negative() || (dy.is_zero() && dx.is_negative()) {
                (-dx, -dy)
            } else {
                (dx, dy)
            }
        })
        .collect();
    // angle order within [0, pi)
    dirs.sort_by(|a, b| (&b.0 * &a.1 - &b.1 * &a.0).cmp(&Scalar::zero()));
    dirs.dedup_by(|a, b| (&a.0 * &b.1 - &a.1 * &b.0).is_zero());
    let mut all = dirs.clone();
    match dirs.len() {
        0 => all.push((scalar::int(1), Scalar::zero())),
        1 => all.push((-dirs[0].1.clone(), dirs[0].0.clone())),
        k => {
            for w in dirs.windows(2) {
                all.push((&w[0].0 + &w[1].0, &w[0].1 + &w[1].1));
            }
            all.push((&dirs[k - 1].0 - &dirs[0].0, &dirs[k - 1].1 - &dirs[0].1));
        }
    }
    let mut pool = Pool::new();
    for (dx, dy) in all {
        let a = dy;
        let b = -dx;
        let c = -(&a * &q.x + &b * &q.y);
        pool.add(OrientedLine { a, b, c });
    }
    pool.lines
}

fn parallel_candidates(line: &OrientedLine, points: &[&Point]) -> Vec<OrientedLine> {
    let mut pool = Pool::new();
    parallel_class(&mut pool, &line.a, &line.b, points);
    pool.lines
}

pub fn brute_force_oracle(family: &PointSetFamily, constraint: &Constraint) -> Result<Vec<LinePair>> {
    brute_force_oracle_with_cap(family, constraint, DEFAULT_ORACLE_CAP)
}

/// Every combinatorially distinct bisecting pair satisfying `constraint`,
/// one representative per classification (up to swapping Even and Odd).
pub fn brute_force_oracle_with_cap(family: &PointSetFamily, constraint: &Constraint, cap: usize) -> Result<Vec<LinePair>> {
    let n = family.total_points();
    if n > cap {
        return Err(Error::InputTooLarge { got: n, cap });
    }
    let points: Vec<&Point> = family.labelled_points().map(|(_, p)| p).collect();
    let set_of: Vec<usize> = family.labelled_points().map(|(s, _)| s).collect();
    let halves: Vec<usize> = family.sets().iter().map(|s| s.points.len() / 2).collect();

    let general = general_candidates(&points);
    let (firsts, seconds) = match constraint {
        Constraint::None => (general.clone(), general),
        Constraint::Parallel(l) if l.is_at_infinity() => (general.clone(), general),
        Constraint::Parallel(l) => (parallel_candidates(l, &points), general),
        Constraint::Through(q) => (through_candidates(q, &points), general),
        Constraint::BothThrough(q) => {
            let t = through_candidates(q, &points);
            (t.clone(), t)
        }
    };
    let symmetric = firsts == seconds;
    let (firsts, s1) = distinct_by_signs(firsts, &points);
    let (seconds, s2) = distinct_by_signs(seconds, &points);
    let sets = halves.len();

    let scan = |i: usize| -> Vec<(Vec<i8>, usize, usize)> {
        let mut found = Vec::new();
        let mut even = vec![0usize; sets];
        let mut odd = vec![0usize; sets];
        let start = if symmetric { i } else { 0 };
        for j in start..seconds.len() {
            even.iter_mut().for_each(|v| *v = 0);
            odd.iter_mut().for_each(|v| *v = 0);
            let mut ok = true;
            for k in 0..points.len() {
                let prod = s1[i][k] * s2[j][k];
                let s = set_of[k];
                if prod > 0 {
                    even[s] += 1;
                    if even[s] > halves[s] {
                        ok = false;
                        break;
                    }
                } else if prod < 0 {
                    odd[s] += 1;
                    if odd[s] > halves[s] {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut sig: Vec<i8> = (0..points.len()).map(|k| s1[i][k] * s2[j][k]).collect();
                if sig.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
                    sig.iter_mut().for_each(|v| *v = -*v);
                }
                found.push((sig, i, j));
            }
        }
        found
    };
    #[cfg(feature = "parallel")]
    let hits: Vec<(Vec<i8>, usize, usize)> = {
        use rayon::prelude::*;
        (0..firsts.len()).into_par_iter().flat_map_iter(scan).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<(Vec<i8>, usize, usize)> = (0..firsts.len()).flat_map(scan).collect();

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (sig, i, j) in hits {
        if seen.insert(sig) {
            let pair = LinePair::new(firsts[i].clone(), seconds[j].clone());
            debug_assert!(constraint.satisfied_by(&pair));
            out.push(pair);
        }
    }
    Ok(out)
}

/// Classification signature of a pair, used to compare against the oracle.
pub fn signature(family: &PointSetFamily, pair: &LinePair) -> Vec<RegionClass> {
    family.labelled_points().map(|(_, p)| pair.classify(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisect::verify;

    fn fam(sets: &[&[(i64, i64)]]) -> PointSetFamily {
        PointSetFamily::from_points(
            sets.iter()
                .map(|s| s.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn mirror_family_contains_axes_class() {
        let f = fam(&[&[(1, 1), (-1, 1)], &[(2, 1), (-2, 1)], &[(3, 1), (-3, 1)], &[(4, 1), (-4, 1)]]);
        let sols = brute_force_oracle(&f, &Constraint::None).unwrap();
        assert!(!sols.is_empty());
        let axes = LinePair::new(OrientedLine::from_ints(1, 0, 0), OrientedLine::from_ints(0, 1, 0));
        let target = signature(&f, &axes);
        let flipped: Vec<RegionClass> = target.iter().map(|c| c.flipped()).collect();
        assert!(sols.iter().any(|p| {
            let s = signature(&f, p);
            s == target || s == flipped
        }));
        for p in &sols {
            assert!(verify(&f, p).verdict);
        }
    }

    #[test]
    fn two_points_one_set() {
        let f = fam(&[&[(0, 0), (1, 0)]]);
        assert!(!brute_force_oracle(&f, &Constraint::None).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let f = fam(&[&[(0, 0), (1, 0), (2, 5)]]);
        assert!(matches!(
            brute_force_oracle_with_cap(&f, &Constraint::None, 2),
            Err(Error::InputTooLarge { got: 3, cap: 2 })
        ));
    }

    #[test]
    fn constraints_hold() {
        let three = fam(&[&[(0, 0), (3, 1), (5, 5)], &[(1, 4), (2, -2)], &[(-3, 1), (7, 2)]]);
        let two = fam(&[&[(0, 0), (3, 1), (5, 5)], &[(1, 4), (2, -2), (-3, 1), (7, 2)]]);
        let q = Point::from_ints(1, 1);
        for (f, c) in [
            (&three, Constraint::Parallel(OrientedLine::from_ints(1, 2, 0))),
            (&three, Constraint::Through(q.clone())),
            (&two, Constraint::BothThrough(q)),
        ] {
            let sols = brute_force_oracle(f, &c).unwrap();
            assert!(!sols.is_empty(), "{c:?}");
            assert!(sols.iter().all(|p| c.satisfied_by(p) && verify(f, p).verdict));
        }
    }
}
