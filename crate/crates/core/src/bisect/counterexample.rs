//! Five clustered sets that no pair of lines bisects.
//!
//! Around five anchors in general position, every disk of radius `ε/2` (with
//! `ε` the least distance from an anchor to a line through two others) can be
//! met by a single line only if that line misses at least one other disk of
//! each triple, so two lines leave some disk untouched and its cluster lies
//! in one open region.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num::Zero;

use super::{PointSet, PointSetFamily};
use crate::geom::{cross, Point};
use crate::scalar::{self, Scalar};

const RADIUS: f64 = 1000.0;
const GRID: i64 = 1 << 20;

fn anchors(rotation: f64) -> Vec<Point> {
    (0..5)
        .map(|k| {
            let t = rotation + std::f64::consts::TAU * k as f64 / 5.0;
            Point::from_ints((RADIUS * t.cos()).round() as i64, (RADIUS * t.sin()).round() as i64)
        })
        .collect()
}

fn general_position(pts: &[Point]) -> bool {
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let c = cross(
                    &(&pts[j].x - &pts[i].x),
                    &(&pts[j].y - &pts[i].y),
                    &(&pts[k].x - &pts[i].x),
                    &(&pts[k].y - &pts[i].y),
                );
                if c.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Squared distance from every anchor to every line through two others,
/// minimised.
fn min_sq_distance(pts: &[Point]) -> Scalar {
    let mut best: Option<Scalar> = None;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            for k in (j + 1)..pts.len() {
                if i == j || i == k {
                    continue;
                }
                let dx = &pts[k].x - &pts[j].x;
                let dy = &pts[k].y - &pts[j].y;
                let c = cross(&dx, &dy, &(&pts[i].x - &pts[j].x), &(&pts[i].y - &pts[j].y));
                let d2 = &c * &c / (&dx * &dx + &dy * &dy);
                if best.as_ref().is_none_or(|b| d2 < *b) {
                    best = Some(d2);
                }
            }
        }
    }
    best.expect("five anchors")
}

/// Five sets of `points_per_cluster` points each, drawn deterministically
/// from `seed` inside disks of radius below `ε/2` around a regular pentagon.
pub fn gen_counterexample(points_per_cluster: usize, seed: u64) -> PointSetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rotation: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let pts = loop {
        let a = anchors(rotation);
        if general_position(&a) {
            break a;
        }
        rotation += 0.1;
    };
    let eps2 = min_sq_distance(&pts);
    // rational radius with r^2 < eps^2 / 4
    let mut r = scalar::from_f64((scalar::to_f64(&eps2).sqrt() / 2.0 * 0.9).floor().max(1.0));
    let quarter = &eps2 / scalar::int(4);
    while &r * &r >= quarter {
        r /= scalar::int(2);
    }
    let r2 = &r * &r;
    let mut used = std::collections::HashSet::new();
    let sets = pts
        .iter()
        .enumerate()
        .map(|(i, anchor)| {
            let mut points = Vec::with_capacity(points_per_cluster);
            while points.len() < points_per_cluster {
                let ux = scalar::ratio(rng.gen_range(-GRID + 1..GRID), GRID);
                let uy = scalar::ratio(rng.gen_range(-GRID + 1..GRID), GRID);
                let dx = &ux * &r;
                let dy = &uy * &r;
                if &dx * &dx + &dy * &dy >= r2 {
                    continue;
                }
                let p = Point::new(&anchor.x + dx, &anchor.y + dy);
                if used.insert(p.clone()) {
                    points.push(p);
                }
            }
            PointSet {
                name: format!("C{}", i + 1),
                points,
            }
        })
        .collect();
    PointSetFamily::new(sets).expect("clusters are disjoint")
}
