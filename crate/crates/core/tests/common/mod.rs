//! Shared random instance generators for the integration tests.
#![allow(dead_code)]

pub mod levels;

use std::collections::HashSet;

use rand::Rng;
use twocut::bisect::PointSetFamily;
use twocut::scalar::{self, Scalar};
use twocut::{OrientedLine, Point};

pub fn rational<R: Rng>(rng: &mut R, span: i64) -> Scalar {
    let den = rng.gen_range(1..=8);
    scalar::ratio(rng.gen_range(-span * den..=span * den), den)
}

pub fn point<R: Rng>(rng: &mut R, span: i64) -> Point {
    Point::new(rational(rng, span), rational(rng, span))
}

/// `sets` random sets with sizes in `sizes`, no point repeated.
pub fn family<R: Rng>(rng: &mut R, sets: usize, sizes: std::ops::RangeInclusive<usize>, span: i64) -> PointSetFamily {
    let mut seen = HashSet::new();
    let lists = (0..sets)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            let mut pts = Vec::with_capacity(n);
            while pts.len() < n {
                let p = point(rng, span);
                if seen.insert(p.clone()) {
                    pts.push(p);
                }
            }
            pts
        })
        .collect();
    PointSetFamily::from_points(lists).unwrap()
}

/// Family with total size at most `max_total`.
pub fn small_family<R: Rng>(rng: &mut R, sets: usize, max_total: usize, span: i64) -> PointSetFamily {
    loop {
        let f = family(rng, sets, 1..=max_total / sets, span);
        if f.total_points() <= max_total {
            return f;
        }
    }
}

pub fn line<R: Rng>(rng: &mut R, span: i64) -> OrientedLine {
    loop {
        let a = rational(rng, span);
        let b = rational(rng, span);
        if let Ok(l) = OrientedLine::new(a, b, rational(rng, span)) {
            if !l.is_at_infinity() {
                return l;
            }
        }
    }
}
