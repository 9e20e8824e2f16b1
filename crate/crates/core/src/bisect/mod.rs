//! Simultaneous bisection of point sets by two lines.
//!
//! A pair bisects a set when each open region (Even and Odd) holds at most
//! `⌊n/2⌋` of its points; points on either line count for neither region.

mod counterexample;
mod oracle;
mod radial;
mod search;

pub use counterexample::gen_counterexample;
pub use oracle::{brute_force_oracle, brute_force_oracle_with_cap, signature, Constraint, DEFAULT_ORACLE_CAP};
pub use radial::bisect_two_through_common;
pub use search::{
    bisect_four, bisect_four_with, bisect_sets, bisect_three_parallel, bisect_three_parallel_with, bisect_three_through,
    bisect_three_through_with, SearchOptions,
};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{LinePair, Point, RegionClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub name: String,
    pub points: Vec<Point>,
}

/// Up to five labelled point sets with no point repeated anywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetFamily {
    sets: Vec<PointSet>,
}

impl PointSetFamily {
    pub fn new(sets: Vec<PointSet>) -> Result<Self> {
        if sets.iter().all(|s| s.points.is_empty()) {
            return Err(Error::EmptyFamily);
        }
        if sets.len() > 5 {
            return Err(Error::WrongSetCount {
                expected: 5,
                got: sets.len(),
            });
        }
        let mut seen = HashSet::new();
        for s in &sets {
            for p in &s.points {
                if !seen.insert(p) {
                    return Err(Error::DuplicatePoint(p.to_string()));
                }
            }
        }
        Ok(PointSetFamily { sets })
    }

    /// Sets named `P1`, `P2`, ... from bare point lists.
    pub fn from_points(sets: Vec<Vec<Point>>) -> Result<Self> {
        PointSetFamily::new(
            sets.into_iter()
                .enumerate()
                .map(|(i, points)| PointSet {
                    name: format!("P{}", i + 1),
                    points,
                })
                .collect(),
        )
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn total_points(&self) -> usize {
        self.sets.iter().map(|s| s.points.len()).sum()
    }

    /// `(set index, point)` over all points.
    pub fn labelled_points(&self) -> impl Iterator<Item = (usize, &Point)> {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.points.iter().map(move |p| (i, p)))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.labelled_points().any(|(_, q)| q == p)
    }

    fn expect_sets(&self, expected: usize) -> Result<()> {
        if self.sets.len() == expected {
            Ok(())
        } else {
            Err(Error::WrongSetCount {
                expected,
                got: self.sets.len(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SetCounts {
    pub even: usize,
    pub odd: usize,
    pub boundary: usize,
}

impl SetCounts {
    pub fn total(&self) -> usize {
        self.even + self.odd + self.boundary
    }

    pub fn balanced(&self) -> bool {
        let half = self.total() / 2;
        self.even <= half && self.odd <= half
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectionReport {
    pub counts: Vec<SetCounts>,
    pub verdict: bool,
}

impl fmt::Display for BisectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(f, "set {}: even {} odd {} boundary {}", i + 1, c.even, c.odd, c.boundary)?;
        }
        write!(f, "verdict: {}", if self.verdict { "bisected" } else { "not bisected" })
    }
}

pub fn verify(family: &PointSetFamily, pair: &LinePair) -> BisectionReport {
    let counts: Vec<SetCounts> = family
        .sets
        .iter()
        .map(|s| {
            let mut c = SetCounts::default();
            for p in &s.points {
                match pair.classify(p) {
                    RegionClass::Even => c.even += 1,
                    RegionClass::Odd => c.odd += 1,
                    RegionClass::Boundary => c.boundary += 1,
                }
            }
            c
        })
        .collect();
    let verdict = counts.iter().all(SetCounts::balanced);
    BisectionReport { counts, verdict }
}
