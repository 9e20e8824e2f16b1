//! Exact planar two-line bisection.
//!
//! Given up to four finite point sets in the plane, find two straight lines
//! such that the two checkerboard regions they induce each hold at most half of
//! every set. The crate also covers the constrained variants (one line parallel
//! to a given line, one line through a given point, both lines through a given
//! point), a brute-force oracle, the dual line arrangement machinery the search
//! runs on, and the continuous analogue for uniform polygonal masses.
//!
//! All combinatorial predicates use exact rationals ([`Scalar`]).

pub mod bisect;
pub mod conic;
pub mod dual;
mod error;
pub mod geom;
pub mod mass;
pub mod scalar;

pub use error::{Error, Result};
pub use geom::{LinePair, OrientedLine, Point, RegionClass, Side};
pub use scalar::Scalar;
