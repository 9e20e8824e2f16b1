//! Points, oriented lines and the two-colour region classification.
//!
//! An oriented line `(a, b, c)` has the closed positive side `ax + by + c >= 0`.
//! With `a = b = 0` it is a line at infinity whose positive side is the whole
//! plane (`c > 0`) or nothing (`c < 0`).

use std::cmp::Ordering;
use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(scalar::int(x), scalar::int(y))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = scalar::int(2);
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (scalar::to_f64(&self.x), scalar::to_f64(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", scalar::format(&self.x), scalar::format(&self.y))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    Zero,
    Negative,
}

impl Side {
    pub fn from_ordering(o: Ordering) -> Side {
        match o {
            Ordering::Greater => Side::Positive,
            Ordering::Equal => Side::Zero,
            Ordering::Less => Side::Negative,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Zero => Side::Zero,
            Side::Negative => Side::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedLine {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl OrientedLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::ZeroLine);
        }
        Ok(OrientedLine { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        OrientedLine::new(scalar::int(a), scalar::int(b), scalar::int(c)).expect("nonzero line")
    }

    /// Line at infinity whose positive side is the whole plane.
    pub fn at_infinity() -> Self {
        OrientedLine::from_ints(0, 0, 1)
    }

    /// The line through `p` and `q` (distinct), positive to the left of `p -> q`.
    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        let dx = &q.x - &p.x;
        let dy = &q.y - &p.y;
        Self::with_direction(p, &dx, &dy)
    }

    /// The line through `p` with direction `(dx, dy)`, positive to the left.
    pub fn with_direction(p: &Point, dx: &Scalar, dy: &Scalar) -> Result<Self> {
        let a = -dy.clone();
        let b = dx.clone();
        let c = -(&a * &p.x + &b * &p.y);
        OrientedLine::new(a, b, c)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero() && !self.a.is_zero()
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn side_of(&self, p: &Point) -> Side {
        side_of(self, p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// Exact parallelism test; a line at infinity is parallel to every line.
    pub fn is_parallel_to(&self, other: &OrientedLine) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    /// Same point set and orientation, up to positive scaling.
    pub fn same_oriented(&self, other: &OrientedLine) -> bool {
        let proportional = (&self.a * &other.b - &other.a * &self.b).is_zero()
            && (&self.a * &other.c - &other.a * &self.c).is_zero()
            && (&self.b * &other.c - &other.b * &self.c).is_zero();
        let dot = &self.a * &other.a + &self.b * &other.b + &self.c * &other.c;
        proportional && dot.is_positive()
    }

    /// Same point set, either orientation.
    pub fn same_unoriented(&self, other: &OrientedLine) -> bool {
        self.same_oriented(other) || self.same_oriented(&reorient(other))
    }

    /// Rewrites the line for coordinates `(x', y') = (x + s*y, y)`.
    pub fn to_shear_frame(&self, s: &Scalar) -> OrientedLine {
        // a x + b y + c with x = x' - s y'
        OrientedLine {
            a: self.a.clone(),
            b: &self.b - &self.a * s,
            c: self.c.clone(),
        }
    }

    /// Inverse of [`OrientedLine::to_shear_frame`].
    pub fn from_shear_frame(&self, s: &Scalar) -> OrientedLine {
        OrientedLine {
            a: self.a.clone(),
            b: &self.b + &self.a * s,
            c: self.c.clone(),
        }
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (
            scalar::to_f64(&self.a),
            scalar::to_f64(&self.b),
            scalar::to_f64(&self.c),
        )
    }
}

impl fmt::Display for OrientedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            scalar::format(&self.a),
            scalar::format(&self.b),
            scalar::format(&self.c)
        )
    }
}

pub fn side_of(line: &OrientedLine, p: &Point) -> Side {
    Side::from_ordering(scalar::sign(&line.eval(p)))
}

pub fn reorient(line: &OrientedLine) -> OrientedLine {
    OrientedLine {
        a: -line.a.clone(),
        b: -line.b.clone(),
        c: -line.c.clone(),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RegionClass {
    /// An even number of lines have the point on their positive side.
    Even,
    Odd,
    /// On at least one line.
    Boundary,
}

impl RegionClass {
    pub fn flipped(self) -> RegionClass {
        match self {
            RegionClass::Even => RegionClass::Odd,
            RegionClass::Odd => RegionClass::Even,
            RegionClass::Boundary => RegionClass::Boundary,
        }
    }
}

pub fn region_class<'a, I>(lines: I, p: &Point) -> RegionClass
where
    I: IntoIterator<Item = &'a OrientedLine>,
{
    let mut positive = 0usize;
    for line in lines {
        match side_of(line, p) {
            Side::Zero => return RegionClass::Boundary,
            Side::Positive => positive += 1,
            Side::Negative => {}
        }
    }
    if positive.is_multiple_of(2) {
        RegionClass::Even
    } else {
        RegionClass::Odd
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePair {
    pub first: OrientedLine,
    pub second: OrientedLine,
}

impl LinePair {
    pub fn new(first: OrientedLine, second: OrientedLine) -> Self {
        LinePair { first, second }
    }

    pub fn lines(&self) -> [&OrientedLine; 2] {
        [&self.first, &self.second]
    }

    pub fn classify(&self, p: &Point) -> RegionClass {
        region_class(self.lines(), p)
    }

    pub fn is_degenerate(&self) -> bool {
        self.first.same_unoriented(&self.second)
    }
}

impl fmt::Display for LinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.first, self.second)
    }
}

/// `(x, y) -> (x + s*y, y)`.
pub fn shear_point(p: &Point, s: &Scalar) -> Point {
    Point::new(&p.x + s * &p.y, p.y.clone())
}

/// Cross product of `(ax, ay)` and `(bx, by)`.
pub fn cross(ax: &Scalar, ay: &Scalar, bx: &Scalar, by: &Scalar) -> Scalar {
    ax * by - ay * bx
}
