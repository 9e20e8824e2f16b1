//! Instance text format.
//!
//! ```text
//! twocut 1
//! # comments and blank lines are ignored
//! set P1
//! 1/2 3
//! -0.25 7
//! set P2
//! 4 4
//! polygon M1 density 2
//! 0 0
//! 1 0
//! 0 1
//! line 1 0 0
//! point 0 0
//! ```
//!
//! Coordinates are integers, fractions `p/q` or decimals and are read exactly.
//! `line a b c` and `point x y` supply the constraint for the constrained
//! modes; command-line flags take precedence.

use std::fmt::{self, Write};

use twocut::bisect::{PointSet, PointSetFamily};
use twocut::mass::PolygonMass;
use twocut::scalar::{self, Scalar};
use twocut::{OrientedLine, Point};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonSpec {
    pub name: String,
    pub density: Scalar,
    pub vertices: Vec<Point>,
}

impl PolygonSpec {
    pub fn to_mass(&self) -> twocut::Result<PolygonMass> {
        PolygonMass::new(self.vertices.clone(), self.density.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub sets: Vec<PointSet>,
    pub polygons: Vec<PolygonSpec>,
    pub line: Option<OrientedLine>,
    pub point: Option<Point>,
}

enum Section {
    None,
    Set,
    Polygon,
}

/// A whitespace-separated token with its 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, ParseError> {
        let mut inst = Instance::default();
        let mut section = Section::None;
        let mut seen_header = false;
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let toks = tokens(content);
            let Some(&(col, head)) = toks.first() else {
                continue;
            };
            let err = |column: usize, message: String| ParseError {
                line: lineno,
                column,
                message,
            };
            let number = |(c, t): (usize, &str)| scalar::parse(t).map_err(|_| err(c, format!("bad number `{t}`")));
            if !seen_header {
                if head != "twocut" || toks.len() != 2 {
                    return Err(err(col, "expected header `twocut 1`".into()));
                }
                let (c, v) = toks[1];
                if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(err(c, format!("unsupported format version `{v}`")));
                }
                seen_header = true;
                continue;
            }
            match head {
                "set" => {
                    if toks.len() != 2 {
                        return Err(err(col, "expected `set NAME`".into()));
                    }
                    inst.sets.push(PointSet {
                        name: toks[1].1.to_string(),
                        points: Vec::new(),
                    });
                    section = Section::Set;
                }
                "polygon" => {
                    let density = match toks.len() {
                        2 => scalar::int(1),
                        4 if toks[2].1 == "density" => number(toks[3])?,
                        _ => return Err(err(col, "expected `polygon NAME [density D]`".into())),
                    };
                    inst.polygons.push(PolygonSpec {
                        name: toks[1].1.to_string(),
                        density,
                        vertices: Vec::new(),
                    });
                    section = Section::Polygon;
                }
                "line" => {
                    if toks.len() != 4 {
                        return Err(err(col, "expected `line a b c`".into()));
                    }
                    let (a, b, c) = (number(toks[1])?, number(toks[2])?, number(toks[3])?);
                    inst.line = Some(OrientedLine::new(a, b, c).map_err(|e| err(col, e.to_string()))?);
                    section = Section::None;
                }
                "point" => {
                    if toks.len() != 3 {
                        return Err(err(col, "expected `point x y`".into()));
                    }
                    inst.point = Some(Point::new(number(toks[1])?, number(toks[2])?));
                    section = Section::None;
                }
                _ => {
                    if toks.len() != 2 {
                        return Err(err(col, format!("expected a coordinate pair, got {} fields", toks.len())));
                    }
                    let p = Point::new(number(toks[0])?, number(toks[1])?);
                    match section {
                        Section::Set => inst.sets.last_mut().expect("open set").points.push(p),
                        Section::Polygon => inst.polygons.last_mut().expect("open polygon").vertices.push(p),
                        Section::None => return Err(err(col, "coordinates outside a `set` or `polygon` block".into())),
                    }
                }
            }
        }
        if !seen_header {
            return Err(ParseError {
                line: 1,
                column: 1,
                message: "empty instance".into(),
            });
        }
        Ok(inst)
    }

    pub fn from_family(family: &PointSetFamily) -> Instance {
        Instance {
            sets: family.sets().to_vec(),
            ..Instance::default()
        }
    }

    pub fn family(&self) -> twocut::Result<PointSetFamily> {
        PointSetFamily::new(self.sets.clone())
    }

    pub fn masses(&self) -> twocut::Result<Vec<PolygonMass>> {
        self.polygons.iter().map(PolygonSpec::to_mass).collect()
    }

    /// Canonical text; parsing it back gives an equal instance.
    pub fn to_text(&self) -> String {
        let mut out = format!("twocut {FORMAT_VERSION}\n");
        for s in &self.sets {
            let _ = writeln!(out, "set {}", s.name);
            for p in &s.points {
                let _ = writeln!(out, "{p}");
            }
        }
        for poly in &self.polygons {
            let _ = writeln!(out, "polygon {} density {}", poly.name, scalar::format(&poly.density));
            for p in &poly.vertices {
                let _ = writeln!(out, "{p}");
            }
        }
        if let Some(l) = &self.line {
            let _ = writeln!(
                out,
                "line {} {} {}",
                scalar::format(&l.a),
                scalar::format(&l.b),
                scalar::format(&l.c)
            );
        }
        if let Some(q) = &self.point {
            let _ = writeln!(out, "point {q}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sets_and_constraints() {
        let text = "twocut 1\n# demo\nset A\n1/2 3\n-0.25 7\nset B\n4 4\nline 0 1 0\npoint 1 1\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.sets.len(), 2);
        assert_eq!(inst.sets[0].points[0], Point::new(scalar::ratio(1, 2), scalar::int(3)));
        assert_eq!(inst.sets[0].points[1].x, scalar::ratio(-1, 4));
        assert_eq!(inst.line, Some(OrientedLine::from_ints(0, 1, 0)));
        assert_eq!(inst.point, Some(Point::from_ints(1, 1)));
    }

    #[test]
    fn reports_position_of_bad_number() {
        let e = Instance::parse("twocut 1\nset A\n1 2\n3 x7\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 3));
        let e = Instance::parse("set A\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn polygons_keep_density() {
        let inst = Instance::parse("twocut 1\npolygon M density 3/2\n0 0\n1 0\n0 1\n").unwrap();
        let m = inst.masses().unwrap();
        assert_eq!(m[0].total(), scalar::ratio(3, 4));
    }

    #[test]
    fn text_round_trip() {
        let text = "twocut 1\nset A\n1/3 -2\nset B\n0.5 1\npolygon M density 2\n0 0\n1 0\n0 1\nline 1 -1 1/2\npoint 3 4\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(Instance::parse(&inst.to_text()).unwrap(), inst);
    }
}
