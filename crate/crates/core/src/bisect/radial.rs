//! Two sets, both lines through a common point.
//!
//! Reflecting a point through `q` changes its side of every line through `q`,
//! so the parity class is unchanged. After reflecting everything below an
//! auxiliary line through `q`, all points lie in one open half-plane and a
//! pair of lines through `q` splits them into the angular window between the
//! lines and the rest.

use num::Zero;

use super::{verify, PointSetFamily};
use crate::error::{Error, Result};
use crate::geom::{cross, LinePair, OrientedLine, Point};
use crate::scalar::{self, Scalar};

struct Group {
    dir: (Scalar, Scalar),
    per_set: Vec<usize>,
}

/// Line through `q` with direction `d`, in original coordinates.
fn line_through(q: &Point, d: &(Scalar, Scalar)) -> OrientedLine {
    let a = d.1.clone();
    let b = -d.0.clone();
    let c = -(&a * &q.x + &b * &q.y);
    OrientedLine { a, b, c }
}

/// Slope of an auxiliary line through the origin avoiding every point.
fn free_slope(points: &[(Scalar, Scalar)]) -> Scalar {
    let mut k: i64 = 0;
    loop {
        // 0, 1, -1, 2, -2, ...
        let m = scalar::int(if k % 2 == 1 { k / 2 + 1 } else { -(k / 2) });
        if points.iter().all(|(x, y)| *y != &m * x) {
            return m;
        }
        k += 1;
    }
}

pub fn bisect_two_through_common(family: &PointSetFamily, q: &Point) -> Result<LinePair> {
    family.expect_sets(2)?;
    if family.contains(q) {
        return Err(Error::QCoincidesWithInputPoint(q.to_string()));
    }
    let sets = family.num_sets();
    let mut pts: Vec<((Scalar, Scalar), usize)> = family
        .labelled_points()
        .map(|(s, p)| ((&p.x - &q.x, &p.y - &q.y), s))
        .collect();
    let plain: Vec<(Scalar, Scalar)> = pts.iter().map(|(p, _)| p.clone()).collect();
    let m = free_slope(&plain);
    for (p, _) in pts.iter_mut() {
        if p.1 < &m * &p.0 {
            *p = (-p.0.clone(), -p.1.clone());
        }
    }
    // counter-clockwise from the direction (1, m); everything is strictly above
    pts.sort_by(|a, b| cross(&b.0 .0, &b.0 .1, &a.0 .0, &a.0 .1).cmp(&Scalar::zero()));
    let mut groups: Vec<Group> = Vec::new();
    for (p, s) in pts {
        match groups.last_mut() {
            Some(g) if cross(&g.dir.0, &g.dir.1, &p.0, &p.1).is_zero() => g.per_set[s] += 1,
            _ => {
                let mut per_set = vec![0; sets];
                per_set[s] += 1;
                groups.push(Group { dir: p, per_set });
            }
        }
    }
    let g = groups.len();
    let sizes: Vec<usize> = family.sets().iter().map(|s| s.points.len()).collect();
    let halves: Vec<usize> = sizes.iter().map(|n| n / 2).collect();

    // prefix[j][s]: points of set s in groups 0..j
    let mut prefix = vec![vec![0usize; sets]; g + 1];
    for j in 0..g {
        for s in 0..sets {
            prefix[j + 1][s] = prefix[j][s] + groups[j].per_set[s];
        }
    }
    // Position 2j is the gap before group j, 2j+1 passes through group j.
    // Strictly inside positions (a, b): groups with index in [lo, hi).
    let inside = |a: usize, b: usize, s: usize| {
        let lo = a / 2;
        let hi = b / 2;
        prefix[hi][s] - prefix[lo.min(hi)][s] - if a % 2 == 1 && lo < hi { groups[lo].per_set[s] } else { 0 }
    };
    let closed = |a: usize, b: usize, s: usize| {
        let lo = a / 2;
        let hi = b.div_ceil(2);
        prefix[hi][s] - prefix[lo][s]
    };
    let direction = |pos: usize| -> (Scalar, Scalar) {
        let j = pos / 2;
        if pos % 2 == 1 {
            groups[j].dir.clone()
        } else if j == 0 || j == g {
            (scalar::int(1), m.clone())
        } else {
            (&groups[j - 1].dir.0 + &groups[j].dir.0, &groups[j - 1].dir.1 + &groups[j].dir.1)
        }
    };

    let last = 2 * g;
    let mut b = 0usize;
    for a in 0..last {
        b = b.max(a + 1);
        while b < last && (0..sets).all(|s| inside(a, b + 1, s) <= halves[s]) {
            b += 1;
        }
        if a == 0 && b == last {
            b = last - 1;
        }
        if !(0..sets).all(|s| inside(a, b, s) <= halves[s]) {
            continue;
        }
        if (0..sets).all(|s| closed(a, b, s) + halves[s] >= sizes[s]) {
            let pair = LinePair::new(line_through(q, &direction(a)), line_through(q, &direction(b)));
            if verify(family, &pair).verdict {
                return Ok(pair);
            }
        }
    }
    Err(Error::NoSolutionFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn fam(sets: &[&[(i64, i64)]]) -> PointSetFamily {
        PointSetFamily::from_points(
            sets.iter()
                .map(|s| s.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn check(f: &PointSetFamily, q: &Point) {
        let pair = bisect_two_through_common(f, q).unwrap();
        assert!(pair.first.contains(q) && pair.second.contains(q));
        assert!(verify(f, &pair).verdict, "{pair}");
    }

    #[test]
    fn mirror_pair() {
        check(&fam(&[&[(1, 1), (-1, 1)], &[(2, 1), (-2, 1)]]), &Point::from_ints(0, 0));
    }

    #[test]
    fn small_asymmetric() {
        check(&fam(&[&[(1, 0), (0, 1)], &[(-1, 1), (1, 2)]]), &Point::from_ints(0, 0));
    }

    #[test]
    fn odd_sizes_and_collinear_rays() {
        check(&fam(&[&[(1, 1), (2, 2), (3, 3)], &[(-1, 2), (5, -1), (4, 4), (-2, -4)]]), &Point::from_ints(0, 0));
        check(&fam(&[&[(1, 1), (2, 5), (-3, 3)], &[(7, 1)]]), &Point::from_ints(2, 2));
    }

    #[test]
    fn q_on_input_point() {
        let f = fam(&[&[(1, 1), (-1, 1)], &[(2, 1), (-2, 1)]]);
        assert!(matches!(
            bisect_two_through_common(&f, &Point::from_ints(1, 1)),
            Err(Error::QCoincidesWithInputPoint(_))
        ));
    }

    #[test]
    fn directions_are_nonzero() {
        let d = line_through(&Point::from_ints(1, 2), &(scalar::int(0), scalar::int(1)));
        assert!(d.a.is_positive() || d.a.is_zero());
        assert!(d.contains(&Point::from_ints(1, 7)));
    }
}
