//! Level sets by direct sign counting, independent of the arrangement.

use std::collections::BTreeSet;

use num::Zero;
use twocut::dual::DualLine;
use twocut::scalar::{self, Scalar};
use twocut::{Point, Side};

pub fn side(l: &DualLine, p: &Point) -> Side {
    l.side_of(p)
}

/// Every edge of the arrangement as `(line, segment index along the line)`
/// with a point inside it.
pub fn brute_edges(lines: &[DualLine]) -> Vec<(usize, usize, Point)> {
    let mut out = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let mut xs: Vec<Scalar> = lines
            .iter()
            .filter(|m| m.slope != l.slope)
            .map(|m| (&m.intercept - &l.intercept) / (&l.slope - &m.slope))
            .collect();
        xs.sort();
        xs.dedup();
        let one = scalar::int(1);
        let mut probes = Vec::new();
        if xs.is_empty() {
            probes.push(Scalar::zero());
        } else {
            probes.push(&xs[0] - &one);
            for w in xs.windows(2) {
                probes.push((&w[0] + &w[1]) / scalar::int(2));
            }
            probes.push(xs.last().unwrap() + &one);
        }
        for (k, x) in probes.into_iter().enumerate() {
            let y = l.eval_at(&x);
            out.push((i, k, Point::new(x, y)));
        }
    }
    out
}

pub fn segment_of(lines: &[DualLine], l: usize, p: &Point) -> usize {
    let mut xs: Vec<Scalar> = lines
        .iter()
        .filter(|m| m.slope != lines[l].slope)
        .map(|m| (&m.intercept - &lines[l].intercept) / (&lines[l].slope - &m.slope))
        .collect();
    xs.sort();
    xs.dedup();
    xs.iter().filter(|x| **x < p.x).count()
}

/// Level-`t` edges for a pole with the given flags.
pub fn brute_level(lines: &[DualLine], flags: &[Side], t: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for (l, k, p) in brute_edges(lines) {
        let below: usize = lines
            .iter()
            .enumerate()
            .filter(|(m, line)| *m != l && flags[*m] != Side::Zero && side(line, &p) == flags[*m])
            .count();
        let step = usize::from(flags[l] != Side::Zero);
        if below <= t && t < below + step {
            out.insert((l, k));
        }
    }
    out
}

