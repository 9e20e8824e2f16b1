//! Level walks checked against direct sign counting on every arrangement edge.

mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use common::levels::{brute_level, segment_of, side};
use proptest::prelude::*;
use twocut::dual::{build_arrangement, projective_levels_stat, walk_levels, DualLine, LevelPosition, Pole};
use twocut::scalar;
use twocut::{Point, Side};

fn walked(lines: &[DualLine], pole: &Pole, t: usize) -> BTreeSet<(usize, usize)> {
    let arr = build_arrangement(lines).unwrap();
    let mut out = BTreeSet::new();
    let _ = walk_levels::<(), _>(&arr, pole, 1, t..=t, |c| {
        if let LevelPosition::Edge(h) = c.position {
            let l = arr.half_edge(h).line.unwrap();
            let fresh = out.insert((l, segment_of(lines, l, &arr.edge_midpoint(h))));
            assert!(fresh, "edge walked twice");
        }
        ControlFlow::Continue(())
    });
    out
}

fn distinct_lines() -> impl Strategy<Value = Vec<DualLine>> {
    prop::collection::btree_set((-6i64..=6, -6i64..=6), 1..=8).prop_map(|set| {
        set.into_iter()
            .map(|(m, k)| DualLine::new(scalar::int(m), scalar::int(k), (0, 0)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn middle_level_per_cell_matches_brute_force(lines in distinct_lines()) {
        let arr = build_arrangement(&lines).unwrap();
        let stats = projective_levels_stat(&arr);
        let n = lines.len();
        let mut total = 0;
        for (f, m) in &stats.per_cell {
            let rep = arr.representative(*f);
            let flags: Vec<Side> = lines.iter().map(|l| side(l, &rep)).collect();
            let expected = brute_level(&lines, &flags, n / 2).len();
            prop_assert_eq!(*m, expected);
            total += expected;
        }
        prop_assert_eq!(stats.total, total);
    }

    #[test]
    fn vertex_pole_levels_match_brute_force(lines in distinct_lines(), pick in 0usize..1000) {
        let arr = build_arrangement(&lines).unwrap();
        prop_assume!(arr.num_vertices() > 0);
        let v = pick % arr.num_vertices();
        let point = arr.vertex(v).point.clone();
        let flags: Vec<Side> = lines.iter().map(|l| side(l, &point)).collect();
        let active = flags.iter().filter(|s| **s != Side::Zero).count();
        for t in 0..active {
            prop_assert_eq!(walked(&lines, &Pole::Vertex(v), t), brute_level(&lines, &flags, t));
        }
    }

    #[test]
    fn unsigned_levels_match_brute_force(lines in distinct_lines()) {
        let flags = vec![Side::Positive; lines.len()];
        for t in 0..lines.len() {
            prop_assert_eq!(walked(&lines, &Pole::VerticalInfinity, t), brute_level(&lines, &flags, t));
        }
    }

    #[test]
    fn point_pole_middle_level_matches_brute_force(lines in distinct_lines(), x in -20i64..20, y in -20i64..20) {
        let p = Point::from_ints(x, y);
        let flags: Vec<Side> = lines.iter().map(|l| side(l, &p)).collect();
        prop_assume!(!flags.contains(&Side::Zero));
        let t = lines.len() / 2;
        prop_assert_eq!(walked(&lines, &Pole::Point(p), t), brute_level(&lines, &flags, t));
    }
}
