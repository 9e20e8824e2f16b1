use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use twocut::bisect::gen_counterexample;
use twocut_cli::Instance;

const MIRROR: &str = "twocut 1
set P1
1 1
-1 1
set P2
2 1
-2 1
set P3
3 -1
-3 -1
set P4
1/2 5
-1/2 5
";

const THREE: &str = "twocut 1
set A
1 2
3 -1
0 4
set B
-2 -3
5 5
set C
7 1
-1 -1
2 2
";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_twocut"));
    c.env_remove("TWOCUT_SEED");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn first_line(o: &Output) -> twocut::OrientedLine {
    let text = stdout(o);
    let coeffs = text.lines().next().unwrap().strip_prefix("line 1: ").unwrap();
    let v: Vec<_> = coeffs.split(',').map(|t| twocut::scalar::parse(t).unwrap()).collect();
    twocut::OrientedLine::new(v[0].clone(), v[1].clone(), v[2].clone()).unwrap()
}

#[test]
fn bisect_four_mirror() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.txt", MIRROR);
    let o = run(&["bisect", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: true"));
}

#[test]
fn parallel_to_x_axis_has_slope_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.txt", THREE);
    let o = run(&["bisect", s(&f), "--mode", "parallel", "--line", "0,1,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let l = first_line(&o);
    assert_eq!(l.a, twocut::scalar::int(0));
}

#[test]
fn through_and_two_through() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.txt", THREE);
    let o = run(&["bisect", s(&f), "--mode", "through", "--point", "-1/2,3/7"]);
    assert_eq!(o.status.code(), Some(0));
    let q = twocut::Point::new(twocut::scalar::ratio(-1, 2), twocut::scalar::ratio(3, 7));
    assert!(first_line(&o).contains(&q));

    let two = write(&dir, "two.txt", "twocut 1\nset A\n1 2\n3 -1\n0 4\nset B\n-2 -3\n5 5\npoint 1/3 0\n");
    let o = run(&["bisect", s(&two), "--mode", "two-through"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "twocut 1\nset A\n1 2\n3 x\n");
    let o = run(&["bisect", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4:3:"));

    let three = write(&dir, "t.txt", THREE);
    assert_eq!(run(&["bisect", s(&three)]).status.code(), Some(3));
    assert_eq!(run(&["bisect", s(&three), "--mode", "parallel"]).status.code(), Some(3));

    let dup = write(&dir, "d.txt", "twocut 1\nset A\n1 1\nset B\n1 1\n");
    assert_eq!(run(&["verify", s(&dup), "--line", "1,0,0", "--line", "0,1,0"]).status.code(), Some(3));

    let two = write(&dir, "two.txt", "twocut 1\nset A\n1 2\nset B\n3 3\n");
    let o = run(&["bisect", s(&two), "--mode", "two-through", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(3));

    assert_eq!(run(&["bisect", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["verify", s(&two), "--line", "1,0"]).status.code(), Some(2));
}

#[test]
fn verify_exit_code_tracks_verdict() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.txt", MIRROR);
    assert_eq!(run(&["verify", s(&f), "--line", "1,0,0", "--line", "0,1,-3"]).status.code(), Some(0));
    let o = run(&["verify", s(&f), "--line", "1,0,-10", "--line", "0,1,-10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unbalanced"));
}

#[test]
fn oracle_cap_and_counterexample() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.txt", MIRROR);
    let o = run(&["oracle", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("solution 1: "));
    assert_eq!(run(&["oracle", s(&f), "--cap", "4"]).status.code(), Some(4));

    let ce = dir.path().join("ce.txt");
    let o = run(&["gen-counterexample", "--seed", "3", "--out", s(&ce)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["oracle", s(&ce)]);
    assert_eq!(stdout(&o).trim(), "none");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn counterexample_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let ce = dir.path().join("ce.txt");
    run(&["gen-counterexample", "--per-cluster", "3", "--seed", "11", "--out", s(&ce)]);
    let inst = Instance::parse(&std::fs::read_to_string(&ce).unwrap()).unwrap();
    assert_eq!(inst.family().unwrap(), gen_counterexample(3, 11));
}

#[test]
fn seed_env_sets_default() {
    let via_env = bin().args(["gen-counterexample"]).env("TWOCUT_SEED", "9").output().unwrap();
    let via_flag = run(&["gen-counterexample", "--seed", "9"]);
    let default = run(&["gen-counterexample"]);
    assert_eq!(via_env.stdout, via_flag.stdout);
    assert_ne!(via_env.stdout, default.stdout);
}

#[test]
fn svg_has_two_region_colours() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.txt", MIRROR);
    let svg = dir.path().join("out.svg");
    let o = run(&["bisect", s(&f), "--svg", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let fills: BTreeSet<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("region")))
        .map(|n| n.attribute("fill").unwrap())
        .collect();
    assert_eq!(fills.len(), 2);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 8);
}

#[test]
fn masses_eval_and_solve() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "m.txt",
        "twocut 1\npolygon S density 1\n-1 -1\n1 -1\n1 1\n-1 1\npolygon T\n0 0\n2 0\n0 2\n",
    );
    let o = run(&["masses", s(&f), "--line", "1,0,0", "--line", "0,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("S: even 2 odd 2 total 4"), "{text}");
    assert!(text.contains("T: even 2 odd 0 total 2"), "{text}");

    let o = run(&["masses", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("S: residual"));

    let o = run(&["masses", s(&f), "--tol", "0", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(5), "{}", stdout(&o));
}

#[test]
fn levels_stats_two_lines() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "l.txt", "twocut 1\nset A\n1 0\n-1 3\n");
    let csv = dir.path().join("cells.csv");
    let o = run(&["levels-stats", s(&f), "--csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 8"), "{}", stdout(&o));
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert!(rows.starts_with("cell,middle_level_edges"));

    let o = run(&["levels-stats", "--random", "6", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lines: 6"));
}
