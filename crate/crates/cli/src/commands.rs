//! Subcommand definitions and dispatch.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 malformed input,
//! 3 violated precondition, 4 oracle cap exceeded, 5 solver did not converge.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twocut::bisect::{
    bisect_four_with, bisect_three_parallel_with, bisect_three_through_with, bisect_two_through_common,
    brute_force_oracle_with_cap, gen_counterexample, verify, Constraint, PointSetFamily, SearchOptions,
    DEFAULT_ORACLE_CAP,
};
use twocut::dual::{build_arrangement, dualize_point, projective_levels_stat};
use twocut::mass::{mass_split, solve_masses_report, DEFAULT_MASS_TOLERANCE, DEFAULT_RESTARTS};
use twocut::scalar::{self, Scalar};
use twocut::{Error, LinePair, OrientedLine, Point};

use crate::instance::Instance;
use crate::svg::{render, RenderSpec, Scene};

#[derive(Debug, Parser)]
#[command(name = "twocut", version, about = "Bisect point sets and polygonal masses with two lines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Four sets, lines unconstrained.
    Four,
    /// Three sets, first line parallel to --line.
    Parallel,
    /// Three sets, first line through --point.
    Through,
    /// Two sets, both lines through --point.
    TwoThrough,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a bisecting pair.
    Bisect {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Four)]
        mode: Mode,
        /// Constraint line `a,b,c` for `parallel`.
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
        line: Option<OrientedLine>,
        /// Constraint point `x,y` for `through` and `two-through`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Evaluate candidate cells on the thread pool.
        #[arg(long)]
        parallel_cells: bool,
    },
    /// List every combinatorially distinct bisecting pair.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Four)]
        mode: Mode,
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
        line: Option<OrientedLine>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        /// Largest accepted total number of points.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Check a given pair; exits 0 when it bisects every set.
    Verify {
        input: PathBuf,
        /// The two lines, `--line a,b,c --line a,b,c`.
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true, num_args = 1, required = true)]
        line: Vec<OrientedLine>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evaluate a pair on the polygons (with two --line) or solve for one.
    Masses {
        input: PathBuf,
        #[arg(long, value_parser = parse_line, allow_hyphen_values = true, num_args = 1)]
        line: Vec<OrientedLine>,
        /// Relative residual bound for the solver.
        #[arg(long, default_value_t = DEFAULT_MASS_TOLERANCE)]
        tol: f64,
        /// Solver restarts.
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        cap: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Write a five-cluster family that no two lines bisect.
    GenCounterexample {
        #[arg(long, default_value_t = 2)]
        per_cluster: usize,
        #[arg(long, env = "TWOCUT_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sum over cells of the middle-level size seen from that cell.
    LevelsStats {
        /// Instance whose points are dualized; omit with --random.
        input: Option<PathBuf>,
        /// Use this many random integer points instead of a file.
        #[arg(long, conflicts_with = "input")]
        random: Option<usize>,
        #[arg(long, env = "TWOCUT_SEED", default_value_t = 0)]
        seed: u64,
        /// Per-cell counts as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_scalars<const N: usize>(text: &str) -> Result<[Scalar; N], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got `{text}`"));
    }
    let mut out: [Scalar; N] = std::array::from_fn(|_| scalar::int(0));
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = scalar::parse(p).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

fn parse_line(text: &str) -> Result<OrientedLine, String> {
    let [a, b, c] = parse_scalars::<3>(text)?;
    OrientedLine::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_point(text: &str) -> Result<Point, String> {
    let [x, y] = parse_scalars::<2>(text)?;
    Ok(Point::new(x, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Precondition(String),
    OverCap(String),
    Convergence(String),
    Failed(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::OverCap(_) => 4,
            CliError::Convergence(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::OverCap(m) | CliError::Convergence(m) | CliError::Failed(m) | CliError::Io(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::ParseNumber(_) => CliError::Parse(m),
            Error::InputTooLarge { .. } => CliError::OverCap(m),
            Error::ConvergenceFailure { .. } => CliError::Convergence(m),
            Error::NoSolutionFound => CliError::Failed(m),
            _ => CliError::Precondition(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn io(e: std::io::Error) -> CliError {
    e.into()
}

fn load(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| CliError::Parse(format!("{}:{e}", path.display())))
}

fn scene(inst: &Instance, marker: Option<&Point>) -> Scene {
    Scene {
        sets: inst.sets.iter().map(|s| (s.name.clone(), s.points.clone())).collect(),
        polygons: inst.polygons.iter().map(|p| (p.name.clone(), p.vertices.clone())).collect(),
        marker: marker.cloned(),
    }
}

fn write_svg(path: &Path, scene: &Scene, pair: &LinePair) -> Result<(), CliError> {
    std::fs::write(path, render(&RenderSpec::default(), scene, Some(pair)))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn require<T: Clone>(flag: Option<&T>, file: Option<&T>, what: &str, mode: Mode) -> Result<T, CliError> {
    flag.or(file)
        .cloned()
        .ok_or_else(|| CliError::Precondition(format!("mode {mode:?} needs {what}")))
}

fn report(out: &mut dyn Write, family: &PointSetFamily, pair: &LinePair) -> Result<bool, CliError> {
    writeln!(out, "line 1: {}", pair.first).map_err(io)?;
    writeln!(out, "line 2: {}", pair.second).map_err(io)?;
    let r = verify(family, pair);
    for (set, c) in family.sets().iter().zip(&r.counts) {
        writeln!(
            out,
            "{}: even {} odd {} boundary {} ({})",
            set.name,
            c.even,
            c.odd,
            c.boundary,
            if c.balanced() { "ok" } else { "unbalanced" }
        )
        .map_err(io)?;
    }
    writeln!(out, "verdict: {}", r.verdict).map_err(io)?;
    Ok(r.verdict)
}

fn constraint(mode: Mode, line: Option<&OrientedLine>, point: Option<&Point>, inst: &Instance) -> Result<Constraint, CliError> {
    Ok(match mode {
        Mode::Four => Constraint::None,
        Mode::Parallel => Constraint::Parallel(require(line, inst.line.as_ref(), "--line", mode)?),
        Mode::Through => Constraint::Through(require(point, inst.point.as_ref(), "--point", mode)?),
        Mode::TwoThrough => Constraint::BothThrough(require(point, inst.point.as_ref(), "--point", mode)?),
    })
}

/// Runs one command, writing the report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Bisect {
            input,
            mode,
            line,
            point,
            svg,
            parallel_cells,
        } => {
            let inst = load(input)?;
            let family = inst.family()?;
            let opts = SearchOptions {
                parallel: *parallel_cells,
            };
            let c = constraint(*mode, line.as_ref(), point.as_ref(), &inst)?;
            let pair = match &c {
                Constraint::None => bisect_four_with(&family, &opts)?,
                Constraint::Parallel(l) => bisect_three_parallel_with(&family, l, &opts)?,
                Constraint::Through(q) => bisect_three_through_with(&family, q, &opts)?,
                Constraint::BothThrough(q) => bisect_two_through_common(&family, q)?,
            };
            let ok = report(out, &family, &pair)?;
            if let Some(path) = svg {
                let marker = match &c {
                    Constraint::Through(q) | Constraint::BothThrough(q) => Some(q),
                    _ => None,
                };
                write_svg(path, &scene(&inst, marker), &pair)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Oracle {
            input,
            mode,
            line,
            point,
            cap,
        } => {
            let inst = load(input)?;
            let family = inst.family()?;
            let c = constraint(*mode, line.as_ref(), point.as_ref(), &inst)?;
            let solutions = brute_force_oracle_with_cap(&family, &c, *cap)?;
            // lexicographic by printed form
            let sorted: BTreeMap<String, &LinePair> = solutions.iter().map(|p| (p.to_string(), p)).collect();
            if sorted.is_empty() {
                writeln!(out, "none").map_err(io)?;
                return Ok(1);
            }
            for (k, text) in sorted.keys().enumerate() {
                writeln!(out, "solution {}: {text}", k + 1).map_err(io)?;
            }
            writeln!(out, "{} solutions", sorted.len()).map_err(io)?;
            Ok(0)
        }
        Command::Verify { input, line, svg } => {
            if line.len() != 2 {
                return Err(CliError::Parse(format!("verify takes exactly two --line, got {}", line.len())));
            }
            let inst = load(input)?;
            let family = inst.family()?;
            let pair = LinePair::new(line[0].clone(), line[1].clone());
            let ok = report(out, &family, &pair)?;
            if let Some(path) = svg {
                write_svg(path, &scene(&inst, None), &pair)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Masses {
            input,
            line,
            tol,
            cap,
            svg,
        } => {
            let inst = load(input)?;
            let masses = inst.masses()?;
            if masses.is_empty() {
                return Err(CliError::Precondition("the instance has no polygons".into()));
            }
            let pair = match line.len() {
                2 => LinePair::new(line[0].clone(), line[1].clone()),
                0 => {
                    let s = solve_masses_report(&masses, *tol, *cap, true)?;
                    writeln!(out, "line 1: {}", s.pair.first).map_err(io)?;
                    writeln!(out, "line 2: {}", s.pair.second).map_err(io)?;
                    writeln!(out, "restart {} after {} iterations", s.restart, s.iterations).map_err(io)?;
                    for ((spec, m), f) in inst.polygons.iter().zip(&masses).zip(&s.residuals) {
                        let rel = scalar::to_f64(&(f / m.total()));
                        writeln!(out, "{}: residual {} (relative {rel:.3e})", spec.name, scalar::format(f)).map_err(io)?;
                    }
                    s.pair
                }
                n => return Err(CliError::Parse(format!("masses takes zero or two --line, got {n}"))),
            };
            if line.len() == 2 {
                for (spec, m) in inst.polygons.iter().zip(&masses) {
                    let (even, odd) = mass_split(m, &pair);
                    writeln!(
                        out,
                        "{}: even {} odd {} total {}",
                        spec.name,
                        scalar::format(&even),
                        scalar::format(&odd),
                        scalar::format(&m.total())
                    )
                    .map_err(io)?;
                }
            }
            if let Some(path) = svg {
                write_svg(path, &scene(&inst, None), &pair)?;
            }
            Ok(0)
        }
        Command::GenCounterexample { per_cluster, seed, out: path } => {
            if *per_cluster == 0 {
                return Err(CliError::Precondition("--per-cluster must be positive".into()));
            }
            let text = Instance::from_family(&gen_counterexample(*per_cluster, *seed)).to_text();
            match path {
                Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::LevelsStats {
            input,
            random,
            seed,
            csv,
        } => {
            let points: Vec<Point> = match (input, random) {
                (Some(path), _) => {
                    let inst = load(path)?;
                    inst.family()?.labelled_points().map(|(_, p)| p.clone()).collect()
                }
                (None, Some(n)) => random_points(*n, *seed),
                (None, None) => return Err(CliError::Parse("give an instance file or --random N".into())),
            };
            if points.is_empty() {
                return Err(CliError::Precondition("no points".into()));
            }
            let lines: Vec<_> = points.iter().map(dualize_point).collect();
            let arr = build_arrangement(&lines)?;
            let stats = projective_levels_stat(&arr);
            let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
            for (_, m) in &stats.per_cell {
                *histogram.entry(*m).or_default() += 1;
            }
            writeln!(out, "lines: {}", lines.len()).map_err(io)?;
            writeln!(out, "cells: {}", stats.per_cell.len()).map_err(io)?;
            writeln!(out, "total: {}", stats.total).map_err(io)?;
            writeln!(out, "max: {}", stats.max()).map_err(io)?;
            writeln!(out, "histogram (edges: cells):").map_err(io)?;
            for (m, count) in &histogram {
                writeln!(out, "  {m}: {count}").map_err(io)?;
            }
            if let Some(path) = csv {
                let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
                w.write_record(["cell", "middle_level_edges"]).map_err(|e| CliError::Io(e.to_string()))?;
                for (cell, m) in &stats.per_cell {
                    w.write_record([cell.to_string(), m.to_string()]).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.flush()?;
            }
            Ok(0)
        }
    }
}

/// Distinct integer points in `[-1000, 1000]²`.
fn random_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        if seen.insert(p) {
            out.push(Point::from_ints(p.0, p.1));
        }
    }
    out
}
