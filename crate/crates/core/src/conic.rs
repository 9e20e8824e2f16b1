//! Conics `ax² + by² + cxy + dx + ey + g`, their degeneracy determinant and
//! the split of a degenerate conic into linear factors.
//!
//! Classification is exact. Factors of a line pair are exact rationals when
//! the discriminant is a rational square and `f64` otherwise.

use std::cmp::Ordering;
use std::ops::Neg;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{OrientedLine, Point};
use crate::scalar::{self, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub g: Scalar,
}

impl Conic {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, e: Scalar, g: Scalar) -> Result<Self> {
        let q = Conic { a, b, c, d, e, g };
        if q.coefficients().iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroConic);
        }
        Ok(q)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, e: i64, g: i64) -> Result<Self> {
        let i = scalar::int;
        Conic::new(i(a), i(b), i(c), i(d), i(e), i(g))
    }

    /// The product of two linear forms.
    pub fn from_product(l1: &OrientedLine, l2: &OrientedLine) -> Self {
        Conic {
            a: &l1.a * &l2.a,
            b: &l1.b * &l2.b,
            c: &l1.a * &l2.b + &l2.a * &l1.b,
            d: &l1.a * &l2.c + &l2.a * &l1.c,
            e: &l1.b * &l2.c + &l2.b * &l1.c,
            g: &l1.c * &l2.c,
        }
    }

    pub fn coefficients(&self) -> [&Scalar; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.g]
    }

    pub fn scaled(&self, k: &Scalar) -> Conic {
        Conic {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
            e: &self.e * k,
            g: &self.g * k,
        }
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        eval(self, p)
    }

    /// Symmetric matrix `M` with `q(x, y) = (x, y, 1) M (x, y, 1)ᵀ`.
    pub fn matrix(&self) -> [[Scalar; 3]; 3] {
        let two = scalar::int(2);
        let h = |v: &Scalar| v / &two;
        [
            [self.a.clone(), h(&self.c), h(&self.d)],
            [h(&self.c), self.b.clone(), h(&self.e)],
            [h(&self.d), h(&self.e), self.g.clone()],
        ]
    }

    /// Sign change that makes the first nonzero coefficient positive.
    fn orientation(&self) -> Ordering {
        self.coefficients()
            .iter()
            .map(|v| scalar::sign(v))
            .find(|s| *s != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }
}

impl Neg for &Conic {
    type Output = Conic;
    fn neg(self) -> Conic {
        self.scaled(&scalar::int(-1))
    }
}

pub fn eval(q: &Conic, p: &Point) -> Scalar {
    &q.a * &p.x * &p.x + &q.b * &p.y * &p.y + &q.c * &p.x * &p.y + &q.d * &p.x + &q.e * &p.y + &q.g
}

pub fn degeneracy_det(q: &Conic) -> Scalar {
    det3(&q.matrix())
}

fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn rank3(m: &[[Scalar; 3]; 3]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..3).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..3 {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                for c in col..3 {
                    let sub = &f * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A linear factor `ax + by + c`, exact when rational.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub exact: Option<OrientedLine>,
}

impl LinearFactor {
    fn exact(line: OrientedLine) -> Self {
        let (a, b, c) = line.to_f64();
        LinearFactor {
            a,
            b,
            c,
            exact: Some(line),
        }
    }

    fn approx(a: f64, b: f64, c: f64) -> Self {
        LinearFactor {
            a,
            b,
            c,
            exact: None,
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        self.a == 0.0 && self.b == 0.0
    }

    /// Unit coefficient vector with the first nonzero entry positive.
    pub fn normalized(&self) -> [f64; 3] {
        let n = (self.a * self.a + self.b * self.b + self.c * self.c).sqrt();
        let mut v = [self.a / n, self.b / n, self.c / n];
        if v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    /// `q = scale * first * second`; `second` may be the line at infinity.
    TwoLines {
        first: LinearFactor,
        second: LinearFactor,
        scale: f64,
    },
    /// `q = scale * line²`.
    DoubleLine { line: LinearFactor, scale: f64 },
    SinglePoint(Point),
    Empty,
    NonDegenerate,
}

/// Classifies `q` and, for line pairs, returns factors whose product
/// reproduces `q`. Decomposing `-q` yields the same factors with the scale
/// negated.
pub fn decompose(q: &Conic, tol: f64) -> Result<Decomposition> {
    let orientation = q.orientation();
    if orientation == Ordering::Equal {
        return Err(Error::ZeroConic);
    }
    if !degeneracy_det(q).is_zero() {
        return Ok(Decomposition::NonDegenerate);
    }
    let flip = orientation == Ordering::Less;
    let canon = if flip { -q } else { q.clone() };
    let out = decompose_canonical(&canon, tol)?;
    Ok(if flip { negate_scale(out) } else { out })
}

fn negate_scale(d: Decomposition) -> Decomposition {
    match d {
        Decomposition::TwoLines {
            first,
            second,
            scale,
        } => Decomposition::TwoLines {
            first,
            second,
            scale: -scale,
        },
        Decomposition::DoubleLine { line, scale } => Decomposition::DoubleLine {
            line,
            scale: -scale,
        },
        other => other,
    }
}

fn decompose_canonical(q: &Conic, tol: f64) -> Result<Decomposition> {
    let m = q.matrix();
    let rank = rank3(&m);
    if rank == 1 {
        let r = (0..3).find(|&r| !m[r][r].is_zero()).expect("rank-1 symmetric has a nonzero diagonal");
        let line = OrientedLine::new(m[r][0].clone(), m[r][1].clone(), m[r][2].clone())?;
        let scale = scalar::to_f64(&(scalar::int(1) / &m[r][r]));
        return Ok(Decomposition::DoubleLine {
            line: LinearFactor::exact(line),
            scale,
        });
    }
    debug_assert_eq!(rank, 2);
    let quadratic_zero = q.a.is_zero() && q.b.is_zero() && q.c.is_zero();
    if quadratic_zero {
        let finite = OrientedLine::new(q.d.clone(), q.e.clone(), q.g.clone())?;
        return Ok(Decomposition::TwoLines {
            first: LinearFactor::exact(finite),
            second: LinearFactor::exact(OrientedLine::at_infinity()),
            scale: 1.0,
        });
    }
    let disc = &q.c * &q.c - scalar::int(4) * &q.a * &q.b;
    let out = match scalar::sign(&disc) {
        Ordering::Less => {
            let (sx, sy) = center(q);
            Decomposition::SinglePoint(Point::new(sx, sy))
        }
        Ordering::Greater => crossing_lines(q, &disc),
        Ordering::Equal => parallel_lines(q),
    };
    check_reconstruction(q, &out, tol)?;
    Ok(out)
}

/// Solves the gradient equations; requires `c² - 4ab != 0`.
fn center(q: &Conic) -> (Scalar, Scalar) {
    // [2a c; c 2b] (x, y) = -(d, e)
    let two = scalar::int(2);
    let det = scalar::int(4) * &q.a * &q.b - &q.c * &q.c;
    let x = (-(&q.d) * (&two * &q.b) + &q.c * &q.e) / &det;
    let y = (-(&q.e) * (&two * &q.a) + &q.c * &q.d) / &det;
    (x, y)
}

fn crossing_lines(q: &Conic, disc: &Scalar) -> Decomposition {
    let (sx, sy) = center(q);
    // q = a X² + c XY + b Y² in coordinates centred at the singular point.
    if q.a.is_zero() {
        let first = OrientedLine::new(scalar::int(0), scalar::int(1), -sy.clone()).expect("nonzero");
        let second = OrientedLine::new(q.c.clone(), q.b.clone(), -(&q.c * &sx) - &q.b * &sy)
            .expect("c != 0 when a = 0 and c² - 4ab > 0");
        return Decomposition::TwoLines {
            first: LinearFactor::exact(first),
            second: LinearFactor::exact(second),
            scale: 1.0,
        };
    }
    let two_a = scalar::int(2) * &q.a;
    if let Some(root) = scalar::exact_sqrt(disc) {
        let factor = |r: Scalar| {
            let line = OrientedLine::new(scalar::int(1), -r.clone(), -(&sx) + &r * &sy).expect("nonzero");
            LinearFactor::exact(line)
        };
        let r1 = (-(&q.c) + &root) / &two_a;
        let r2 = (-(&q.c) - &root) / &two_a;
        return Decomposition::TwoLines {
            first: factor(r1),
            second: factor(r2),
            scale: scalar::to_f64(&q.a),
        };
    }
    let (a, c) = (scalar::to_f64(&q.a), scalar::to_f64(&q.c));
    let b = scalar::to_f64(&q.b);
    let root = scalar::to_f64(disc).sqrt();
    // cancellation-free quadratic roots
    let t = -0.5 * (c + if c >= 0.0 { root } else { -root });
    let r1 = t / a;
    let r2 = b / t;
    let (fx, fy) = (scalar::to_f64(&sx), scalar::to_f64(&sy));
    let factor = |r: f64| LinearFactor::approx(1.0, -r, -fx + r * fy);
    Decomposition::TwoLines {
        first: factor(r1),
        second: factor(r2),
        scale: a,
    }
}

fn parallel_lines(q: &Conic) -> Decomposition {
    // Quadratic part is k * w² with w = n·(x, y).
    let (n1, n2, k) = if !q.a.is_zero() {
        (q.a.clone(), &q.c / scalar::int(2), scalar::int(1) / &q.a)
    } else {
        (&q.c / scalar::int(2), q.b.clone(), scalar::int(1) / &q.b)
    };
    let lambda = if !n1.is_zero() { &q.d / &n1 } else { &q.e / &n2 };
    let disc = &lambda * &lambda - scalar::int(4) * &k * &q.g;
    match scalar::sign(&disc) {
        Ordering::Less => Decomposition::Empty,
        Ordering::Equal => unreachable!("double roots have rank one"),
        Ordering::Greater => {
            let two_k = scalar::int(2) * &k;
            let scale = scalar::to_f64(&k);
            if let Some(root) = scalar::exact_sqrt(&disc) {
                let factor = |w: Scalar| {
                    LinearFactor::exact(OrientedLine::new(n1.clone(), n2.clone(), -w).expect("nonzero"))
                };
                Decomposition::TwoLines {
                    first: factor((-(&lambda) + &root) / &two_k),
                    second: factor((-(&lambda) - &root) / &two_k),
                    scale,
                }
            } else {
                let (l, kk, r) = (scalar::to_f64(&lambda), scalar::to_f64(&k), scalar::to_f64(&disc).sqrt());
                let (a, b) = (scalar::to_f64(&n1), scalar::to_f64(&n2));
                let t = -0.5 * (l + if l >= 0.0 { r } else { -r });
                let w1 = t / kk;
                let w2 = scalar::to_f64(&q.g) / t;
                Decomposition::TwoLines {
                    first: LinearFactor::approx(a, b, -w1),
                    second: LinearFactor::approx(a, b, -w2),
                    scale,
                }
            }
        }
    }
}

fn check_reconstruction(q: &Conic, d: &Decomposition, tol: f64) -> Result<()> {
    let Decomposition::TwoLines {
        first,
        second,
        scale,
    } = d
    else {
        return Ok(());
    };
    if first.exact.is_some() && second.exact.is_some() {
        return Ok(());
    }
    let rebuilt = expand_f64(first, second, *scale);
    let target: Vec<f64> = q.coefficients().iter().map(|v| scalar::to_f64(v)).collect();
    let norm = target.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let err = rebuilt
        .iter()
        .zip(&target)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if err <= tol.max(f64::EPSILON) * norm * 64.0 {
        Ok(())
    } else {
        Err(Error::NotALinePair)
    }
}

/// Coefficients `(a, b, c, d, e, g)` of `scale * l1 * l2`.
pub fn expand_f64(l1: &LinearFactor, l2: &LinearFactor, scale: f64) -> [f64; 6] {
    [
        scale * l1.a * l2.a,
        scale * l1.b * l2.b,
        scale * (l1.a * l2.b + l2.a * l1.b),
        scale * (l1.a * l2.c + l2.a * l1.c),
        scale * (l1.b * l2.c + l2.b * l1.c),
        scale * l1.c * l2.c,
    ]
}

/// Any line-pair factorisation of `q` has a factor free of `x`.
pub fn constraint_parallel_x(q: &Conic) -> bool {
    q.a.is_zero()
}

/// Any line-pair factorisation of `q` has a factor through the origin.
pub fn constraint_through_origin(q: &Conic) -> bool {
    q.g.is_zero()
}

/// Both factors pass through the origin; the conic is then always degenerate.
pub fn constraint_both_through_origin(q: &Conic) -> bool {
    q.d.is_zero() && q.e.is_zero() && q.g.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lines_match(f: &LinearFactor, l: &OrientedLine) -> bool {
        let g = LinearFactor::exact(l.clone()).normalized();
        let h = f.normalized();
        g.iter().zip(h.iter()).all(|(x, y)| (x - y).abs() <= 1e-9)
    }

    fn pair_matches(d: &Decomposition, l1: &OrientedLine, l2: &OrientedLine) -> bool {
        match d {
            Decomposition::TwoLines { first, second, .. } => {
                (lines_match(first, l1) && lines_match(second, l2))
                    || (lines_match(first, l2) && lines_match(second, l1))
            }
            _ => false,
        }
    }

    fn example() -> Conic {
        // (x + y - 1)(x - y + 2)
        Conic::from_ints(1, -1, 0, 1, 3, -2).unwrap()
    }

    #[test]
    fn eval_examples() {
        let circle = Conic::from_ints(1, 1, 0, 0, 0, -1).unwrap();
        assert_eq!(eval(&circle, &Point::from_ints(1, 0)), scalar::int(0));
        let xy = Conic::from_ints(0, 0, 1, 0, 0, 0).unwrap();
        assert_eq!(eval(&xy, &Point::from_ints(2, 3)), scalar::int(6));
        assert_eq!(eval(&example(), &Point::from_ints(0, 0)), scalar::int(-2));
    }

    #[test]
    fn product_expansion_matches_hand_expansion() {
        let l1 = OrientedLine::from_ints(1, 1, -1);
        let l2 = OrientedLine::from_ints(1, -1, 2);
        assert_eq!(Conic::from_product(&l1, &l2), example());
    }

    #[test]
    fn det_examples() {
        let circle = Conic::from_ints(1, 1, 0, 0, 0, -1).unwrap();
        assert_eq!(degeneracy_det(&circle), scalar::int(-1));
        let xy = Conic::from_ints(0, 0, 1, 0, 0, 0).unwrap();
        assert_eq!(degeneracy_det(&xy), scalar::int(0));
        assert_eq!(degeneracy_det(&example()), scalar::int(0));
    }

    #[test]
    fn decompose_examples() {
        let xy = Conic::from_ints(0, 0, 1, 0, 0, 0).unwrap();
        let d = decompose(&xy, DEFAULT_TOLERANCE).unwrap();
        assert!(pair_matches(&d, &OrientedLine::from_ints(1, 0, 0), &OrientedLine::from_ints(0, 1, 0)));

        let diff = Conic::from_ints(1, -1, 0, 0, 0, 0).unwrap();
        let d = decompose(&diff, DEFAULT_TOLERANCE).unwrap();
        assert!(pair_matches(&d, &OrientedLine::from_ints(1, 1, 0), &OrientedLine::from_ints(1, -1, 0)));

        let point = Conic::from_ints(1, 1, 0, 0, 0, 0).unwrap();
        assert_eq!(
            decompose(&point, DEFAULT_TOLERANCE).unwrap(),
            Decomposition::SinglePoint(Point::from_ints(0, 0))
        );

        let d = decompose(&example(), DEFAULT_TOLERANCE).unwrap();
        assert!(pair_matches(&d, &OrientedLine::from_ints(1, 1, -1), &OrientedLine::from_ints(1, -1, 2)));
    }

    #[test]
    fn decompose_special_cases() {
        let circle = Conic::from_ints(1, 1, 0, 0, 0, -1).unwrap();
        assert_eq!(decompose(&circle, DEFAULT_TOLERANCE).unwrap(), Decomposition::NonDegenerate);

        // 2x + 3y - 1 times the line at infinity
        let linear = Conic::from_ints(0, 0, 0, 2, 3, -1).unwrap();
        match decompose(&linear, DEFAULT_TOLERANCE).unwrap() {
            Decomposition::TwoLines { first, second, .. } => {
                assert!(lines_match(&first, &OrientedLine::from_ints(2, 3, -1)));
                assert!(second.is_at_infinity());
            }
            other => panic!("{other:?}"),
        }

        // (x - 1)²
        let double = Conic::from_ints(1, 0, 0, -2, 0, 1).unwrap();
        match decompose(&double, DEFAULT_TOLERANCE).unwrap() {
            Decomposition::DoubleLine { line, scale } => {
                assert!(lines_match(&line, &OrientedLine::from_ints(1, 0, -1)));
                assert!(scale > 0.0);
            }
            other => panic!("{other:?}"),
        }

        // (x - 1)(x + 2): parallel pair
        let parallel = Conic::from_ints(1, 0, 0, 1, 0, -2).unwrap();
        let d = decompose(&parallel, DEFAULT_TOLERANCE).unwrap();
        assert!(pair_matches(&d, &OrientedLine::from_ints(1, 0, -1), &OrientedLine::from_ints(1, 0, 2)));

        // x² + 1: imaginary parallel pair
        let empty = Conic::from_ints(1, 0, 0, 0, 0, 1).unwrap();
        assert_eq!(decompose(&empty, DEFAULT_TOLERANCE).unwrap(), Decomposition::Empty);

        // constant: the doubled line at infinity
        let constant = Conic::from_ints(0, 0, 0, 0, 0, -3).unwrap();
        match decompose(&constant, DEFAULT_TOLERANCE).unwrap() {
            Decomposition::DoubleLine { line, scale } => {
                assert!(line.is_at_infinity());
                assert!(scale < 0.0);
            }
            other => panic!("{other:?}"),
        }

        assert_eq!(Conic::from_ints(0, 0, 0, 0, 0, 0), Err(Error::ZeroConic));
    }

    #[test]
    fn irrational_factors_are_accurate() {
        // x² - 2y² = (x - √2 y)(x + √2 y)
        let q = Conic::from_ints(1, -2, 0, 0, 0, 0).unwrap();
        match decompose(&q, DEFAULT_TOLERANCE).unwrap() {
            Decomposition::TwoLines { first, second, scale } => {
                assert!(first.exact.is_none());
                let c = expand_f64(&first, &second, scale);
                let want = [1.0, -2.0, 0.0, 0.0, 0.0, 0.0];
                for (x, y) in c.iter().zip(want) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
            other => panic!("{other:?}"),
        }
        // (x - 1)² - 3 = 0: irrational parallel pair
        let q = Conic::from_ints(1, 0, 0, -2, 0, -2).unwrap();
        assert!(matches!(decompose(&q, DEFAULT_TOLERANCE).unwrap(), Decomposition::TwoLines { .. }));
    }

    #[test]
    fn constraint_examples() {
        let y_times = Conic::from_ints(0, 1, 1, 0, -1, 0).unwrap();
        assert!(constraint_parallel_x(&y_times));
        assert!(!constraint_parallel_x(&Conic::from_ints(1, -1, 0, 0, 0, 0).unwrap()));
        assert!(constraint_parallel_x(&Conic::from_ints(0, 1, 0, 0, 3, -10).unwrap()));

        let xy = Conic::from_ints(0, 0, 1, 0, 0, 0).unwrap();
        assert!(constraint_through_origin(&xy));
        assert!(!constraint_through_origin(&Conic::from_ints(1, 1, 0, 0, 0, -1).unwrap()));
        let through = Conic::from_product(&OrientedLine::from_ints(1, 1, 0), &OrientedLine::from_ints(1, -1, 2));
        assert!(constraint_through_origin(&through));

        assert!(constraint_both_through_origin(&xy));
        assert!(constraint_both_through_origin(&Conic::from_ints(1, -1, 0, 0, 0, 0).unwrap()));
        assert!(!constraint_both_through_origin(&Conic::from_ints(0, 0, 1, 1, 0, 0).unwrap()));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-9i64..10, 1i64..4).prop_map(|(n, d)| scalar::ratio(n, d))
    }

    fn conic() -> impl Strategy<Value = Conic> {
        prop::array::uniform6(small())
            .prop_filter_map("nonzero", |[a, b, c, d, e, g]| Conic::new(a, b, c, d, e, g).ok())
    }

    fn finite_line() -> impl Strategy<Value = OrientedLine> {
        (small(), small(), small())
            .prop_filter("finite", |(a, b, _)| !(a.is_zero() && b.is_zero()))
            .prop_map(|(a, b, c)| OrientedLine { a, b, c })
    }

    proptest! {
        #[test]
        fn det_is_antipodal(q in conic()) {
            prop_assert_eq!(degeneracy_det(&-&q), -degeneracy_det(&q));
        }

        #[test]
        fn nondegenerate_iff_det_nonzero(q in conic()) {
            let d = decompose(&q, DEFAULT_TOLERANCE).unwrap();
            prop_assert_eq!(d == Decomposition::NonDegenerate, !degeneracy_det(&q).is_zero());
        }

        #[test]
        fn both_through_origin_is_degenerate(a in small(), b in small(), c in small()) {
            prop_assume!(!(a.is_zero() && b.is_zero() && c.is_zero()));
            let z = scalar::int(0);
            let q = Conic::new(a, b, c, z.clone(), z.clone(), z).unwrap();
            prop_assert!(constraint_both_through_origin(&q));
            prop_assert!(degeneracy_det(&q).is_zero());
        }

        #[test]
        fn product_round_trip(l1 in finite_line(), l2 in finite_line()) {
            let q = Conic::from_product(&l1, &l2);
            prop_assert!(degeneracy_det(&q).is_zero());
            let d = decompose(&q, DEFAULT_TOLERANCE).unwrap();
            if l1.same_unoriented(&l2) {
                let is_double = matches!(d, Decomposition::DoubleLine { .. });
                prop_assert!(is_double);
            } else {
                prop_assert!(pair_matches(&d, &l1, &l2), "{:?}", d);
            }
        }

        #[test]
        fn negation_keeps_factors(l1 in finite_line(), l2 in finite_line()) {
            prop_assume!(!l1.same_unoriented(&l2));
            let q = Conic::from_product(&l1, &l2);
            let (d, n) = (decompose(&q, DEFAULT_TOLERANCE).unwrap(), decompose(&-&q, DEFAULT_TOLERANCE).unwrap());
            match (d, n) {
                (Decomposition::TwoLines { first: f1, second: s1, scale: k1 },
                 Decomposition::TwoLines { first: f2, second: s2, scale: k2 }) => {
                    prop_assert_eq!(f1, f2);
                    prop_assert_eq!(s1, s2);
                    prop_assert_eq!(k1, -k2);
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
