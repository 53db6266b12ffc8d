//! Open ℝ*-intervals and Flakes with their exact arithmetic.
//!
//! A [`Flake`] is the empty set, a singleton or an open interval on the
//! projective circle. Results that are undefined (`0·∞̆`, `∞̆+∞̆`) or that
//! are not themselves Flakes (the whole circle, or the circle minus a point)
//! are reported as [`Flake::Empty`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::rational::Rational;
use crate::rstar::RStar;

/// A non-empty open interval `(lo, hi)` on the projective circle.
///
/// `(∞̆, ∞̆)` is ℝ; `lo > hi` (both finite) passes through ∞̆.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpenInterval {
    lo: RStar,
    hi: RStar,
}

/// Case analysis of an interval used by the arithmetic tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape<'a> {
    /// `(∞̆, ∞̆) = ℝ`
    Real,
    /// `(∞̆, h)`
    Below(&'a Rational),
    /// `(l, ∞̆)`
    Above(&'a Rational),
    /// `(l, h)` with `l < h`
    Bounded(&'a Rational, &'a Rational),
    /// `(l, h)` with `l > h`, containing ∞̆
    Wrapped(&'a Rational, &'a Rational),
}

impl Shape<'_> {
    fn rank(&self) -> u8 {
        match self {
            Shape::Real => 0,
            Shape::Below(_) => 1,
            Shape::Above(_) => 2,
            Shape::Bounded(..) => 3,
            Shape::Wrapped(..) => 4,
        }
    }
}

impl OpenInterval {
    /// `None` when `(lo, hi)` denotes the empty set (`lo = hi`, finite).
    pub fn new(lo: RStar, hi: RStar) -> Option<Self> {
        match (&lo, &hi) {
            (RStar::Finite(a), RStar::Finite(b)) if a == b => None,
            _ => Some(OpenInterval { lo, hi }),
        }
    }

    pub fn real() -> Self {
        OpenInterval {
            lo: RStar::Infinity,
            hi: RStar::Infinity,
        }
    }

    pub fn lo(&self) -> &RStar {
        &self.lo
    }

    pub fn hi(&self) -> &RStar {
        &self.hi
    }

    pub fn shape(&self) -> Shape<'_> {
        match (&self.lo, &self.hi) {
            (RStar::Infinity, RStar::Infinity) => Shape::Real,
            (RStar::Infinity, RStar::Finite(h)) => Shape::Below(h),
            (RStar::Finite(l), RStar::Infinity) => Shape::Above(l),
            (RStar::Finite(l), RStar::Finite(h)) if l < h => Shape::Bounded(l, h),
            (RStar::Finite(l), RStar::Finite(h)) => Shape::Wrapped(l, h),
        }
    }

    pub fn contains(&self, x: &RStar) -> bool {
        match (self.shape(), x) {
            (Shape::Wrapped(..), RStar::Infinity) => true,
            (_, RStar::Infinity) => false,
            (Shape::Real, _) => true,
            (Shape::Below(h), RStar::Finite(x)) => x < h,
            (Shape::Above(l), RStar::Finite(x)) => x > l,
            (Shape::Bounded(l, h), RStar::Finite(x)) => l < x && x < h,
            (Shape::Wrapped(l, h), RStar::Finite(x)) => x > l || x < h,
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self.shape() {
            Shape::Real => true,
            Shape::Below(h) => h.is_positive(),
            Shape::Above(l) => l.is_negative(),
            Shape::Bounded(l, h) => l.is_negative() && h.is_positive(),
            Shape::Wrapped(l, h) => l.is_negative() || h.is_positive(),
        }
    }

    pub fn contains_infinity(&self) -> bool {
        matches!(self.shape(), Shape::Wrapped(..))
    }
}

/// The empty set, a singleton, or an open ℝ*-interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Flake {
    Empty,
    Singleton(RStar),
    Interval(OpenInterval),
}

impl Flake {
    pub fn point(x: impl Into<RStar>) -> Self {
        Flake::Singleton(x.into())
    }

    /// Normalizes `(x, x)` with finite `x` to [`Flake::Empty`].
    pub fn interval(lo: impl Into<RStar>, hi: impl Into<RStar>) -> Self {
        OpenInterval::new(lo.into(), hi.into()).map_or(Flake::Empty, Flake::Interval)
    }

    /// ℝ, the open interval `(∞̆, ∞̆)`.
    pub fn real() -> Self {
        Flake::Interval(OpenInterval::real())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Flake::Empty)
    }

    pub fn contains(&self, x: &RStar) -> bool {
        match self {
            Flake::Empty => false,
            Flake::Singleton(y) => x == y,
            Flake::Interval(i) => i.contains(x),
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self {
            Flake::Empty => false,
            Flake::Singleton(y) => y.is_zero(),
            Flake::Interval(i) => i.contains_zero(),
        }
    }

    pub fn contains_infinity(&self) -> bool {
        match self {
            Flake::Empty => false,
            Flake::Singleton(y) => y.is_infinite(),
            Flake::Interval(i) => i.contains_infinity(),
        }
    }
}

fn interval(lo: Rational, hi: Rational) -> Flake {
    Flake::interval(lo, hi)
}

fn below(h: Rational) -> Flake {
    Flake::interval(RStar::Infinity, h)
}

fn above(l: Rational) -> Flake {
    Flake::interval(l, RStar::Infinity)
}

/// `(lo, hi)` through ∞̆ when `lo > hi`; otherwise the image would be the
/// circle minus at most one point, which is not a Flake.
fn wrapped(lo: Rational, hi: Rational) -> Flake {
    if lo > hi {
        interval(lo, hi)
    } else {
        Flake::Empty
    }
}

fn min_max(values: [Rational; 2]) -> (Rational, Rational) {
    let [a, b] = values;
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn min4(v: [Rational; 4]) -> Rational {
    v.into_iter().reduce(Rational::min).expect("non-empty")
}

fn max4(v: [Rational; 4]) -> Rational {
    v.into_iter().reduce(Rational::max).expect("non-empty")
}

/// Interval addition `a ⊕ b`.
pub fn oadd(a: &OpenInterval, b: &OpenInterval) -> Flake {
    let (sa, sb) = (a.shape(), b.shape());
    if sb.rank() < sa.rank() {
        return oadd(b, a);
    }
    use Shape::*;
    match (sa, sb) {
        (Real, Wrapped(..)) => Flake::Empty,
        (Real, _) => Flake::real(),
        (Below(h1), Below(h2)) => below(h1 + h2),
        (Below(_), Above(_)) => Flake::real(),
        (Below(h1), Bounded(_, h2)) => below(h1 + h2),
        (Below(_), Wrapped(..)) => Flake::Empty,
        (Above(l1), Above(l2)) => above(l1 + l2),
        (Above(l1), Bounded(l2, _)) => above(l1 + l2),
        (Above(_), Wrapped(..)) => Flake::Empty,
        (Bounded(l1, h1), Bounded(l2, h2)) => interval(l1 + l2, h1 + h2),
        (Bounded(l1, h1), Wrapped(l2, h2)) => wrapped(l1 + l2, h1 + h2),
        (Wrapped(..), Wrapped(..)) => Flake::Empty,
        _ => unreachable!("operands are ordered by rank"),
    }
}

/// Interval multiplication `a ⊗ b`.
pub fn omul(a: &OpenInterval, b: &OpenInterval) -> Flake {
    let (sa, sb) = (a.shape(), b.shape());
    if sb.rank() < sa.rank() {
        return omul(b, a);
    }
    use Shape::*;
    let nonpos = |x: &Rational| !x.is_positive();
    let nonneg = |x: &Rational| !x.is_negative();
    match (sa, sb) {
        (Real, Wrapped(..)) => Flake::Empty,
        (Real, _) => Flake::real(),
        (Below(h1), Below(h2)) => {
            if nonpos(h1) && nonpos(h2) {
                above(h1 * h2)
            } else {
                Flake::real()
            }
        }
        (Below(h), Above(l)) => {
            if nonpos(h) && nonneg(l) {
                below(h * l)
            } else {
                Flake::real()
            }
        }
        (Below(h), Bounded(l, u)) => {
            let (lo, hi) = min_max([h * l, h * u]);
            if nonneg(l) {
                below(hi)
            } else if nonpos(u) {
                above(lo)
            } else {
                Flake::real()
            }
        }
        (Below(h), Wrapped(l, u)) => {
            if h.is_negative() && nonneg(l) && nonpos(u) {
                wrapped(h * u, h * l)
            } else {
                Flake::Empty
            }
        }
        (Above(l1), Above(l2)) => {
            if nonneg(l1) && nonneg(l2) {
                above(l1 * l2)
            } else {
                Flake::real()
            }
        }
        (Above(a), Bounded(l, u)) => {
            let (lo, hi) = min_max([a * l, a * u]);
            if nonneg(l) {
                above(lo)
            } else if nonpos(u) {
                below(hi)
            } else {
                Flake::real()
            }
        }
        (Above(a), Wrapped(l, u)) => {
            if a.is_positive() && nonneg(l) && nonpos(u) {
                wrapped(a * l, a * u)
            } else {
                Flake::Empty
            }
        }
        (Bounded(l1, h1), Bounded(l2, h2)) => {
            let products = [l1 * l2, l1 * h2, h1 * l2, h1 * h2];
            interval(min4(products.clone()), max4(products))
        }
        (Bounded(l1, h1), Wrapped(l2, h2)) => {
            if nonneg(l1) {
                let (lo, _) = min_max([l1 * l2, h1 * l2]);
                let (_, hi) = min_max([l1 * h2, h1 * h2]);
                wrapped(lo, hi)
            } else if nonpos(h1) {
                let (lo, _) = min_max([l1 * h2, h1 * h2]);
                let (_, hi) = min_max([l1 * l2, h1 * l2]);
                wrapped(lo, hi)
            } else {
                Flake::Empty
            }
        }
        (Wrapped(l1, h1), Wrapped(l2, h2)) => {
            if nonneg(l1) && nonpos(h1) && nonneg(l2) && nonpos(h2) {
                let (lo, _) = min_max([l1 * l2, h1 * h2]);
                let (_, hi) = min_max([l1 * h2, h1 * l2]);
                wrapped(lo, hi)
            } else {
                Flake::Empty
            }
        }
        _ => unreachable!("operands are ordered by rank"),
    }
}

/// Flake addition `a ⊞ b`.
pub fn fadd(a: &Flake, b: &Flake) -> Flake {
    match (a, b) {
        (Flake::Empty, _) | (_, Flake::Empty) => Flake::Empty,
        (Flake::Singleton(x), Flake::Singleton(y)) => {
            x.checked_add(y).map_or(Flake::Empty, Flake::Singleton)
        }
        (Flake::Singleton(x), Flake::Interval(i)) | (Flake::Interval(i), Flake::Singleton(x)) => {
            match x {
                RStar::Infinity if i.contains_infinity() => Flake::Empty,
                RStar::Infinity => Flake::Singleton(RStar::Infinity),
                RStar::Finite(x) => Flake::interval(shift(i.lo(), x), shift(i.hi(), x)),
            }
        }
        (Flake::Interval(i), Flake::Interval(j)) => oadd(i, j),
    }
}

fn shift(e: &RStar, x: &Rational) -> RStar {
    match e {
        RStar::Finite(e) => RStar::Finite(e + x),
        RStar::Infinity => RStar::Infinity,
    }
}

fn scale(e: &RStar, x: &Rational) -> RStar {
    match e {
        RStar::Finite(e) => RStar::Finite(e * x),
        RStar::Infinity => RStar::Infinity,
    }
}

/// Flake multiplication `a ⊠ b`.
pub fn fmul(a: &Flake, b: &Flake) -> Flake {
    match (a, b) {
        (Flake::Empty, _) | (_, Flake::Empty) => Flake::Empty,
        (Flake::Singleton(x), Flake::Singleton(y)) => {
            x.checked_mul(y).map_or(Flake::Empty, Flake::Singleton)
        }
        (Flake::Singleton(x), Flake::Interval(i)) | (Flake::Interval(i), Flake::Singleton(x)) => {
            match x {
                RStar::Infinity if i.contains_zero() => Flake::Empty,
                RStar::Infinity => Flake::Singleton(RStar::Infinity),
                RStar::Finite(x) => match x.cmp_zero() {
                    Ordering::Equal if i.contains_infinity() => Flake::Empty,
                    Ordering::Equal => Flake::point(Rational::zero()),
                    Ordering::Greater => Flake::interval(scale(i.lo(), x), scale(i.hi(), x)),
                    Ordering::Less => Flake::interval(scale(i.hi(), x), scale(i.lo(), x)),
                },
            }
        }
        (Flake::Interval(i), Flake::Interval(j)) => omul(i, j),
    }
}

/// Additive inverse `−a`.
pub fn fneg(a: &Flake) -> Flake {
    match a {
        Flake::Empty => Flake::Empty,
        Flake::Singleton(x) => Flake::Singleton(x.neg()),
        Flake::Interval(i) => Flake::interval(i.hi().neg(), i.lo().neg()),
    }
}

/// Multiplicative inverse `/a`, with `/0 = ∞̆` and `/∞̆ = 0`.
pub fn finv(a: &Flake) -> Flake {
    match a {
        Flake::Empty => Flake::Empty,
        Flake::Singleton(x) => Flake::Singleton(x.recip()),
        Flake::Interval(i) => Flake::interval(i.hi().recip(), i.lo().recip()),
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Flake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flake::Empty => f.write_str("empty"),
            Flake::Singleton(x) => write!(f, "{{{x}}}"),
            Flake::Interval(i) => fmt::Display::fmt(i, f),
        }
    }
}

impl fmt::Debug for Flake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RStar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(RStar::Infinity),
            t => Rational::parse(t).map(RStar::Finite),
        }
    }
}

impl FromStr for Flake {
    type Err = ParseError;

    /// Accepts `empty`, `{x}` and `(lo, hi)`, with `inf` for ∞̆.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseError::InvalidNumber(s.to_string());
        if t == "empty" {
            return Ok(Flake::Empty);
        }
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return inner.parse().map(Flake::Singleton);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(err)?;
        Ok(Flake::interval(lo.parse::<RStar>()?, hi.parse::<RStar>()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Flake {
        s.parse().unwrap()
    }

    fn oi(s: &str) -> OpenInterval {
        match f(s) {
            Flake::Interval(i) => i,
            other => panic!("{other} is not an interval"),
        }
    }

    #[test]
    fn membership() {
        assert!(f("(5, -5)").contains(&RStar::Infinity));
        assert!(f("(5, -5)").contains(&RStar::int(6)));
        assert!(!f("(5, -5)").contains(&RStar::int(0)));
        assert!(f("{0}").contains(&RStar::zero()));
        assert!(!f("(1, 2)").contains(&RStar::int(2)));
        assert!(f("(inf, inf)").contains(&RStar::int(-7)));
        assert!(!f("(inf, inf)").contains(&RStar::Infinity));
    }

    #[test]
    fn degenerate_normalizes_to_empty() {
        assert_eq!(Flake::interval(RStar::int(3), RStar::int(3)), Flake::Empty);
        assert!(OpenInterval::new(RStar::int(3), RStar::int(3)).is_none());
    }

    #[test]
    fn oadd_examples() {
        assert_eq!(oadd(&oi("(inf, 1)"), &oi("(inf, 2)")), f("(inf, 3)"));
        assert_eq!(oadd(&oi("(inf, 1)"), &oi("(2, inf)")), Flake::real());
        assert_eq!(oadd(&oi("(1, 2)"), &oi("(3, 4)")), f("(4, 6)"));
        assert_eq!(oadd(&oi("(2, 1)"), &oi("(2, 1)")), Flake::Empty);
        assert_eq!(oadd(&oi("(2, 1)"), &oi("(0, 0.5)")), f("(2, 1.5)"));
        assert_eq!(oadd(&oi("(2, 1)"), &oi("(0, 3)")), Flake::Empty);
    }

    #[test]
    fn omul_examples() {
        assert_eq!(omul(&oi("(1, 2)"), &oi("(3, 4)")), f("(3, 8)"));
        assert_eq!(omul(&oi("(inf, -1)"), &oi("(inf, -2)")), f("(2, inf)"));
        assert_eq!(omul(&oi("(-1, 1)"), &oi("(-1, 1)")), f("(-1, 1)"));
        assert_eq!(omul(&oi("(2, -2)"), &oi("(1, 3)")), f("(2, -2)"));
        assert_eq!(omul(&oi("(2, -2)"), &oi("(-1, 3)")), Flake::Empty);
        assert_eq!(omul(&oi("(2, -2)"), &oi("(3, -3)")), f("(6, -6)"));
        assert_eq!(omul(&oi("(2, -2)"), &oi("(inf, -1)")), f("(2, -2)"));
        assert_eq!(omul(&oi("(inf, 0)"), &oi("(1, -1)")), Flake::Empty);
    }

    #[test]
    fn fadd_examples() {
        assert_eq!(fadd(&f("{inf}"), &f("{inf}")), Flake::Empty);
        assert_eq!(fadd(&f("{inf}"), &f("(1, 2)")), f("{inf}"));
        assert_eq!(fadd(&f("{inf}"), &f("(2, 1)")), Flake::Empty);
        assert_eq!(fadd(&f("{1}"), &f("(2, 3)")), f("(3, 4)"));
        assert_eq!(fadd(&f("(2, 3)"), &f("{1}")), f("(3, 4)"));
        assert_eq!(fadd(&Flake::Empty, &f("{1}")), Flake::Empty);
    }

    #[test]
    fn fmul_examples() {
        assert_eq!(fmul(&f("{inf}"), &f("{0}")), Flake::Empty);
        assert_eq!(fmul(&f("{2}"), &f("(3, 4)")), f("(6, 8)"));
        assert_eq!(fmul(&f("{-1}"), &f("(inf, 5)")), f("(-5, inf)"));
        assert_eq!(fmul(&f("{0}"), &f("(inf, 5)")), f("{0}"));
        assert_eq!(fmul(&f("{0}"), &f("(5, -5)")), Flake::Empty);
        assert_eq!(fmul(&f("{inf}"), &f("(1, 2)")), f("{inf}"));
        assert_eq!(fmul(&f("{inf}"), &f("(-1, 2)")), Flake::Empty);
    }

    #[test]
    fn unary_examples() {
        assert_eq!(fneg(&f("(1, 2)")), f("(-2, -1)"));
        assert_eq!(fneg(&f("{inf}")), f("{inf}"));
        assert_eq!(fneg(&f("(2, 1)")), f("(-1, -2)"));
        assert_eq!(finv(&f("(2, 4)")), f("(1/4, 1/2)"));
        assert_eq!(finv(&f("{0}")), f("{inf}"));
        assert_eq!(finv(&f("(-1, 1)")), f("(1, -1)"));
        assert_eq!(finv(&f("(0, inf)")), f("(0, inf)"));
        assert_eq!(finv(&Flake::real()), Flake::Empty);
    }

    #[test]
    fn display_parse_round_trip() {
        for s in [
            "empty",
            "{inf}",
            "{-3.5}",
            "(inf, 2)",
            "(1/3, inf)",
            "(2, 1)",
            "(inf, inf)",
        ] {
            assert_eq!(f(s).to_string(), s);
        }
    }
}
