//! Test oracles shared by the integration tests.
//!
//! The exact oracle splits each Flake into sign-definite pieces on the
//! extended real line, applies ordinary interval arithmetic piecewise and
//! glues the results back onto the circle. It shares no code with the
//! library's case tables.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use sorn::{Flake, OpenInterval, RStar, Rational, Shape};

/// A point of the affinely extended line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ext {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        use Ext::*;
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl Ext {
    fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(x) => Ext::Fin(-x),
        }
    }

    fn is_infinite(&self) -> bool {
        !matches!(self, Ext::Fin(_))
    }

    /// Sum of two lower (or two upper) endpoints; never `−∞ + ∞`.
    fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => unreachable!("lo + hi"),
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            _ => Ext::PosInf,
        }
    }

    /// Product of two non-negative endpoints, at least one non-zero when
    /// either is infinite.
    fn mul_nonneg(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            _ => Ext::PosInf,
        }
    }
}

/// A real interval with per-end openness. Infinite ends are always open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Ext,
    pub lo_open: bool,
    pub hi: Ext,
    pub hi_open: bool,
}

impl Piece {
    fn open(lo: Ext, hi: Ext) -> Piece {
        Piece {
            lo,
            lo_open: true,
            hi,
            hi_open: true,
        }
    }

    fn point(x: Rational) -> Piece {
        Piece {
            lo: Ext::Fin(x.clone()),
            lo_open: false,
            hi: Ext::Fin(x),
            hi_open: false,
        }
    }

    fn neg(&self) -> Piece {
        Piece {
            lo: self.hi.neg(),
            lo_open: self.hi_open,
            hi: self.lo.neg(),
            hi_open: self.lo_open,
        }
    }

    fn is_positive(&self) -> bool {
        self.lo >= Ext::Fin(Rational::zero())
    }
}

/// A Flake split into `{∞̆}`, `{0}`, and sign-definite real pieces.
#[derive(Clone, Debug, Default)]
pub struct Split {
    pub infinity: bool,
    pub zero: bool,
    pub pieces: Vec<Piece>,
}

fn ext(x: &RStar, at_infinity: Ext) -> Ext {
    match x {
        RStar::Finite(v) => Ext::Fin(v.clone()),
        RStar::Infinity => at_infinity,
    }
}

/// Cuts an open real interval at 0.
fn cut_at_zero(p: Piece, out: &mut Split) {
    let zero = Ext::Fin(Rational::zero());
    if p.lo < zero && zero < p.hi {
        out.zero = true;
        out.pieces.push(Piece::open(p.lo, zero.clone()));
        out.pieces.push(Piece::open(zero, p.hi));
    } else {
        out.pieces.push(p);
    }
}

pub fn split(f: &Flake) -> Split {
    let mut s = Split::default();
    match f {
        Flake::Empty => {}
        Flake::Singleton(RStar::Infinity) => s.infinity = true,
        Flake::Singleton(RStar::Finite(x)) if x.is_zero() => s.zero = true,
        Flake::Singleton(RStar::Finite(x)) => s.pieces.push(Piece::point(x.clone())),
        Flake::Interval(i) => {
            let lo = ext(i.lo(), Ext::NegInf);
            let hi = ext(i.hi(), Ext::PosInf);
            if lo < hi {
                cut_at_zero(Piece::open(lo, hi), &mut s);
            } else {
                s.infinity = true;
                cut_at_zero(Piece::open(lo, Ext::PosInf), &mut s);
                cut_at_zero(Piece::open(Ext::NegInf, hi), &mut s);
            }
        }
    }
    s
}

/// A set on the circle as real pieces plus membership of ∞̆. `None` marks an
/// undefined operation.
#[derive(Clone, Debug, Default)]
pub struct Image {
    pub infinity: bool,
    pub pieces: Vec<Piece>,
}

fn add_pieces(a: &Piece, b: &Piece) -> Piece {
    Piece {
        lo: a.lo.add(&b.lo),
        lo_open: a.lo_open || b.lo_open || a.lo.is_infinite() || b.lo.is_infinite(),
        hi: a.hi.add(&b.hi),
        hi_open: a.hi_open || b.hi_open || a.hi.is_infinite() || b.hi.is_infinite(),
    }
}

fn mul_pieces(a: &Piece, b: &Piece) -> Piece {
    let (a, sa) = if a.is_positive() {
        (a.clone(), false)
    } else {
        (a.neg(), true)
    };
    let (b, sb) = if b.is_positive() {
        (b.clone(), false)
    } else {
        (b.neg(), true)
    };
    let hi = a.hi.mul_nonneg(&b.hi);
    let p = Piece {
        lo: a.lo.mul_nonneg(&b.lo),
        lo_open: a.lo_open || b.lo_open,
        hi_open: a.hi_open || b.hi_open || hi.is_infinite(),
        hi,
    };
    if sa != sb {
        p.neg()
    } else {
        p
    }
}

pub fn image_add(a: &Flake, b: &Flake) -> Option<Image> {
    let (a, b) = (split(a), split(b));
    let mut img = Image::default();
    if a.infinity && b.infinity {
        return None;
    }
    let finite_a = a.zero || !a.pieces.is_empty();
    let finite_b = b.zero || !b.pieces.is_empty();
    img.infinity = (a.infinity && finite_b) || (b.infinity && finite_a);
    let with_zero = |s: &Split| {
        let mut v = s.pieces.clone();
        if s.zero {
            v.push(Piece::point(Rational::zero()));
        }
        v
    };
    for p in with_zero(&a) {
        for q in with_zero(&b) {
            img.pieces.push(add_pieces(&p, &q));
        }
    }
    Some(img)
}

pub fn image_mul(a: &Flake, b: &Flake) -> Option<Image> {
    let (a, b) = (split(a), split(b));
    if (a.zero && b.infinity) || (a.infinity && b.zero) {
        return None;
    }
    let mut img = Image {
        infinity: (a.infinity && (b.infinity || !b.pieces.is_empty()))
            || (b.infinity && !a.pieces.is_empty()),
        pieces: Vec::new(),
    };
    if (a.zero && (b.zero || !b.pieces.is_empty())) || (b.zero && !a.pieces.is_empty()) {
        img.pieces.push(Piece::point(Rational::zero()));
    }
    for p in &a.pieces {
        for q in &b.pieces {
            img.pieces.push(mul_pieces(p, q));
        }
    }
    Some(img)
}

/// Whether `q` starts inside or touching `p` (with `p.lo ≤ q.lo`).
fn joins(p: &Piece, q: &Piece) -> bool {
    match q.lo.cmp(&p.hi) {
        Ordering::Less => true,
        Ordering::Equal => !(p.hi_open && q.lo_open),
        Ordering::Greater => false,
    }
}

fn merge(mut pieces: Vec<Piece>) -> Vec<Piece> {
    pieces.sort_by(|p, q| p.lo.cmp(&q.lo).then(p.lo_open.cmp(&q.lo_open)));
    let mut out: Vec<Piece> = Vec::new();
    for q in pieces {
        if let Some(p) = out.last_mut() {
            if joins(p, &q) {
                match q.hi.cmp(&p.hi) {
                    Ordering::Greater => {
                        p.hi = q.hi;
                        p.hi_open = q.hi_open;
                    }
                    Ordering::Equal => p.hi_open = p.hi_open && q.hi_open,
                    Ordering::Less => {}
                }
                continue;
            }
        }
        out.push(q);
    }
    out
}

fn rstar_of(e: &Ext) -> RStar {
    match e {
        Ext::Fin(x) => RStar::Finite(x.clone()),
        _ => RStar::Infinity,
    }
}

/// The Flake equal to an image, or `Flake::Empty` when the image is the whole
/// circle or the circle minus one point. Panics on any other shape, which
/// would contradict closure of Flakes under the operations.
pub fn to_flake(img: Option<Image>) -> Flake {
    let Some(img) = img else { return Flake::Empty };
    let pieces = merge(img.pieces);
    let whole = |p: &Piece| p.lo == Ext::NegInf && p.hi == Ext::PosInf;
    match (pieces.as_slice(), img.infinity) {
        ([], true) => Flake::point(RStar::Infinity),
        ([], false) => panic!("empty image of non-empty operands"),
        ([p], false) if !p.lo_open && !p.hi_open && p.lo == p.hi => Flake::point(rstar_of(&p.lo)),
        ([p], false) if p.lo_open && p.hi_open => Flake::interval(rstar_of(&p.lo), rstar_of(&p.hi)),
        ([p], true) if whole(p) => Flake::Empty,
        ([n, p], true) if n.lo == Ext::NegInf && p.hi == Ext::PosInf && n.hi_open && p.lo_open => {
            if n.hi >= p.lo {
                Flake::Empty
            } else {
                Flake::interval(rstar_of(&p.lo), rstar_of(&n.hi))
            }
        }
        _ => panic!(
            "image is not a Flake: {pieces:?}, infinity = {}",
            img.infinity
        ),
    }
}

pub fn oracle_add(a: &Flake, b: &Flake) -> Flake {
    if a.is_empty() || b.is_empty() {
        return Flake::Empty;
    }
    to_flake(image_add(a, b))
}

pub fn oracle_mul(a: &Flake, b: &Flake) -> Flake {
    if a.is_empty() || b.is_empty() {
        return Flake::Empty;
    }
    to_flake(image_mul(a, b))
}

// Random generation.

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    match rng.gen_range(0..4) {
        0 => Rational::from(rng.gen_range(-6i64..=6)),
        1 => rat(rng.gen_range(-24..=24), rng.gen_range(1..=8)),
        2 => rat(
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(1..=1000),
        ),
        _ => rat(rng.gen_range(-3..=3), rng.gen_range(1..=1_000_000)),
    }
}

pub fn random_rstar<R: Rng>(rng: &mut R) -> RStar {
    if rng.gen_ratio(1, 8) {
        RStar::Infinity
    } else {
        RStar::Finite(random_rational(rng))
    }
}

pub fn random_interval<R: Rng>(rng: &mut R) -> OpenInterval {
    loop {
        if let Some(i) = OpenInterval::new(random_rstar(rng), random_rstar(rng)) {
            return i;
        }
    }
}

pub fn random_flake<R: Rng>(rng: &mut R) -> Flake {
    match rng.gen_range(0..10) {
        0 => Flake::Empty,
        1..=3 => Flake::Singleton(random_rstar(rng)),
        _ => Flake::Interval(random_interval(rng)),
    }
}

/// A random rational in `(0, 1)` biased towards both ends.
fn unit<R: Rng>(rng: &mut R) -> Rational {
    match rng.gen_range(0..3) {
        0 => rat(1, 1i64 << rng.gen_range(1..40)),
        1 => Rational::one() - rat(1, 1i64 << rng.gen_range(1..40)),
        _ => {
            let d = rng.gen_range(2..=1_000_000i64);
            rat(rng.gen_range(1..d), d)
        }
    }
}

/// A random positive rational, sometimes tiny, sometimes huge.
fn positive<R: Rng>(rng: &mut R) -> Rational {
    let u = unit(rng);
    &u / &(Rational::one() - &u)
}

/// A random member of a non-empty Flake.
pub fn sample<R: Rng>(f: &Flake, rng: &mut R) -> RStar {
    match f {
        Flake::Empty => panic!("sampling the empty set"),
        Flake::Singleton(x) => x.clone(),
        Flake::Interval(i) => RStar::Finite(match i.shape() {
            Shape::Real => {
                let p = positive(rng);
                if rng.gen() {
                    p
                } else {
                    -p
                }
            }
            Shape::Below(h) => h - &positive(rng),
            Shape::Above(l) => l + &positive(rng),
            Shape::Bounded(l, h) => l + &(&(h - l) * &unit(rng)),
            Shape::Wrapped(l, h) => {
                if rng.gen_ratio(1, 10) {
                    return RStar::Infinity;
                }
                if rng.gen() {
                    l + &positive(rng)
                } else {
                    h - &positive(rng)
                }
            }
        }),
    }
}

// Proptest strategies.

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-12i64..=12).prop_map(Rational::from),
        (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d)),
        (any::<i32>(), 1u32..).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))),
    ]
}

pub fn rstar_strategy() -> impl Strategy<Value = RStar> {
    prop_oneof![
        1 => Just(RStar::Infinity),
        6 => rational_strategy().prop_map(RStar::Finite),
    ]
}

pub fn interval_strategy() -> impl Strategy<Value = OpenInterval> {
    (rstar_strategy(), rstar_strategy())
        .prop_filter_map("degenerate", |(lo, hi)| OpenInterval::new(lo, hi))
}

pub fn flake_strategy() -> impl Strategy<Value = Flake> {
    prop_oneof![
        1 => Just(Flake::Empty),
        3 => rstar_strategy().prop_map(Flake::Singleton),
        6 => interval_strategy().prop_map(Flake::Interval),
    ]
}
