//! Evaluation of strictly monotone maps on Flakes.

use crate::enclose::{ln_bounds, DEFAULT_PRECISION};
use crate::error::DomainError;
use crate::flake::{fneg, Flake, Shape};
use crate::rational::Rational;
use crate::rstar::RStar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// The value of a map at a point: exact, or strictly inside `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Exact(RStar),
    Enclosure(Rational, Rational),
}

impl Image {
    fn lower(self) -> RStar {
        match self {
            Image::Exact(y) => y,
            Image::Enclosure(lo, _) => RStar::Finite(lo),
        }
    }

    fn upper(self) -> RStar {
        match self {
            Image::Exact(y) => y,
            Image::Enclosure(_, hi) => RStar::Finite(hi),
        }
    }

    fn neg(self) -> Image {
        match self {
            Image::Exact(y) => Image::Exact(y.neg()),
            Image::Enclosure(lo, hi) => Image::Enclosure(-hi, -lo),
        }
    }
}

/// A strictly monotone map on its domain, extended by `f(∞̆) = ∞̆`.
pub trait MonotoneMap {
    fn name(&self) -> &'static str;

    fn direction(&self) -> Direction;

    /// Whether every point of `a` (and its endpoints) lies in the domain.
    fn admits(&self, a: &Flake) -> bool;

    /// Value at a point of an admitted Flake or one of its endpoints.
    fn eval(&self, x: &RStar) -> Image;
}

/// Image of a Flake under a monotone map, enclosing outward.
pub fn feval_monotone<M: MonotoneMap + ?Sized>(f: &M, a: &Flake) -> Result<Flake, DomainError> {
    if a.is_empty() {
        return Ok(Flake::Empty);
    }
    if !f.admits(a) {
        return Err(DomainError {
            function: f.name(),
            argument: a.to_string(),
        });
    }
    let decreasing = f.direction() == Direction::Decreasing;
    // A decreasing f is evaluated as −((−f)(a)).
    let g = |x: &RStar| {
        let y = f.eval(x);
        if decreasing {
            y.neg()
        } else {
            y
        }
    };
    let image = match a {
        Flake::Empty => Flake::Empty,
        Flake::Singleton(x) => match g(x) {
            Image::Exact(y) => Flake::Singleton(y),
            Image::Enclosure(lo, hi) => Flake::interval(lo, hi),
        },
        Flake::Interval(i) => Flake::interval(g(i.lo()).lower(), g(i.hi()).upper()),
    };
    Ok(if decreasing { fneg(&image) } else { image })
}

/// `x ↦ a·x + b` with `a ≠ 0`.
#[derive(Clone, Debug)]
pub struct Affine {
    a: Rational,
    b: Rational,
}

impl Affine {
    pub fn new(a: Rational, b: Rational) -> Option<Self> {
        (!a.is_zero()).then_some(Affine { a, b })
    }
}

impl MonotoneMap for Affine {
    fn name(&self) -> &'static str {
        "affine"
    }

    fn direction(&self) -> Direction {
        if self.a.is_positive() {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    }

    fn admits(&self, _: &Flake) -> bool {
        true
    }

    fn eval(&self, x: &RStar) -> Image {
        Image::Exact(match x {
            RStar::Finite(x) => RStar::Finite(&(&self.a * x) + &self.b),
            RStar::Infinity => RStar::Infinity,
        })
    }
}

/// Natural logarithm on `[0, ∞̆]` with `ln 0 = ln ∞̆ = ∞̆`.
#[derive(Clone, Debug)]
pub struct Ln {
    precision: u32,
}

impl Ln {
    pub fn with_precision(precision: u32) -> Self {
        Ln { precision }
    }
}

impl Default for Ln {
    fn default() -> Self {
        Ln {
            precision: DEFAULT_PRECISION,
        }
    }
}

impl MonotoneMap for Ln {
    fn name(&self) -> &'static str {
        "ln"
    }

    fn direction(&self) -> Direction {
        Direction::Increasing
    }

    fn admits(&self, a: &Flake) -> bool {
        match a {
            Flake::Empty => true,
            Flake::Singleton(RStar::Infinity) => true,
            Flake::Singleton(RStar::Finite(x)) => !x.is_negative(),
            Flake::Interval(i) => match i.shape() {
                Shape::Above(l) | Shape::Bounded(l, _) => !l.is_negative(),
                Shape::Real | Shape::Below(_) | Shape::Wrapped(..) => false,
            },
        }
    }

    fn eval(&self, x: &RStar) -> Image {
        match x {
            RStar::Infinity => Image::Exact(RStar::Infinity),
            RStar::Finite(v) if v.is_zero() => Image::Exact(RStar::Infinity),
            RStar::Finite(v) if v.is_one() => Image::Exact(RStar::zero()),
            RStar::Finite(v) => {
                let (lo, hi) = ln_bounds(v, self.precision);
                Image::Enclosure(lo, hi)
            }
        }
    }
}
