//! The projectively extended reals: rationals plus one unsigned infinity.

use std::fmt;

use crate::rational::Rational;

/// A point of ℝ*: a finite rational or the unsigned infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RStar {
    Finite(Rational),
    Infinity,
}

impl RStar {
    pub fn zero() -> Self {
        RStar::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        RStar::Finite(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        RStar::Finite(Rational::from_integer(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RStar::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            RStar::Finite(x) => Some(x),
            RStar::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RStar::Finite(x) if x.is_zero())
    }

    /// `-∞̆ = ∞̆`.
    pub fn neg(&self) -> Self {
        match self {
            RStar::Finite(x) => RStar::Finite(-x),
            RStar::Infinity => RStar::Infinity,
        }
    }

    /// `1/0 = ∞̆` and `1/∞̆ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            RStar::Finite(x) => x.recip().map_or(RStar::Infinity, RStar::Finite),
            RStar::Infinity => RStar::zero(),
        }
    }

    /// `None` for the undefined `∞̆ + ∞̆`.
    pub fn checked_add(&self, other: &RStar) -> Option<RStar> {
        match (self, other) {
            (RStar::Finite(a), RStar::Finite(b)) => Some(RStar::Finite(a + b)),
            (RStar::Infinity, RStar::Infinity) => None,
            _ => Some(RStar::Infinity),
        }
    }

    /// `None` for the undefined `0 · ∞̆`.
    pub fn checked_mul(&self, other: &RStar) -> Option<RStar> {
        match (self, other) {
            (RStar::Finite(a), RStar::Finite(b)) => Some(RStar::Finite(a * b)),
            (RStar::Infinity, x) | (x, RStar::Infinity) if x.is_zero() => None,
            _ => Some(RStar::Infinity),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RStar::Finite(x) => x.to_f64(),
            RStar::Infinity => f64::INFINITY,
        }
    }
}

impl From<Rational> for RStar {
    fn from(x: Rational) -> Self {
        RStar::Finite(x)
    }
}

impl From<i64> for RStar {
    fn from(n: i64) -> Self {
        RStar::int(n)
    }
}

impl fmt::Display for RStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RStar::Finite(x) => fmt::Display::fmt(x, f),
            RStar::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for RStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
