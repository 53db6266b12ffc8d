//! Unum lattices: strictly increasing points in `(1, ∞̆)`.

use num_bigint::BigInt;

use crate::enclose::root_bounds;
use crate::error::LatticeError;
use crate::rational::Rational;

/// Strictly increasing finite points, each greater than 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Lattice {
    points: Vec<Rational>,
}

impl Lattice {
    /// Validates and wraps a custom list of points.
    pub fn new(points: Vec<Rational>) -> Result<Self, LatticeError> {
        let one = Rational::one();
        if let Some(index) = points.iter().position(|p| *p <= one) {
            return Err(LatticeError::NotAboveOne { index });
        }
        if let Some(index) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(LatticeError::NotIncreasing { index });
        }
        Ok(Lattice { points })
    }

    /// Parses decimal or fractional point strings.
    pub fn parse<S: AsRef<str>>(points: &[S]) -> Result<Self, LatticeError> {
        let parsed = points
            .iter()
            .map(|s| {
                Rational::parse(s.as_ref())
                    .map_err(|e| LatticeError::InvalidParameter(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Lattice::new(parsed)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.points.last()
    }
}

fn positive(p: u64, what: &str) -> Result<(), LatticeError> {
    if p == 0 {
        Err(LatticeError::InvalidParameter(format!(
            "{what} must be at least 1"
        )))
    } else {
        Ok(())
    }
}

fn above_one(m: &Rational) -> Result<(), LatticeError> {
    if *m <= Rational::one() {
        Err(LatticeError::InvalidParameter(format!(
            "maximum {m} must exceed 1"
        )))
    } else {
        Ok(())
    }
}

/// `{1 + i·(m−1)/p : i = 1..p}`.
pub fn linear_lattice(p: u64, m: &Rational) -> Result<Lattice, LatticeError> {
    positive(p, "point count")?;
    above_one(m)?;
    let step = (m - &Rational::one()) / Rational::from_integer(p);
    let points = (1..=p)
        .map(|i| Rational::one() + &step * Rational::from_integer(i))
        .collect();
    Lattice::new(points)
}

/// Lower and upper enclosures of `m^(i/p)` for `i = 1..p` at `prec` fractional bits.
/// Exact roots give identical bounds; the last point is `m` itself.
pub fn exponential_enclosures(
    p: u32,
    m: &Rational,
    prec: u32,
) -> Result<Vec<(Rational, Rational)>, LatticeError> {
    positive(p as u64, "point count")?;
    above_one(m)?;
    Ok((1..=p)
        .map(|i| {
            if i == p {
                (m.clone(), m.clone())
            } else {
                root_bounds(m, i, p, prec)
            }
        })
        .collect())
}

/// `{m^(i/p) : i = 1..p}` stored by the lower enclosure of each point.
pub fn exponential_lattice(p: u32, m: &Rational, prec: u32) -> Result<Lattice, LatticeError> {
    let points = exponential_enclosures(p, m, prec)?
        .into_iter()
        .map(|(lo, _)| lo)
        .collect();
    Lattice::new(points)
}

/// The `i`-th decade point with `s` significant digits, `i ≥ 1`.
fn decade_point(i: u64, s: u32) -> Rational {
    let per_decade = 10u64.pow(s) - 10u64.pow(s - 1);
    let mantissa =
        Rational::one() + Rational::pow10(-(s as i64 - 1)) * Rational::from_integer(i % per_decade);
    mantissa * Rational::pow10((i / per_decade) as i64)
}

fn check_digits(s: u32) -> Result<(), LatticeError> {
    if s == 0 || s > 18 {
        Err(LatticeError::InvalidParameter(format!(
            "significant digits {s} outside 1..=18"
        )))
    } else {
        Ok(())
    }
}

/// Decade lattice with `p` points and `s` significant digits.
pub fn decade_lattice(p: u64, s: u32) -> Result<Lattice, LatticeError> {
    check_digits(s)?;
    Lattice::new((1..=p).map(|i| decade_point(i, s)).collect())
}

/// Largest point of the decade lattice, computed directly.
pub fn decade_max(p: u64, s: u32) -> Result<Rational, LatticeError> {
    check_digits(s)?;
    positive(p, "point count")?;
    Ok(decade_point(p, s))
}

/// `2^(n_b − 3) − 1`, the lattice size for `n_b`-bit machine Unums.
pub fn lattice_size_from_bits(n_b: u32) -> Result<u64, LatticeError> {
    if !(3..=64).contains(&n_b) {
        return Err(LatticeError::InvalidParameter(format!(
            "bit count {n_b} outside 3..=64"
        )));
    }
    Ok((1u64 << (n_b - 3)) - 1)
}

/// Number of Unums for a lattice of `p` points, `8(p + 1)`.
pub fn unum_count(p: u64) -> BigInt {
    BigInt::from(p) * 8 + 8
}
