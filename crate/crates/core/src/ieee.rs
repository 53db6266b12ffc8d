//! IEEE 754 binary formats over exact rationals: metrics and rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid float format: {0}")]
pub struct FormatError(String);

/// A binary interchange format with `n_m` stored mantissa bits and `n_e`
/// exponent bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatFormat {
    n_m: u32,
    n_e: u32,
}

pub const BINARY16: FloatFormat = FloatFormat { n_m: 10, n_e: 5 };
pub const BINARY32: FloatFormat = FloatFormat { n_m: 23, n_e: 8 };
pub const BINARY64: FloatFormat = FloatFormat { n_m: 52, n_e: 11 };

/// Exact characteristics of a format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatMetrics {
    pub bias: i64,
    pub e_min: i64,
    pub e_max: i64,
    pub min_subnormal: Rational,
    pub min_normal: Rational,
    pub max_normal: Rational,
    /// Subnormals including both zeros.
    pub subnormal_count: u128,
    pub normal_count: u128,
    pub nan_count: u128,
    /// All bit patterns.
    pub total_count: u128,
}

/// Result of rounding into a format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rounded {
    Finite(Rational),
    PosInfinity,
    NegInfinity,
}

impl Rounded {
    fn neg(self) -> Rounded {
        match self {
            Rounded::Finite(x) => Rounded::Finite(-x),
            Rounded::PosInfinity => Rounded::NegInfinity,
            Rounded::NegInfinity => Rounded::PosInfinity,
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Rounded::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl PartialOrd for Rounded {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rounded {
    fn cmp(&self, other: &Self) -> Ordering {
        use Rounded::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
        }
    }
}

/// A decoded bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Finite(Rational),
    PosInfinity,
    NegInfinity,
    NaN,
}

impl FloatFormat {
    pub fn new(n_m: u32, n_e: u32) -> Result<Self, FormatError> {
        if n_m == 0 || n_e < 2 || n_m + n_e > 126 {
            return Err(FormatError(format!("n_m = {n_m}, n_e = {n_e}")));
        }
        Ok(FloatFormat { n_m, n_e })
    }

    pub fn mantissa_bits(&self) -> u32 {
        self.n_m
    }

    pub fn exponent_bits(&self) -> u32 {
        self.n_e
    }

    pub fn bias(&self) -> i64 {
        (1i64 << (self.n_e - 1)) - 1
    }

    pub fn e_min(&self) -> i64 {
        2 - (1i64 << (self.n_e - 1))
    }

    pub fn e_max(&self) -> i64 {
        self.bias()
    }

    pub fn max_normal(&self) -> Rational {
        Rational::pow2(self.e_max()) * (Rational::from(2) - Rational::pow2(-(self.n_m as i64)))
    }

    /// Magnitudes at or above this round to infinity under nearest rounding.
    pub fn overflow_threshold(&self) -> Rational {
        Rational::pow2(self.e_max()) * (Rational::from(2) - Rational::pow2(-(self.n_m as i64) - 1))
    }

    pub fn metrics(&self) -> FormatMetrics {
        let (n_m, n_e) = (self.n_m, self.n_e);
        FormatMetrics {
            bias: self.bias(),
            e_min: self.e_min(),
            e_max: self.e_max(),
            min_subnormal: Rational::pow2(self.e_min() - n_m as i64),
            min_normal: Rational::pow2(self.e_min()),
            max_normal: self.max_normal(),
            subnormal_count: 1u128 << (n_m + 1),
            normal_count: (1u128 << (1 + n_e + n_m)) - (1u128 << (n_m + 2)),
            nan_count: (1u128 << (n_m + 1)) - 2,
            total_count: 1u128 << (1 + n_e + n_m),
        }
    }

    /// Largest representable `≤ x` and smallest representable `≥ x` for
    /// `0 ≤ x ≤ max_normal`, with the integer multiple of the spacing below.
    fn neighbours(&self, x: &Rational) -> (Rational, Rational, BigInt) {
        if x.is_zero() {
            return (Rational::zero(), Rational::zero(), BigInt::from(0));
        }
        let e = x.floor_log2().max(self.e_min());
        let spacing = Rational::pow2(e - self.n_m as i64);
        let q = x / &spacing;
        let k = q.floor();
        let down = Rational::from_integer(k.clone()) * &spacing;
        let up = if q.is_integer() {
            down.clone()
        } else {
            &down + &spacing
        };
        (down, up, k)
    }

    fn round_down_nonneg(&self, x: &Rational) -> Rounded {
        let max = self.max_normal();
        if *x >= max {
            return Rounded::Finite(max);
        }
        Rounded::Finite(self.neighbours(x).0)
    }

    fn round_up_nonneg(&self, x: &Rational) -> Rounded {
        if *x > self.max_normal() {
            return Rounded::PosInfinity;
        }
        Rounded::Finite(self.neighbours(x).1)
    }

    /// Largest representable value `≤ x` (−∞ below the range).
    pub fn round_down(&self, x: &Rational) -> Rounded {
        if x.is_negative() {
            self.round_up_nonneg(&-x).neg()
        } else {
            self.round_down_nonneg(x)
        }
    }

    /// Smallest representable value `≥ x` (+∞ above the range).
    pub fn round_up(&self, x: &Rational) -> Rounded {
        if x.is_negative() {
            self.round_down_nonneg(&-x).neg()
        } else {
            self.round_up_nonneg(x)
        }
    }

    /// Nearest representable value, ties to an even last mantissa bit.
    pub fn round_nearest_even(&self, x: &Rational) -> Rounded {
        if x.is_negative() {
            return self.round_nearest_even(&-x).neg();
        }
        if *x >= self.overflow_threshold() {
            return Rounded::PosInfinity;
        }
        let max = self.max_normal();
        if *x >= max {
            return Rounded::Finite(max);
        }
        let (down, up, k) = self.neighbours(x);
        let result = match (x - &down).cmp(&(&up - x)) {
            Ordering::Less => down,
            Ordering::Greater => up,
            Ordering::Equal if k.is_even() => down,
            Ordering::Equal => up,
        };
        Rounded::Finite(result)
    }

    /// Value of a bit pattern `sign | exponent | mantissa`.
    pub fn decode(&self, bits: u128) -> Decoded {
        let n_m = self.n_m;
        let mant = bits & ((1u128 << n_m) - 1);
        let exp = (bits >> n_m) & ((1u128 << self.n_e) - 1);
        let negative = (bits >> (n_m + self.n_e)) & 1 == 1;
        let all_ones = (1u128 << self.n_e) - 1;
        let magnitude = if exp == all_ones {
            return match (mant, negative) {
                (0, false) => Decoded::PosInfinity,
                (0, true) => Decoded::NegInfinity,
                _ => Decoded::NaN,
            };
        } else if exp == 0 {
            Rational::from_integer(BigInt::from(mant)) * Rational::pow2(self.e_min() - n_m as i64)
        } else {
            let significand = BigInt::from((1u128 << n_m) | mant);
            Rational::from_integer(significand)
                * Rational::pow2(exp as i64 - self.bias() - n_m as i64)
        };
        Decoded::Finite(if negative { -magnitude } else { magnitude })
    }
}
