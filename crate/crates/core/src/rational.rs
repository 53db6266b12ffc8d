//! Exact rational numbers.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `2^e` for any integer exponent.
    pub fn pow2(e: i64) -> Self {
        let m = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Rational::from_integer(m)
        } else {
            Rational::new(1, m)
        }
    }

    /// `10^e` for any integer exponent.
    pub fn pow10(e: i64) -> Self {
        let m = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
        if e >= 0 {
            Rational::from_integer(m)
        } else {
            Rational::new(1, m)
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest binary64 value (correctly rounded).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// The exact value of a finite binary64 number.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    /// Parses an exact decimal (`-12.5`, `3e-4`) or a fraction (`7/3`).
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        let err = || ParseError::InvalidNumber(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::new(n, d));
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(k) => (&s[..k], s[k + 1..].parse::<i64>().map_err(|_| err())?),
            None => (s, 0),
        };
        let (neg, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let all: String = [int_part, frac_part].concat();
        let mut n = BigInt::from_str(&all).map_err(|_| err())?;
        if neg {
            n = -n;
        }
        let scale = exp - frac_part.len() as i64;
        Ok(Rational::from_integer(n) * Rational::pow10(scale))
    }

    /// Exact decimal expansion if the value has one.
    pub fn to_decimal_string(&self) -> Option<String> {
        let den = self.denom();
        let mut d = den.clone();
        let (mut twos, mut fives) = (0usize, 0usize);
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        while d.is_even() {
            d /= &two;
            twos += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            fives += 1;
        }
        if !d.is_one() {
            return None;
        }
        let k = twos.max(fives);
        let scaled = self.numer() * num_traits::pow(BigInt::from(10), k) / den;
        let neg = scaled.is_negative();
        let mut digits = scaled.abs().to_string();
        if k > 0 {
            if digits.len() <= k {
                digits = "0".repeat(k + 1 - digits.len()) + &digits;
            }
            digits.insert(digits.len() - k, '.');
        }
        Some(if neg { format!("-{digits}") } else { digits })
    }

    /// Scientific notation with `sig` significant digits, e.g. `5.00e3`.
    /// The mantissa is rounded half away from zero.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return format!("{:.*}e0", sig.saturating_sub(1), 0.0);
        }
        let sig = sig.max(1);
        let a = self.abs();
        let mut e = a.floor_log10();
        let round_at = |e: i64| -> BigInt {
            let scaled = &a * &Rational::pow10(sig as i64 - 1 - e);
            (scaled + Rational::new(1, 2)).floor()
        };
        let mut m = round_at(e);
        if m >= num_traits::pow(BigInt::from(10), sig) {
            e += 1;
            m = round_at(e);
        }
        let digits = m.to_string();
        let body = if sig > 1 {
            format!("{}.{}", &digits[..1], &digits[1..])
        } else {
            digits
        };
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{body}e{e}")
    }

    /// `floor(log10(|x|))` for non-zero `x`.
    pub fn floor_log10(&self) -> i64 {
        assert!(!self.is_zero(), "floor_log10 of zero");
        let a = self.abs();
        let digits = |n: &BigInt| n.to_string().trim_start_matches('-').len() as i64;
        let mut e = digits(a.numer()) - digits(a.denom());
        // `e` is within one of the answer.
        if a < Rational::pow10(e) {
            e -= 1;
        } else if a >= Rational::pow10(e + 1) {
            e += 1;
        }
        e
    }

    /// `log10(|x|)` to roughly double precision, valid for huge magnitudes.
    pub fn log10_approx(&self) -> f64 {
        let e = self.floor_log10();
        let m = self.abs() * Rational::pow10(-e);
        e as f64 + m.to_f64().log10()
    }

    /// `floor(log2(|x|))` for non-zero `x`.
    pub fn floor_log2(&self) -> i64 {
        assert!(!self.is_zero(), "floor_log2 of zero");
        let a = self.abs();
        let mut e = a.numer().bits() as i64 - a.denom().bits() as i64;
        if a < Rational::pow2(e) {
            e -= 1;
        }
        e
    }
}

impl fmt::Display for Rational {
    /// Exact decimal when terminating, otherwise `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_decimal_string() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(&self.0, rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Rational {
    /// Three-way comparison with zero.
    pub fn cmp_zero(&self) -> Ordering {
        self.signum().cmp(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(r("1.5"), Rational::new(3, 2));
        assert_eq!(r("-0.25"), Rational::new(-1, 4));
        assert_eq!(r("3e-4"), Rational::new(3, 10000));
        assert_eq!(r("2.5E2"), Rational::from_integer(250));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("7/3"), Rational::new(7, 3));
        assert!(Rational::parse("").is_err());
        assert!(Rational::parse("1.2.3").is_err());
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-1", "3.5", "0.0002", "-12.125", "1/3", "-22/7"] {
            assert_eq!(r(s).to_string(), s);
            assert_eq!(r(&r(s).to_string()), r(s));
        }
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(r("5000").to_sci_string(3), "5.00e3");
        assert_eq!(r("1/5000").to_sci_string(3), "2.00e-4");
        assert_eq!(r("1910000000").to_sci_string(3), "1.91e9");
        assert_eq!(r("9.996").to_sci_string(3), "1.00e1");
        assert_eq!(r("-65504").to_sci_string(3), "-6.55e4");
    }

    #[test]
    fn logs() {
        assert_eq!(r("1000").floor_log10(), 3);
        assert_eq!(r("999").floor_log10(), 2);
        assert_eq!(r("0.001").floor_log10(), -3);
        assert_eq!(r("0.00099").floor_log10(), -4);
        assert_eq!(r("8").floor_log2(), 3);
        assert_eq!(r("7").floor_log2(), 2);
        assert_eq!(r("1/8").floor_log2(), -3);
        assert_eq!(r("3/16").floor_log2(), -3);
        assert!((r("6.87e59").log10_approx() - 59.837).abs() < 1e-3);
    }

    #[test]
    fn f64_exact_conversion() {
        assert_eq!(Rational::from_f64(0.5).unwrap(), Rational::new(1, 2));
        assert_eq!(Rational::from_f64(0.1).unwrap().to_f64(), 0.1);
        assert!(Rational::from_f64(f64::NAN).is_none());
    }
}
