//! Outward rational enclosures of irrational values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Default number of fractional bits for enclosures.
pub const DEFAULT_PRECISION: u32 = 64;

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-a, b)
}

/// Bounds `(lo, hi)` on `atanh(z) · 2^w` for `0 ≤ z ≤ 1/3`.
fn atanh_fixed(z: &Rational, w: u64) -> (BigInt, BigInt) {
    debug_assert!(!z.is_negative() && *z <= Rational::new(1, 3));
    let scale = BigInt::one() << w;
    let zn = z.numer() * &scale;
    let zd = z.denom();
    let (z_lo, z_hi) = (div_floor(&zn, zd), div_ceil(&zn, zd));
    let (z2_lo, z2_hi) = ((&z_lo * &z_lo) >> w, div_ceil(&(&z_hi * &z_hi), &scale));

    // Power terms z^(2j+1) in fixed point, rounded down and up respectively.
    let (mut p_lo, mut p_hi) = (z_lo, z_hi);
    let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
    let mut j: u64 = 0;
    loop {
        let d = BigInt::from(2 * j + 1);
        if p_lo.is_zero() {
            // Tail sum_{i>=j} z^(2i+1)/(2i+1) <= z^(2j+1)/(2j+1) · 1/(1 - z²) <= p · 9/8.
            s_hi += div_ceil(&(&p_hi * 9), &(d * 8));
            break;
        }
        s_lo += div_floor(&p_lo, &d);
        s_hi += div_ceil(&p_hi, &d);
        p_lo = (&p_lo * &z2_lo) >> w;
        p_hi = div_ceil(&(&p_hi * &z2_hi), &scale);
        j += 1;
    }
    (s_lo, s_hi)
}

/// Rational bounds `lo < ln(x) < hi` (or `lo = hi = 0` for `x = 1`) rounded
/// outward to `prec` fractional bits. `x` must be positive.
pub fn ln_bounds(x: &Rational, prec: u32) -> (Rational, Rational) {
    assert!(x.is_positive(), "ln of a non-positive value");
    if x.is_one() {
        return (Rational::zero(), Rational::zero());
    }
    let k = x.floor_log2();
    let y = x * &Rational::pow2(-k);
    let z = (&y - &Rational::one()) / (&y + &Rational::one());
    let guard = 16 + 64 - (k.unsigned_abs().leading_zeros() as u64);
    let w = prec as u64 + guard;

    let (t_lo, t_hi) = atanh_fixed(&z, w);
    let (l2_lo, l2_hi) = atanh_fixed(&Rational::new(1, 3), w);
    // ln y = 2 atanh(z), ln 2 = 2 atanh(1/3).
    let kk = BigInt::from(k);
    let (k_lo, k_hi) = if k >= 0 {
        (&kk * &l2_lo, &kk * &l2_hi)
    } else {
        (&kk * &l2_hi, &kk * &l2_lo)
    };
    let lo = (t_lo + k_lo) * 2;
    let hi = (t_hi + k_hi) * 2;

    let shift = w - prec as u64;
    let unit = BigInt::one() << shift;
    let den = BigInt::one() << prec;
    (
        Rational::new(div_floor(&lo, &unit), den.clone()),
        Rational::new(div_ceil(&hi, &unit), den),
    )
}

/// Bounds `lo ≤ x^(i/p) ≤ hi` for `x > 0`, with `lo = hi` iff the root is
/// exact at `prec` fractional bits.
pub fn root_bounds(x: &Rational, i: u32, p: u32, prec: u32) -> (Rational, Rational) {
    assert!(x.is_positive() && p > 0);
    let a = x.numer();
    let b = x.denom();
    // x^(i/p) = (a^i · b^(p-i))^(1/p) / b
    let n = num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), (p - i) as usize);
    let scaled = n << (prec as usize * p as usize);
    let r = scaled.nth_root(p);
    let den = b * (BigInt::one() << prec);
    if num_traits::pow(r.clone(), p as usize) == scaled {
        let v = Rational::new(r, den);
        (v.clone(), v)
    } else {
        (
            Rational::new(r.clone(), den.clone()),
            Rational::new(r + 1, den),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn ln_encloses_f64_reference() {
        for s in [
            "2",
            "0.5",
            "10",
            "1.7",
            "1e-16",
            "7.1e5",
            "3/2",
            "1.0000001",
            "123456789",
        ] {
            let x = r(s);
            let (lo, hi) = ln_bounds(&x, 64);
            assert!(lo < hi, "{s}");
            let reference = x.to_f64().ln();
            // The reference sees `x` rounded to binary64.
            assert!(
                lo.to_f64() <= reference + 1e-15 && reference - 1e-15 <= hi.to_f64(),
                "{s}"
            );
            assert!((&hi - &lo) <= Rational::pow2(-60), "{s}: too wide");
        }
    }

    #[test]
    fn ln_one_is_exact() {
        assert_eq!(
            ln_bounds(&Rational::one(), 64),
            (Rational::zero(), Rational::zero())
        );
    }

    #[test]
    fn ln_bounds_are_consistent_across_precisions() {
        let x = r("5.5");
        let (a, b) = ln_bounds(&x, 40);
        let (c, d) = ln_bounds(&x, 120);
        assert!(a <= c && c < d && d <= b);
    }

    #[test]
    fn ln_two_matches_known_digits() {
        // ln 2 = 0.693147180559945309417232121458176568...
        let (lo, hi) = ln_bounds(&r("2"), 100);
        let below = r("0.6931471805599453094172321214");
        let above = r("0.6931471805599453094172321215");
        assert!(below < lo && hi < above);
    }

    #[test]
    fn roots() {
        assert_eq!(root_bounds(&r("4"), 1, 2, 64), (r("2"), r("2")));
        assert_eq!(root_bounds(&r("8"), 2, 3, 64), (r("4"), r("4")));
        let (lo, hi) = root_bounds(&r("10"), 1, 4, 64);
        assert!(lo < hi);
        let ten = r("10");
        assert!(&(&lo * &lo) * &(&lo * &lo) < ten && ten < &(&hi * &hi) * &(&hi * &hi));
    }
}
