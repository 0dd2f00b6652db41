//! Scalar abstraction shared by the density checks and the bound predictors.
//!
//! Verdicts that must be reproducible are computed with an exact rational
//! type; `f32`/`f64` are accepted for quick reports. The only transcendental
//! operation needed anywhere is `log2`, which rational types answer with a
//! certified dyadic bracket instead of a point value.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Number of fractional bits resolved by the rational `log2` bracket.
pub const LOG2_BITS: u32 = 48;

pub trait Scalar:
    Num + Clone + PartialOrd + Signed + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn from_count(n: u64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    fn floor_int(&self) -> i64;

    fn ceil_int(&self) -> i64;

    /// Lower and upper bounds on `log2(self)` for `self > 0`. Exact types
    /// return a certified bracket; floating types return the same value twice.
    fn log2_bounds(&self) -> (Self, Self);

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_count(n: u64) -> Self {
                n as $t
            }

            fn ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn floor_int(&self) -> i64 {
                self.floor() as i64
            }

            fn ceil_int(&self) -> i64 {
                self.ceil() as i64
            }

            fn log2_bounds(&self) -> (Self, Self) {
                let l = self.log2();
                (l, l)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_count(n: u64) -> Self {
        Ratio::from_integer(i64::try_from(n).expect("count fits in i64"))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn floor_int(&self) -> i64 {
        self.floor().to_integer()
    }

    fn ceil_int(&self) -> i64 {
        self.ceil().to_integer()
    }

    fn log2_bounds(&self) -> (Self, Self) {
        let big = BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()));
        // 24 bits keeps products of a few brackets inside i64.
        let (lo, hi) = log2_bracket(&big, 24);
        (to_small(&lo), to_small(&hi))
    }
}

fn to_small(r: &BigRational) -> Ratio<i64> {
    Ratio::new(
        r.numer().to_i64().expect("dyadic numerator fits in i64"),
        r.denom().to_i64().expect("dyadic denominator fits in i64"),
    )
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn floor_int(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("floor fits in i64")
    }

    fn ceil_int(&self) -> i64 {
        self.ceil().to_integer().to_i64().expect("ceil fits in i64")
    }

    fn log2_bounds(&self) -> (Self, Self) {
        log2_bracket(self, LOG2_BITS)
    }
}

/// Parses `"3/4"`, `"0.25"`, `"2"` or `"1e-3"`-free decimals into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(num, den);
    Some(if negative { -value } else { value })
}

/// Converts an exact rational into any scalar, rounding for floating types.
pub fn from_big<T: Scalar>(value: &BigRational) -> T {
    if T::EXACT {
        if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
            return T::ratio(n, d);
        }
    }
    T::from_f64(value.to_f64().unwrap_or(f64::NAN)).expect("representable scalar")
}

/// Certified dyadic bracket `[lo, hi]` around `log2(x)` for a positive rational.
///
/// The integer part is exact; fractional bits come from repeated squaring of
/// the mantissa, carried as a pair of fixed-point bounds so the numbers stay
/// small. When a bit cannot be decided from the bounds the bracket is returned
/// at the resolution reached so far.
pub fn log2_bracket(x: &BigRational, frac_bits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "log2 of a non-positive value");
    let num = x.numer();
    let den = x.denom();
    let mut k = num.bits() as i64 - den.bits() as i64;
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    // Normalise to 2^k <= x < 2^(k+1).
    while x < &pow2(k) {
        k -= 1;
    }
    while x >= &pow2(k + 1) {
        k += 1;
    }
    let y = x / pow2(k);
    let int_part = BigRational::from_integer(BigInt::from(k));
    if y.is_one() {
        return (int_part.clone(), int_part);
    }

    let precision = frac_bits as usize + 40;
    let scale = BigInt::one() << precision;
    let scaled = y * BigRational::from_integer(scale.clone());
    let mut lo = scaled.floor().to_integer();
    let mut hi = scaled.ceil().to_integer();
    let two = &scale << 1;
    let mut acc = BigInt::zero();
    let mut resolved = 0u32;
    for _ in 0..frac_bits {
        lo = (&lo * &lo) >> precision;
        hi = ceil_shift(&hi * &hi, precision);
        acc <<= 1;
        if lo >= two {
            acc += 1;
            lo >>= 1;
            hi = ceil_shift(hi, 1);
        } else if hi >= two {
            // Undecidable at this precision; back out the pending bit.
            acc >>= 1;
            break;
        }
        resolved += 1;
    }
    let denom = BigInt::one() << resolved as usize;
    let lo_frac = BigRational::new(acc.clone(), denom.clone());
    let hi_frac = BigRational::new(acc + 1, denom);
    (&int_part + lo_frac, int_part + hi_frac)
}

fn ceil_shift(value: BigInt, shift: usize) -> BigInt {
    debug_assert!(value.sign() != Sign::Minus);
    let (q, r) = value.div_rem(&(BigInt::one() << shift));
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn powers_of_two_are_exact() {
        let (lo, hi) = log2_bracket(&big(64, 1), 32);
        assert_eq!(lo, big(6, 1));
        assert_eq!(hi, big(6, 1));
        let (lo, hi) = log2_bracket(&big(1, 8), 32);
        assert_eq!((lo, hi), (big(-3, 1), big(-3, 1)));
    }

    #[test]
    fn bracket_contains_float_log() {
        for (n, d) in [(3, 1), (56, 1), (1000, 7), (5, 3), (4095, 2), (7, 8)] {
            let (lo, hi) = log2_bracket(&big(n, d), LOG2_BITS);
            let f = (n as f64 / d as f64).log2();
            assert!(lo.to_f64().unwrap() <= f + 1e-12, "{n}/{d}");
            assert!(hi.to_f64().unwrap() >= f - 1e-12, "{n}/{d}");
            let width = (&hi - &lo).to_f64().unwrap();
            assert!(width <= 2f64.powi(-40), "bracket too wide for {n}/{d}: {width}");
        }
    }

    #[test]
    fn bracket_is_certified_by_powers() {
        // 2^lo <= x  <=>  lo * q <= q * log2 x; check via integer powers for a
        // coarse bracket: (2^(p/q))^q = 2^p compared with x^q.
        let x = big(6, 1);
        let (lo, hi) = log2_bracket(&x, 10);
        let q = lo.denom().max(hi.denom()).to_usize().unwrap();
        let scaled =
            |r: &BigRational| (r * BigRational::from_integer(BigInt::from(q))).to_integer().to_usize().unwrap();
        let xq = num_traits::pow(BigInt::from(6), q);
        assert!(BigInt::one() << scaled(&lo) <= xq);
        assert!(xq <= BigInt::one() << scaled(&hi));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/2"), Some(big(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(big(1, 4)));
        assert_eq!(parse_rational("3"), Some(big(3, 1)));
        assert_eq!(parse_rational("-.5"), Some(big(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn small_ratio_floor_ceil() {
        let r = Ratio::<i64>::ratio(7, 2);
        assert_eq!(r.floor_int(), 3);
        assert_eq!(r.ceil_int(), 4);
        let f = 3.5f64;
        assert_eq!(f.floor_int(), 3);
        assert_eq!(f.ceil_int(), 4);
    }
}
