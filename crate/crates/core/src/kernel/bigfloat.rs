//! Arbitrary-precision binary floating point.
//!
//! A thin value type over `astro_float` that carries its own precision, so
//! arithmetic operators work without threading a context through every
//! expression. Binary operations run at the larger of the two precisions
//! with round-to-nearest-even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_DIGITS: u32 = 10;
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(usize);

impl Precision {
    /// Precision for a result quoted at `digits` significant decimal digits:
    /// the requested digits plus ten guard digits.
    pub fn from_digits(digits: u32) -> Self {
        Self::from_bits(((digits + GUARD_DIGITS) as f64 * BITS_PER_DIGIT).ceil() as usize + 8)
    }

    pub fn from_bits(bits: usize) -> Self {
        // astro-float rounds up to the word size anyway.
        Precision(bits.max(64).div_ceil(64) * 64)
    }

    pub fn bits(self) -> usize {
        self.0
    }

    pub fn with_extra_bits(self, extra: usize) -> Self {
        Self::from_bits(self.0 + extra)
    }

    /// Decimal digits this precision can faithfully carry.
    pub fn decimal_digits(self) -> u32 {
        (self.0 as f64 / BITS_PER_DIGIT).floor() as u32
    }
}

#[derive(Clone)]
pub struct BigFloat {
    v: astro_float::BigFloat,
    prec: Precision,
}

impl BigFloat {
    fn wrap(v: astro_float::BigFloat, prec: Precision) -> Self {
        debug_assert!(
            !v.is_nan(),
            "BigFloat operation produced NaN: {:?}",
            v.err()
        );
        BigFloat { v, prec }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn zero(prec: Precision) -> Self {
        Self::wrap(astro_float::BigFloat::from_u8(0, prec.bits()), prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: Precision) -> Self {
        Self::wrap(astro_float::BigFloat::from_i64(i, prec.bits()), prec)
    }

    pub fn from_bigint(i: &BigInt, prec: Precision) -> Self {
        if i.is_zero() {
            return Self::zero(prec);
        }
        let (sign, mag) = i.to_u64_digits();
        let bits = i.magnitude().bits() as i64;
        let words = mag.len() as i64;
        // from_words interprets the words as a fraction 0.m scaled by 2^e.
        let e = (words * 64) as i32;
        let s = if sign == BigSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let mut v = astro_float::BigFloat::from_words(&mag, s, e);
        debug_assert!(bits <= words * 64);
        v.set_precision(prec.bits(), RM).expect("set precision");
        Self::wrap(v, prec)
    }

    pub fn from_rat(q: &Rat, prec: Precision) -> Self {
        let work = prec.with_extra_bits(64);
        let num = Self::from_bigint(q.numer(), work);
        if q.denom().is_one() {
            return num.with_precision(prec);
        }
        let den = Self::from_bigint(q.denom(), work);
        (num / den).with_precision(prec)
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        let mut v = self.v.clone();
        v.set_precision(prec.bits(), RM).expect("set precision");
        Self::wrap(v, prec)
    }

    /// Exact rational value of the binary representation.
    pub fn to_rat(&self) -> Rat {
        match self.v.as_raw_parts() {
            None => panic!("non-finite BigFloat"),
            Some((words, _, sign, exp, _)) => {
                let mag = BigUint::new(
                    words
                        .iter()
                        .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                        .collect(),
                );
                if mag.is_zero() {
                    return Rat::zero();
                }
                let shift = exp as i64 - (words.len() as i64) * 64;
                let mut num = BigInt::from_biguint(BigSign::Plus, mag);
                if sign == Sign::Neg {
                    num = -num;
                }
                if shift >= 0 {
                    Rat::from_integer(num << shift as usize)
                } else {
                    Rat::new(num, BigInt::one() << (-shift) as usize)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Keep the top 64 bits only; exact conversion is pointless here.
        let r = self.with_precision(Precision::from_bits(64)).to_rat();
        r.to_f64()
            .unwrap_or(if r.is_negative() { f64::MIN } else { f64::MAX })
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.v.is_int()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    fn join(&self, o: &Self) -> Precision {
        self.prec.max(o.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec.bits(), RM), self.prec)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.v.exp(p, RM, cc)), self.prec)
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.v.ln(p, RM, cc)), self.prec)
    }

    pub fn sin(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.v.sin(p, RM, cc)), self.prec)
    }

    pub fn pi(prec: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec.bits(), RM)), prec)
    }

    pub fn powi(&self, k: u64) -> Self {
        Self::wrap(self.v.powi(k as usize, self.prec.bits(), RM), self.prec)
    }

    /// `self^e` for a positive base. A zero base gives zero for positive
    /// exponents; callers handle the other cases.
    pub fn powf(&self, e: &BigFloat) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec);
        }
        (e.clone() * self.ln()).exp()
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.v.floor(), self.prec)
    }

    /// Decimal rendering with `digits` significant digits (rounded half up).
    pub fn to_decimal_string(&self, digits: u32) -> String {
        format_decimal(&self.to_rat(), digits)
    }
}

/// Formats an exact rational with `digits` significant decimal digits.
/// Plain notation for moderate exponents, scientific otherwise.
pub fn format_decimal(x: &Rat, digits: u32) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("0.{}", "0".repeat(digits as usize - 1));
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // Decimal exponent e with 10^e <= ax < 10^(e+1).
    let mut e = (ax.numer().bits() as i64 - ax.denom().bits() as i64) * 30103 / 100000;
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while ax >= pow10(e + 1) {
        e += 1;
    }
    while ax < pow10(e) {
        e -= 1;
    }
    let scaled = &ax * pow10(digits as i64 - 1 - e);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut m = if r.clone() * 2 >= *scaled.denom() {
        q + 1
    } else {
        q
    };
    if m >= num_traits::pow(ten.clone(), digits as usize) {
        m /= &ten;
        e += 1;
    }
    let s = m.to_string();
    let sign = if neg { "-" } else { "" };
    if (-5..21).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if s.len() > int_len {
                format!("{sign}{}.{}", &s[..int_len], &s[int_len..])
            } else {
                format!("{sign}{}{}", s, "0".repeat(int_len - s.len()))
            }
        } else {
            format!("{sign}0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else if s.len() > 1 {
        format!("{sign}{}.{}e{e}", &s[..1], &s[1..])
    } else {
        format!("{sign}{s}e{e}")
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.to_decimal_string(self.prec.decimal_digits().min(40))
        )
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|d| d as u32).unwrap_or_else(|| {
            self.prec
                .decimal_digits()
                .saturating_sub(GUARD_DIGITS)
                .max(1)
        });
        write!(f, "{}", self.to_decimal_string(digits))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.v.cmp(&o.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                let p = self.join(&o);
                BigFloat::wrap(self.v.$call(&o.v, p.bits(), RM), p)
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                let p = self.join(o);
                BigFloat::wrap(self.v.$call(&o.v, p.bits(), RM), p)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.v.neg(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::{int, rat};

    fn p() -> Precision {
        Precision::from_digits(40)
    }

    #[test]
    fn exact_round_trip_of_dyadics() {
        for q in [
            rat(3, 4),
            rat(-5, 8),
            int(12345678901),
            int(0),
            rat(1, 1 << 40),
        ] {
            assert_eq!(BigFloat::from_rat(&q, p()).to_rat(), q);
        }
        let big: BigInt = "123456789012345678901234567890123".parse().unwrap();
        assert_eq!(
            BigFloat::from_bigint(&big, p()).to_rat(),
            Rat::from_integer(big)
        );
    }

    #[test]
    fn third_is_close() {
        let x = BigFloat::from_rat(&rat(1, 3), p());
        let err = (x.to_rat() - rat(1, 3)).abs();
        assert!(err < rat(1, 1) / Rat::from_integer(BigInt::one() << 150usize));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&rat(7, 8), 3), "0.875");
        assert_eq!(format_decimal(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(format_decimal(&int(24), 4), "24.00");
        assert_eq!(format_decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(format_decimal(&rat(999, 1000), 2), "1.0");
        assert_eq!(format_decimal(&rat(1, 10_000_000), 2), "1.0e-7");
        let pi = BigFloat::pi(p());
        assert_eq!(pi.to_decimal_string(20), "3.1415926535897932385");
    }

    #[test]
    fn transcendental_sanity() {
        let two = BigFloat::from_i64(2, p());
        assert_eq!(
            two.ln().to_decimal_string(30),
            "0.693147180559945309417232121458"
        );
        assert_eq!(
            two.sqrt().to_decimal_string(30),
            "1.41421356237309504880168872421"
        );
        let half = BigFloat::from_rat(&rat(1, 2), p());
        assert!(
            (half.powf(&two) - BigFloat::from_rat(&rat(1, 4), p()))
                .abs()
                .to_f64()
                < 1e-45
        );
    }
}
