//! Helpers around `BigRational`: the "p/q" text form and a few
//! conversions the rest of the crate keeps reaching for.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parses `p`, `-p`, or `p/q`. Decimal notation is rejected so that every
/// input is exactly representable.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::parse(
            0,
            format!("decimal input {s:?} not accepted; use p/q"),
        ));
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("bad numerator in {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| {
        Error::parse(
            s.find('/').unwrap_or(0) + 1,
            format!("bad denominator in {s:?}"),
        )
    })?;
    if den.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(Rat::new(num, den))
}

pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

pub fn is_nonpositive_integer(q: &Rat) -> bool {
    is_integer(q) && !q.is_positive()
}

pub fn to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a rational as its "p/q" string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(fmt_rat(&rat(-4, 6)), "-2/3");
        assert_eq!(fmt_rat(&int(5)), "5");
        assert!(parse_rat("0.25").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
