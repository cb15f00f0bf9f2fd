use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::rat::{self, serde_rat, Rat};
use crate::kernel::{parse_ratfunc, Poly, RatFunc};

/// A hypergeometric parameter `c0 + c1*n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamExpr {
    #[serde(with = "serde_rat")]
    pub c0: Rat,
    #[serde(with = "serde_rat")]
    pub c1: Rat,
}

impl ParamExpr {
    pub fn new(c0: Rat, c1: Rat) -> Self {
        ParamExpr { c0, c1 }
    }

    pub fn constant(c0: Rat) -> Self {
        ParamExpr::new(c0, Rat::zero())
    }

    pub fn int(k: i64) -> Self {
        ParamExpr::constant(rat::int(k))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    pub fn as_constant(&self) -> Option<&Rat> {
        self.c1.is_zero().then_some(&self.c0)
    }

    /// `self + k` for an integer `k`.
    pub fn shifted(&self, k: i64) -> Self {
        ParamExpr::new(&self.c0 + rat::int(k), self.c1.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        ParamExpr::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        ParamExpr::new(&self.c0 - &o.c0, &self.c1 - &o.c1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ParamExpr::new(&self.c0 * c, &self.c1 * c)
    }

    /// `self - o` when it is an integer.
    pub fn int_offset(&self, o: &Self) -> Option<i64> {
        let d = self.sub(o);
        if d.c1.is_zero() && rat::is_integer(&d.c0) {
            num_traits::ToPrimitive::to_i64(&d.c0.to_integer())
        } else {
            None
        }
    }

    /// Key identifying the integer-shift class: `c1` and `c0 mod 1`.
    pub(crate) fn shift_class(&self) -> (Rat, Rat) {
        let frac = &self.c0 - self.c0.floor();
        (self.c1.clone(), frac)
    }

    pub fn eval(&self, n0: &Rat) -> Rat {
        &self.c0 + &self.c1 * n0
    }

    pub fn to_poly(&self) -> Poly {
        &Poly::constant(self.c0.clone()) + &Poly::n().scale(&self.c1)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        self.to_poly().into()
    }

    /// Accepts any rational expression that simplifies to an affine
    /// polynomial in `n`.
    pub fn from_ratfunc(f: &RatFunc) -> Result<Self> {
        let p = f
            .as_polynomial()
            .filter(|p| p.degree_n() <= 1 && p.degree_z() == 0)
            .ok_or_else(|| Error::Invalid(format!("parameter {f} is not affine in n")))?;
        Ok(ParamExpr::new(
            p.coeff(crate::kernel::Monomial::ONE),
            p.coeff(crate::kernel::Monomial::new(1, 0)),
        ))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let f = parse_ratfunc(s)?;
        ParamExpr::from_ratfunc(&f)
            .map_err(|_| Error::parse(0, format!("parameter {s:?} is not affine in n")))
    }
}

fn fmt_n_term(c1: &Rat) -> String {
    let (p, q) = (c1.numer().abs(), c1.denom().clone());
    let sign = if c1.is_negative() { "-" } else { "" };
    let head = if p.is_one() {
        "n".to_string()
    } else {
        format!("{p}*n")
    };
    if q.is_one() {
        format!("{sign}{head}")
    } else {
        format!("{sign}{head}/{q}")
    }
}

/// Renders as `3-n`, `2-n/2`, `n/2-1` or `(n-1)/2`.
impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c0, c1) = (&self.c0, &self.c1);
        if c1.is_zero() {
            return write!(f, "{}", rat::fmt_rat(c0));
        }
        if c0.is_zero() {
            return write!(f, "{}", fmt_n_term(c1));
        }
        if c0.denom() == c1.denom() && !c0.denom().is_one() {
            let d = c0.denom();
            let inner = ParamExpr::new(
                Rat::from_integer(c0.numer().clone()),
                Rat::from_integer(c1.numer().clone()),
            );
            return write!(f, "({inner})/{d}");
        }
        let c0s = rat::fmt_rat(&c0.abs());
        if c1.is_positive() {
            let sign = if c0.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{c0s}", fmt_n_term(c1))
        } else {
            write!(f, "{}{}", rat::fmt_rat(c0), fmt_n_term(c1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::rat;

    #[test]
    fn display_round_trips() {
        for s in [
            "3-n", "2-n/2", "n/2-1", "(n-1)/2", "1/2", "1", "n", "-n", "n-2", "(1-n)/2", "3*n/2+1",
            "-2",
        ] {
            let p = ParamExpr::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(ParamExpr::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn offsets() {
        let a = ParamExpr::parse("3-n").unwrap();
        let b = ParamExpr::parse("5-n").unwrap();
        assert_eq!(b.int_offset(&a), Some(2));
        assert_eq!(a.int_offset(&ParamExpr::parse("3-n/2").unwrap()), None);
        assert_eq!(a.eval(&rat(7, 2)), rat(-1, 2));
        assert!(ParamExpr::parse("n^2").is_err());
        assert!(ParamExpr::parse("z").is_err());
    }
}
