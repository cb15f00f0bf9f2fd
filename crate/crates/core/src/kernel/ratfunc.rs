//! Rational functions in `n` and `z` kept in canonical form: numerator and
//! denominator coprime, denominator with leading coefficient 1 under the
//! graded-lex ordering. Structural equality is therefore mathematical
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gcd::{div_exact, gcd_poly};
use super::poly::Poly;
use super::rat::Rat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd_poly(&num, &den);
            if g.as_constant().is_some() {
                (num, den)
            } else {
                (div_exact(&num, &g), div_exact(&den, &g))
            }
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = Rat::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn n() -> Self {
        Poly::n().into()
    }

    pub fn z() -> Self {
        Poly::z().into()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_polynomial().and_then(|p| p.as_constant())
    }

    pub fn depends_on_z(&self) -> bool {
        self.num.degree_z() > 0 || self.den.degree_z() > 0
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(RatFunc::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn eval<T: Scalar>(&self, n: &T, z: &T) -> Result<T> {
        let d = self.den.eval(n, z);
        if d.vanishes() {
            return Err(Error::RationalPole);
        }
        Ok(self.num.eval(n, z) / d)
    }

    pub fn subs_n(&self, n0: &Rat) -> Result<Self> {
        RatFunc::new(self.num.subs_n(n0), self.den.subs_n(n0)).map_err(|_| Error::RationalPole)
    }

    pub fn subs_z(&self, z0: &Rat) -> Result<Self> {
        RatFunc::new(self.num.subs_z(z0), self.den.subs_z(z0)).map_err(|_| Error::RationalPole)
    }

    pub fn deriv_z(&self) -> Self {
        let num = &(&self.num.deriv_z() * &self.den) - &(&self.num * &self.den.deriv_z());
        RatFunc::normalized(num, &self.den * &self.den)
    }

    /// `z d/dz` applied to the function.
    pub fn theta(&self) -> Self {
        &RatFunc::z() * &self.deriv_z()
    }

    /// Canonical text, e.g. `(3*n-8)/(n-2)`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_ratfunc(s)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        let g = gcd_poly(&self.den, &o.den);
        let a = div_exact(&self.den, &g);
        let b = div_exact(&o.den, &g);
        let num = &(&self.num * &b) + &(&o.num * &a);
        RatFunc::normalized(num, &a * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: &self.num * &o.num,
                den: Poly::one(),
            };
        }
        // Cross-cancel before multiplying to keep the operands small.
        let g1 = gcd_poly(&self.num, &o.den);
        let g2 = gcd_poly(&o.num, &self.den);
        let n1 = div_exact(&self.num, &g1);
        let d2 = div_exact(&o.den, &g1);
        let n2 = div_exact(&o.num, &g2);
        let d1 = div_exact(&self.den, &g2);
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some() {
            return write!(f, "{}", self.num);
        }
        // Print with integer, jointly primitive coefficients.
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            l = l.lcm(c.denom());
        }
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            g = g.gcd(&(c * Rat::from_integer(l.clone())).to_integer());
        }
        let s = Rat::new(l, g);
        let (num, den) = (self.num.scale(&s), self.den.scale(&s));
        let wrap = |p: &Poly| {
            if p.num_terms() > 1
                || p.leading()
                    .is_some_and(|(m, c)| m.degree() > 0 && !c.is_one())
            {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        // A product in the denominator needs parentheses too: `1/(n*z)`.
        let d = wrap(&den);
        let d = if d.starts_with('(') || !d.contains(['*', '-']) {
            d
        } else {
            format!("({d})")
        };
        write!(f, "{}/{d}", wrap(&num))
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        RatFunc::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::{int, rat};

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn gcd_cancellation() {
        assert_eq!(rf("(n^2-4)/(n-2)"), rf("n+2"));
        assert_eq!(rf("(z^2-z)/z"), rf("z-1"));
        let a = rf("(3*n-8)/(n*z-2)");
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(rf("(6*n-16)/(2*n-4)").to_string(), "(3*n-8)/(n-2)");
        assert_eq!(rf("z/4").to_string(), "z/4");
        assert_eq!(rf("2/(4*z)").to_string(), "1/(2*z)");
        assert_eq!(rf("(n-2)/(2*n*z-z)").to_string(), "(n-2)/(2*n*z-z)");
    }

    #[test]
    fn eval_and_poles() {
        let f = rf("3*n-8");
        assert_eq!(f.eval(&int(4), &int(0)).unwrap(), int(4));
        assert_eq!(f.eval(&rat(7, 2), &int(0)).unwrap(), rat(5, 2));
        assert_eq!(
            rf("1/(n-4)").eval(&int(4), &int(0)),
            Err(Error::RationalPole)
        );
        assert_eq!(rf("1").try_div(&RatFunc::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn theta_of_rational() {
        // theta(1/(1-z)) = z/(1-z)^2
        assert_eq!(rf("1/(1-z)").theta(), rf("z/(1-z)^2"));
    }
}
