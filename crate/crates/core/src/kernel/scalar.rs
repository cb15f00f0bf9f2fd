//! Scalar abstraction for numeric evaluation.
//!
//! Symbolic objects (polynomials, rational functions, Pochhammer symbols)
//! evaluate into any [`Scalar`]: exact rationals, `f64`, or [`BigFloat`].
//! Series summation additionally needs ordering and magnitudes, which
//! [`RealScalar`] supplies.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, Signed, Zero};

use super::bigfloat::{BigFloat, Precision};
use super::rat::{self, Rat};

pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whatever is needed to build a constant of this type (a precision for
    /// `BigFloat`, nothing for exact or machine types).
    type Ctx: Copy + Debug;

    fn from_rat(q: &Rat, ctx: Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn vanishes(&self) -> bool;

    fn zero_like(&self) -> Self {
        Self::from_rat(&Rat::zero(), self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::from_rat(&rat::int(1), self.ctx())
    }

    fn embed(&self, q: &Rat) -> Self {
        Self::from_rat(q, self.ctx())
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait RealScalar: Scalar + PartialOrd {
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_integer(&self) -> bool;
}

impl Scalar for Rat {
    type Ctx = ();

    fn from_rat(q: &Rat, _: ()) -> Self {
        q.clone()
    }
    fn ctx(&self) {}
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl RealScalar for Rat {
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        rat::to_f64(self)
    }
    fn is_integer(&self) -> bool {
        rat::is_integer(self)
    }
}

impl Scalar for f64 {
    type Ctx = ();

    fn from_rat(q: &Rat, _: ()) -> Self {
        rat::to_f64(q)
    }
    fn ctx(&self) {}
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
}

impl RealScalar for f64 {
    fn abs(&self) -> Self {
        Float::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }
}

impl Scalar for BigFloat {
    type Ctx = Precision;

    fn from_rat(q: &Rat, ctx: Precision) -> Self {
        BigFloat::from_rat(q, ctx)
    }
    fn ctx(&self) -> Precision {
        self.precision()
    }
    fn vanishes(&self) -> bool {
        BigFloat::is_zero(self)
    }
}

impl RealScalar for BigFloat {
    fn abs(&self) -> Self {
        BigFloat::abs(self)
    }
    fn to_f64(&self) -> f64 {
        BigFloat::to_f64(self)
    }
    fn is_integer(&self) -> bool {
        BigFloat::is_integer(self)
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer<T: Scalar>(x: &T, k: u32) -> T {
    let mut acc = x.one_like();
    let mut cur = x.clone();
    let one = x.one_like();
    for _ in 0..k {
        acc = acc * cur.clone();
        cur = cur + one.clone();
    }
    acc
}
