//! Sparse polynomials in the two symbols `n` and `z` over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use super::scalar::Scalar;

/// Exponent pair `n^n z^z`, ordered graded-lexicographically with `n`
/// before `z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub n: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: 0, z: 0 };

    pub fn new(n: u32, z: u32) -> Self {
        Monomial { n, z }
    }

    pub fn degree(self) -> u32 {
        self.n + self.z
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then(self.n.cmp(&o.n))
            .then(self.z.cmp(&o.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.n + o.n, self.z + o.z)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn n() -> Self {
        Self::monomial(Rat::one(), Monomial::new(1, 0))
    }

    pub fn z() -> Self {
        Self::monomial(Rat::one(), Monomial::new(0, 1))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Monomial::ONE).is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under the canonical ordering.
    pub fn leading(&self) -> Option<(Monomial, &Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree_n(&self) -> u32 {
        self.terms.keys().map(|m| m.n).max().unwrap_or(0)
    }

    pub fn degree_z(&self) -> u32 {
        self.terms.keys().map(|m| m.z).max().unwrap_or(0)
    }

    /// Largest `k` with `z^k` dividing the polynomial.
    pub fn z_valuation(&self) -> u32 {
        self.terms.keys().map(|m| m.z).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by `z^k`; the caller guarantees divisibility.
    pub fn shift_z_down(&self, k: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.z >= k);
                    (Monomial::new(m.n, m.z - k), c.clone())
                })
                .collect(),
        }
    }

    pub fn eval<T: Scalar>(&self, n: &T, z: &T) -> T {
        let mut acc = n.zero_like();
        for (m, c) in &self.terms {
            acc = acc + n.embed(c) * n.powi(m.n) * z.powi(m.z);
        }
        acc
    }

    pub fn subs_n(&self, n0: &Rat) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::new(0, m.z),
                c * num_traits::pow(n0.clone(), m.n as usize),
            )
        }))
    }

    pub fn subs_z(&self, z0: &Rat) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::new(m.n, 0),
                c * num_traits::pow(z0.clone(), m.z as usize),
            )
        }))
    }

    pub fn deriv_z(&self) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.z > 0).map(|(m, c)| {
            (
                Monomial::new(m.n, m.z - 1),
                c * Rat::from_integer(m.z.into()),
            )
        }))
    }

    /// `z d/dz`, which keeps monomials in place and weights them by their
    /// `z` degree.
    pub fn theta(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, c * Rat::from_integer(m.z.into()))),
        )
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(*m1 * *m2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

fn fmt_monomial(m: Monomial) -> String {
    let mut parts = Vec::new();
    for (sym, e) in [("n", m.n), ("z", m.z)] {
        match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            _ => parts.push(format!("{sym}^{e}")),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in descending order, rational coefficients written
/// as `p*mono/q` (e.g. `3*n-8`, `-n/2+2`, `z/4`).
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = fmt_monomial(*m);
            let (p, q) = (a.numer(), a.denom());
            let mut body = if mono.is_empty() {
                p.to_string()
            } else if p.is_one() {
                mono
            } else {
                format!("{p}*{mono}")
            };
            if !q.is_one() {
                body = format!("{body}/{q}");
            }
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Poly {
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat::{int, rat};

    fn lin(c0: i64, cn: i64) -> Poly {
        &Poly::constant(int(c0)) + &Poly::n().scale(&int(cn))
    }

    #[test]
    fn ordering_is_graded_lex() {
        let mut ms = vec![
            Monomial::new(0, 2),
            Monomial::new(1, 1),
            Monomial::new(2, 0),
            Monomial::new(0, 0),
            Monomial::new(1, 0),
            Monomial::new(0, 1),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Monomial::new(0, 0),
                Monomial::new(0, 1),
                Monomial::new(1, 0),
                Monomial::new(0, 2),
                Monomial::new(1, 1),
                Monomial::new(2, 0),
            ]
        );
    }

    #[test]
    fn display() {
        assert_eq!(lin(-8, 3).to_string(), "3*n-8");
        assert_eq!(Poly::z().scale(&rat(1, 4)).to_string(), "z/4");
        let p = &(&Poly::n() * &Poly::z()) - &Poly::n().scale(&rat(3, 2));
        assert_eq!(p.to_string(), "n*z-3*n/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = &lin(-8, 3) * &lin(-2, 1);
        assert_eq!(p.eval(&int(4), &int(0)), int(8));
        assert_eq!(lin(-8, 3).eval(&rat(7, 2), &int(0)), rat(5, 2));
        assert!((&p - &p).is_zero());
        assert_eq!(Poly::z().pow(3).theta(), Poly::z().pow(3).scale(&int(3)));
    }
}
