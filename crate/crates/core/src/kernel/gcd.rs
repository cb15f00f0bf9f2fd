//! Polynomial GCD in Q[n][z].
//!
//! Bivariate polynomials are viewed as univariate in `z` with coefficients
//! in Q[n]. The GCD splits off contents (univariate GCDs over Q) and runs a
//! subresultant remainder sequence on the primitive parts, which keeps
//! coefficient growth polynomial without modular machinery.

use num_traits::{One, Zero};

use super::poly::{Monomial, Poly};
use super::rat::Rat;

/// Dense univariate polynomial over Q, lowest degree first, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(pub Vec<Rat>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rat::one()])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        let z = Rat::zero();
        UPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trim()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        let z = Rat::zero();
        UPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trim()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UPoly(r).trim()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UPoly(self.0.iter().map(|a| a * c).collect()).trim()
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "UPoly division by zero");
        let dd = d.0.len() - 1;
        let inv = Rat::one() / d.lc();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly(q).trim(), UPoly(r).trim())
    }

    /// Exact quotient; panics in debug builds if the division leaves a
    /// remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact UPoly division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lc()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            if b.0.len() == 1 {
                return UPoly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

/// Element of Q[n][z]: coefficients of z^0, z^1, ..., no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(pub Vec<UPoly>);

impl ZPoly {
    pub fn from_poly(p: &Poly) -> Self {
        let dz = p.degree_z() as usize;
        let dn = p.degree_n() as usize;
        if p.is_zero() {
            return ZPoly(Vec::new());
        }
        let mut c = vec![vec![Rat::zero(); dn + 1]; dz + 1];
        for (m, a) in p.terms() {
            c[m.z as usize][m.n as usize] = a.clone();
        }
        ZPoly(c.into_iter().map(|v| UPoly(v).trim()).collect()).trim()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.0.iter().enumerate().flat_map(|(zi, u)| {
            u.0.iter()
                .enumerate()
                .map(move |(ni, a)| (Monomial::new(ni as u32, zi as u32), a.clone()))
        }))
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> UPoly {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> UPoly {
        self.0
            .iter()
            .fold(UPoly::zero(), |g, c| if c.is_zero() { g } else { g.gcd(c) })
    }

    pub fn scale(&self, c: &UPoly) -> Self {
        ZPoly(self.0.iter().map(|a| a.mul(c)).collect()).trim()
    }

    pub fn div_scalar(&self, c: &UPoly) -> Self {
        ZPoly(self.0.iter().map(|a| a.exact_div(c)).collect()).trim()
    }

    fn sub(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        let z = UPoly::zero();
        ZPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z).sub(o.0.get(i).unwrap_or(&z)))
                .collect(),
        )
        .trim()
    }

    fn shift(&self, k: usize) -> Self {
        let mut v = vec![UPoly::zero(); k];
        v.extend(self.0.iter().cloned());
        ZPoly(v).trim()
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let ld = d.lc();
        let mut r = self.clone();
        if r.is_zero() || r.degree() < dd {
            return r;
        }
        let mut e = r.degree() - dd + 1;
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let lr = r.lc();
            r = r.scale(&ld).sub(&d.scale(&lr).shift(k));
            e -= 1;
        }
        r.scale(&ld.pow(e))
    }

    /// Exact division in Q[n][z].
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "ZPoly division by zero");
        let dd = d.degree();
        let ld = d.lc();
        let mut r = self.clone();
        if r.is_zero() {
            return r;
        }
        let mut q = vec![UPoly::zero(); r.degree().saturating_sub(dd) + 1];
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let c = r.lc().exact_div(&ld);
            r = r.sub(&d.scale(&c).shift(k));
            q[k] = c;
        }
        debug_assert!(r.is_zero(), "inexact ZPoly division");
        ZPoly(q).trim()
    }
}

/// Primitive-part subresultant GCD, returned with unspecified rational
/// normalization.
pub fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    let (mut pa, mut pb) = (ZPoly::from_poly(a), ZPoly::from_poly(b));
    if pa.degree() < pb.degree() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let ca = pa.content();
    let cb = pb.content();
    let d = ca.gcd(&cb);
    if pb.degree() == 0 {
        return ZPoly(vec![d]).to_poly();
    }
    let mut a = pa.div_scalar(&ca);
    let mut b = pb.div_scalar(&cb);
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let delta = a.degree() - b.degree();
        let r = a.prem(&b);
        if r.is_zero() {
            let c = b.content();
            return b.div_scalar(&c).scale(&d).to_poly();
        }
        if r.degree() == 0 {
            return ZPoly(vec![d]).to_poly();
        }
        a = b;
        b = r.div_scalar(&g.mul(&h.pow(delta)));
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1))
        };
    }
}

/// Exact quotient `a / b` in Q[n, z].
pub fn div_exact(a: &Poly, b: &Poly) -> Poly {
    if let Some(c) = b.as_constant() {
        return a.scale(&(Rat::one() / c));
    }
    ZPoly::from_poly(a)
        .exact_div(&ZPoly::from_poly(b))
        .to_poly()
}
