//! Polynomials in `θ = z d/dz` with rational-function coefficients, written
//! with coefficients on the left: `c_0 + c_1 θ + ... + c_d θ^d`.

use std::fmt;

use super::param::ParamExpr;
use super::pfq::PFQ;
use super::series::series_theta;
use crate::error::Result;
use crate::kernel::rat::Rat;
use crate::kernel::{RatFunc, RealScalar};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaPoly {
    coeffs: Vec<RatFunc>,
}

impl ThetaPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ThetaPoly { coeffs }
    }

    pub fn zero() -> Self {
        ThetaPoly::default()
    }

    pub fn one() -> Self {
        ThetaPoly::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        ThetaPoly::new(vec![c])
    }

    pub fn theta() -> Self {
        ThetaPoly::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// `θ + a` for a parameter `a`.
    pub fn theta_plus(a: &ParamExpr) -> Self {
        ThetaPoly::new(vec![a.to_ratfunc(), RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        ThetaPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        ThetaPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    /// `c · self`.
    pub fn scale(&self, c: &RatFunc) -> Self {
        ThetaPoly::new(self.coeffs.iter().map(|x| c * x).collect())
    }

    /// `θ ∘ self`, using `θ ∘ (c θ^k) = θ(c) θ^k + c θ^(k+1)`.
    pub fn theta_left(&self) -> Self {
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = &out[k] + &c.theta();
            out[k + 1] = &out[k + 1] + c;
        }
        ThetaPoly::new(out)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut acc = ThetaPoly::zero();
        let mut power = o.clone(); // θ^i ∘ o
        for c in &self.coeffs {
            acc = acc.add(&power.scale(c));
            power = power.theta_left();
        }
        acc
    }

    /// The operator applied to a rational function.
    pub fn apply_rational(&self, r: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut d = r.clone();
        for c in &self.coeffs {
            acc = &acc + &(c * &d);
            d = d.theta();
        }
        acc
    }

    /// `Σ c_i(z0) θ^i F(z0)` with `θ^i F` summed termwise.
    pub fn eval_on<T: RealScalar>(&self, f: &PFQ, z0: &T, n0: &Rat, prec: u32) -> Result<T> {
        let n = z0.embed(n0);
        let mut acc = z0.zero_like();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc + c.eval(&n, z0)? * series_theta(f, i as u32, z0, n0, prec)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let th = match k {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{k}"),
            };
            let ct = c.to_string();
            let simple =
                c.as_constant().is_some() || (c.num().num_terms() == 1 && c.is_polynomial());
            parts.push(match (k, c.is_one(), simple) {
                (0, _, _) => ct,
                (_, true, _) => th,
                (_, false, true) => format!("{ct}*{th}"),
                (_, false, false) => format!("({ct})*{th}"),
            });
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                out.push('+');
            }
            out.push_str(p);
        }
        write!(f, "{out}")
    }
}

/// The differential equation `L F = c` satisfied by `f`.
///
/// Without unit upper parameters this is the homogeneous equation
/// `θ ∏(θ+b_j-1) F - z ∏(θ+a_i) F = 0` of order `q+1`. When an upper
/// parameter equals 1 the factor `(1)_k / k!` cancels and the series obeys
/// the lower-order inhomogeneous equation
/// `∏(θ+b_j-1) F - z ∏_{a_i ≠ that 1}(θ+a_i) F = ∏(b_j-1)`.
/// In both cases the leading coefficient is `1 - z`.
#[derive(Clone, Debug)]
pub struct Ode {
    pub op: ThetaPoly,
    pub rhs: RatFunc,
}

impl Ode {
    pub fn homogeneous(f: &PFQ) -> Self {
        let mut left = ThetaPoly::theta();
        for b in f.lower() {
            left = left.compose(&ThetaPoly::theta_plus(&b.shifted(-1)));
        }
        let mut right = ThetaPoly::one();
        for a in f.upper() {
            right = right.compose(&ThetaPoly::theta_plus(a));
        }
        Ode {
            op: left.sub(&right.scale(&RatFunc::z())),
            rhs: RatFunc::zero(),
        }
    }

    /// The reduced equation when `f` has a unit upper parameter.
    pub fn unit_reduced(f: &PFQ) -> Option<Self> {
        let unit = f.upper().iter().position(|a| a.is_one())?;
        let mut left = ThetaPoly::one();
        let mut rhs = RatFunc::one();
        for b in f.lower() {
            let bm1 = b.shifted(-1);
            left = left.compose(&ThetaPoly::theta_plus(&bm1));
            rhs = &rhs * &bm1.to_ratfunc();
        }
        let mut right = ThetaPoly::one();
        for (i, a) in f.upper().iter().enumerate() {
            if i != unit {
                right = right.compose(&ThetaPoly::theta_plus(a));
            }
        }
        Some(Ode {
            op: left.sub(&right.scale(&RatFunc::z())),
            rhs,
        })
    }

    /// The lowest-order equation available: reduced if there is a unit
    /// upper parameter, homogeneous otherwise.
    pub fn for_basis(f: &PFQ) -> Self {
        Ode::unit_reduced(f).unwrap_or_else(|| Ode::homogeneous(f))
    }

    pub fn order(&self) -> usize {
        self.op.degree().unwrap_or(0)
    }

    /// Rewrites `op·F` as `op'·F + r` with `deg op' < order`.
    pub fn reduce(&self, op: &ThetaPoly) -> (ThetaPoly, RatFunc) {
        let r = self.order();
        let lead = self.op.coeff(r);
        let mut op = op.clone();
        let mut rem = RatFunc::zero();
        while let Some(d) = op.degree().filter(|&d| d >= r) {
            // θ^(d-r) ∘ L has leading term lead·θ^d and maps F to θ^(d-r) c.
            let mut m = self.op.clone();
            let mut c = self.rhs.clone();
            for _ in r..d {
                m = m.theta_left();
                c = c.theta();
            }
            let factor = op
                .coeff(d)
                .try_div(&lead)
                .expect("leading coefficient 1-z is nonzero");
            op = op.sub(&m.scale(&factor));
            rem = &rem + &(&factor * &c);
            debug_assert!(op.degree().map_or(true, |nd| nd < d));
        }
        (op, rem)
    }
}

/// Lowers `op` below the order of the homogeneous equation of `f`.
pub fn theta_reduce(f: &PFQ, op: &ThetaPoly) -> ThetaPoly {
    let (reduced, rem) = Ode::homogeneous(f).reduce(op);
    debug_assert!(rem.is_zero());
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn gauss_second_order() {
        // a = 1/2, b = 3-n, c = n/2
        let f = PFQ::from_strs(&["1/2", "3-n"], &["n/2"]).unwrap();
        let th2 = ThetaPoly::theta().compose(&ThetaPoly::theta());
        let red = theta_reduce(&f, &th2);
        let (a, b, c) = (rf("1/2"), rf("3-n"), rf("n/2"));
        let one = RatFunc::one();
        let z = RatFunc::z();
        let den = &one - &z;
        let c1 = (&(&(&a + &b) * &z) - &c) + one.clone();
        let c0 = &(&a * &b) * &z;
        assert_eq!(red.coeff(1), c1.try_div(&den).unwrap());
        assert_eq!(red.coeff(0), c0.try_div(&den).unwrap());
        assert_eq!(theta_reduce(&f, &ThetaPoly::theta()), ThetaPoly::theta());
    }

    #[test]
    fn composition_and_display() {
        let a = ThetaPoly::theta_plus(&ParamExpr::parse("3-n").unwrap());
        assert_eq!(a.to_string(), "θ-n+3");
        let sq = a.compose(&a);
        assert_eq!(sq.coeff(2), RatFunc::one());
        let zt = ThetaPoly::theta().scale(&RatFunc::z());
        // θ ∘ (z θ) = z θ + z θ^2
        let t = ThetaPoly::theta().compose(&zt);
        assert_eq!(t.coeff(1), RatFunc::z());
        assert_eq!(t.coeff(2), RatFunc::z());
        assert_eq!(a.apply_rational(&rf("z")), rf("z*(4-n)"));
    }
}
