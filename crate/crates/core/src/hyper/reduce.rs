//! Contiguous operators and differential reduction onto a basis function.

use std::collections::BTreeMap;
use std::fmt;

use super::param::ParamExpr;
use super::pfq::{cancel_params, PFQ};
use super::theta::{Ode, ThetaPoly};
use crate::error::{Error, Result};
use crate::kernel::rat::Rat;
use crate::kernel::{RatFunc, RealScalar};

/// `op · basis + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedForm {
    pub basis: PFQ,
    pub op: ThetaPoly,
    pub remainder: RatFunc,
    /// Number of contiguous operators composed while reducing.
    pub compositions: usize,
}

impl ReducedForm {
    pub fn identity(basis: PFQ) -> Self {
        ReducedForm {
            basis,
            op: ThetaPoly::one(),
            remainder: RatFunc::zero(),
            compositions: 0,
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: &RatFunc) -> Self {
        ReducedForm {
            basis: self.basis.clone(),
            op: self.op.scale(c),
            remainder: c * &self.remainder,
            compositions: self.compositions,
        }
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.op, self.basis)?;
        if !self.remainder.is_zero() {
            write!(f, " + {}", self.remainder)?;
        }
        Ok(())
    }
}

/// `F(a+1, ...) = ((θ+a)/a) F(a, ...)` for the upper parameter `which`.
pub fn raise_upper(f: &PFQ, which: usize) -> Result<(ThetaPoly, PFQ)> {
    let a = f
        .upper()
        .get(which)
        .ok_or_else(|| Error::Invalid(format!("no upper parameter {which}")))?;
    Ok((raise_op(a)?, f.clone()))
}

/// `F(..., b-1) = ((θ+b-1)/(b-1)) F(..., b)` for the lower parameter `which`.
pub fn lower_lower(f: &PFQ, which: usize) -> Result<(ThetaPoly, PFQ)> {
    let b = f
        .lower()
        .get(which)
        .ok_or_else(|| Error::Invalid(format!("no lower parameter {which}")))?;
    Ok((lower_op(b)?, f.clone()))
}

fn raise_op(a: &ParamExpr) -> Result<ThetaPoly> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let inv = a.to_ratfunc().inv()?;
    Ok(ThetaPoly::theta_plus(a).scale(&inv))
}

fn lower_op(b: &ParamExpr) -> Result<ThetaPoly> {
    let bm1 = b.shifted(-1);
    if bm1.is_zero() {
        return Err(Error::OperatorSingular);
    }
    let inv = bm1.to_ratfunc().inv()?;
    Ok(ThetaPoly::theta_plus(&bm1).scale(&inv))
}

/// Number of independent basis functions: the order of the equation after
/// cancellation, less one for each unit upper parameter.
pub fn basis_count(f: &PFQ) -> usize {
    let g = cancel_params(f);
    g.ode_order() - g.unit_uppers()
}

/// Pairs parameters of `from` with those of `to` inside each integer-shift
/// class, returning `(to_param, from - to)`.
fn match_class(from: &[ParamExpr], to: &[ParamExpr]) -> Result<Vec<(ParamExpr, i64)>> {
    let mut classes: BTreeMap<(Rat, Rat), (Vec<&ParamExpr>, Vec<&ParamExpr>)> = BTreeMap::new();
    for p in from {
        classes.entry(p.shift_class()).or_default().0.push(p);
    }
    for p in to {
        classes.entry(p.shift_class()).or_default().1.push(p);
    }
    let mut out = Vec::new();
    for (_, (mut fs, mut ts)) in classes {
        if fs.len() != ts.len() {
            return Err(Error::Unreachable(
                "parameters differ by non-integers".into(),
            ));
        }
        fs.sort();
        ts.sort();
        for (f, t) in fs.into_iter().zip(ts) {
            let k = f.int_offset(t).expect("same class");
            out.push((t.clone(), k));
        }
    }
    Ok(out)
}

/// Removes a unit upper parameter paired with a lower 2:
/// `F(1, A; 2, B) = ∏(B-1) / (∏(A-1) z) · [F(A-1; B-1) - 1]`.
fn unit_descent(f: &PFQ) -> Option<Result<(PFQ, RatFunc)>> {
    let i = f.upper().iter().position(|a| a.is_one())?;
    let j = f.lower().iter().position(|b| *b == ParamExpr::int(2))?;
    let mut up: Vec<ParamExpr> = f.upper().to_vec();
    let mut lo: Vec<ParamExpr> = f.lower().to_vec();
    up.remove(i);
    lo.remove(j);
    let mut c = RatFunc::one();
    for a in &up {
        let am1 = a.shifted(-1);
        if am1.is_zero() {
            return Some(Err(Error::OperatorSingular));
        }
        c = c.try_div(&am1.to_ratfunc()).expect("nonzero");
    }
    for b in &lo {
        c = &c * &b.shifted(-1).to_ratfunc();
    }
    let c = c.try_div(&RatFunc::z()).expect("nonzero");
    let inner = PFQ::new(
        up.iter().map(|a| a.shifted(-1)).collect(),
        lo.iter().map(|b| b.shifted(-1)).collect(),
    );
    Some(inner.map(|g| (g, c)))
}

/// Expresses `f` as `op · basis + remainder` where `basis` is
/// `cancel_params(target)`.
///
/// Uppers of the basis are raised and lowers lowered one unit at a time; after
/// every step the operator is reduced modulo the basis equation, so the
/// final degree is below its order. A unit upper in `f` sitting against a
/// lower 2 that the basis lacks is removed first by [`unit_descent`], which
/// contributes to the rational remainder.
pub fn reduce_shifts(f: &PFQ, target: &PFQ) -> Result<ReducedForm> {
    let basis = cancel_params(target);
    let mut f = cancel_params(f);
    let mut outer: Option<RatFunc> = None;
    if f.p() == basis.p() + 1 {
        if let Some(d) = unit_descent(&f) {
            let (g, c) = d?;
            f = cancel_params(&g);
            outer = Some(c);
        }
    }
    if f.p() != basis.p() {
        return Err(Error::Unreachable(format!(
            "{f} has a different order than {basis}"
        )));
    }
    let uppers = match_class(f.upper(), basis.upper())?;
    let lowers = match_class(f.lower(), basis.lower())?;
    if uppers.iter().any(|(_, k)| *k < 0) || lowers.iter().any(|(_, k)| *k > 0) {
        return Err(Error::UnsupportedShift);
    }
    let ode = Ode::for_basis(&basis);
    let mut op = ThetaPoly::one();
    let mut rem = RatFunc::zero();
    let mut compositions = 0;
    let mut step = |s: ThetaPoly, op: &mut ThetaPoly, rem: &mut RatFunc| {
        *rem = s.apply_rational(rem);
        let (o, r) = ode.reduce(&s.compose(op));
        *op = o;
        *rem = &*rem + &r;
        compositions += 1;
    };
    for (a, k) in &uppers {
        for j in 0..*k {
            step(raise_op(&a.shifted(j))?, &mut op, &mut rem);
        }
    }
    for (b, k) in &lowers {
        for j in 0..-*k {
            step(lower_op(&b.shifted(-j))?, &mut op, &mut rem);
        }
    }
    if compositions == 0 {
        // Reduce anyway: a basis of count 0 is entirely rational.
        let (o, r) = ode.reduce(&op);
        op = o;
        rem = &rem + &r;
    }
    if let Some(c) = outer {
        op = op.scale(&c);
        rem = &c * &(&rem - &RatFunc::one());
    }
    Ok(ReducedForm {
        basis,
        op,
        remainder: rem,
        compositions,
    })
}

/// `op · basis + remainder` at `z0`.
pub fn eval_reduced<T: RealScalar>(r: &ReducedForm, z0: &T, n0: &Rat, prec: u32) -> Result<T> {
    let n = z0.embed(n0);
    let v = r.op.eval_on(&r.basis, z0, n0, prec)?;
    Ok(v + r.remainder.eval(&n, z0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::series::{series_sum, terminating_poly};
    use crate::kernel::parse_ratfunc;
    use crate::kernel::rat::{int, rat};

    fn pfq(s: &str) -> PFQ {
        PFQ::parse(s).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn contiguous_operators_at_n4() {
        // F = 2F1(1/2, 3-n; n/2) is 1 - z/4 at n = 4.
        let f = pfq("2F1[1/2,3-n; n/2]");
        let idx = f
            .upper()
            .iter()
            .position(|a| a.to_string() == "3-n")
            .unwrap();
        let (op, _) = raise_upper(&f, idx).unwrap();
        assert_eq!(op.coeff(1), rf("1/(3-n)"));
        let base = RatFunc::from(terminating_poly(&f, &int(4)).unwrap().unwrap());
        let at4 = |t: &ThetaPoly| {
            ThetaPoly::new(
                t.coeffs()
                    .iter()
                    .map(|c| c.subs_n(&int(4)).unwrap())
                    .collect(),
            )
        };
        assert_eq!(at4(&op).apply_rational(&base), RatFunc::one());
        let (lop, _) = lower_lower(&f, 0).unwrap();
        assert_eq!(at4(&lop).apply_rational(&base), rf("1-z/2"));
        let zero = pfq("2F1[0,1/2; 2]");
        assert_eq!(raise_upper(&zero, 0).unwrap_err(), Error::ZeroParameter);
        let one = pfq("2F1[1/2,1/3; 1]");
        assert_eq!(lower_lower(&one, 0).unwrap_err(), Error::OperatorSingular);
    }

    #[test]
    fn counts() {
        assert_eq!(basis_count(&pfq("4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]")), 2);
        assert_eq!(
            basis_count(&pfq("4F3[1,2-n/2,(n-1)/2,n/2; n/2,n-1,n/2]")),
            2
        );
        assert_eq!(basis_count(&pfq("1F0[1/2]")), 1);
    }

    #[test]
    fn masters_reduce_onto_the_basis() {
        let fx = pfq("2F1[1/2,3-n; n/2]");
        let fy = pfq("3F2[1,(n-1)/2,2-n/2; n/2,n-1]");
        let id = reduce_shifts(&fx, &fx).unwrap();
        assert_eq!(
            (id.op.clone(), id.remainder.clone()),
            (ThetaPoly::one(), RatFunc::zero())
        );
        let x3 = reduce_shifts(&pfq("2F1[1/2,4-n; n/2]"), &fx)
            .unwrap()
            .scaled(&rf("3-n"));
        assert_eq!(x3.op, ThetaPoly::new(vec![rf("3-n"), RatFunc::one()]));
        assert!(x3.remainder.is_zero());
        let y2 = reduce_shifts(&pfq("3F2[1,(n-1)/2,2-n/2; n/2,n-2]"), &fy)
            .unwrap()
            .scaled(&rf("-2*(n-2)/z"));
        assert_eq!(y2.op, ThetaPoly::new(vec![rf("-2*(n-2)/z"), rf("-2/z")]));
        assert_eq!(y2.compositions, 1);

        let r = ReducedForm::identity(fx.clone());
        assert_eq!(r.scaled(&rf("3-n")).remainder, RatFunc::zero());
        // Terminating checks at n = 4, z = 1/2.
        let x3v = eval_reduced(&x3, &rat(1, 2), &int(4), 20).unwrap();
        assert_eq!(x3v, int(-1));
        let y2v = eval_reduced(&y2, &rat(1, 2), &int(4), 20).unwrap();
        assert_eq!(y2v, int(-8));
    }

    #[test]
    fn unit_descent_gives_rational_remainder() {
        let f = pfq("3F2[1,3/2,4-n; 2,n/2]");
        let fx = pfq("2F1[1/2,3-n; n/2]");
        let r = reduce_shifts(&f, &fx).unwrap();
        assert!(!r.remainder.is_zero());
        assert!(r.op.degree().unwrap() < 2);
        let direct = series_sum(&f, &0.3f64, &rat(37, 10), 15).unwrap();
        let via = eval_reduced(&r, &0.3f64, &rat(37, 10), 15).unwrap();
        assert!(((via - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn wrong_directions_are_rejected() {
        let fx = pfq("2F1[1/2,3-n; n/2]");
        assert_eq!(
            reduce_shifts(&pfq("2F1[1/2,2-n; n/2]"), &fx).unwrap_err(),
            Error::UnsupportedShift
        );
        assert_eq!(
            reduce_shifts(&pfq("2F1[1/2,3-n; n/2+1]"), &fx).unwrap_err(),
            Error::UnsupportedShift
        );
        assert!(matches!(
            reduce_shifts(&pfq("2F1[1/3,3-n; n/2]"), &fx),
            Err(Error::Unreachable(_))
        ));
    }
}
