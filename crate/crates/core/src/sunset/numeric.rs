//! Direct numeric evaluation of `J(σ, β, α)` from its series representation,
//! and the numeric check of the relation among the masters.

use num_traits::{Signed, Zero};

use super::decompose::find_relation;
use super::gammas::z4_power;
use super::relation::{assemble_main, Relation};
use super::repr::{build_representation, gamma_a, SunsetIndices};
use crate::error::{Error, Result};
use crate::hyper::series_sum;
use crate::kernel::rat::{self, Rat};
use crate::kernel::{BigFloat, Precision};

/// Extra digits carried internally on top of the requested precision.
const GUARD: u32 = 10;

/// `n = 4 - 2ε`.
pub fn dimension(eps: &Rat) -> Rat {
    rat::int(4) - eps * rat::int(2)
}

fn check_domain(z0: &Rat) -> Result<()> {
    if z0.is_negative() || *z0 >= rat::int(1) {
        return Err(Error::OutsideConvergence);
    }
    Ok(())
}

/// `J(idx)` at `M² = 1`, `n = 4 - 2ε`, `z = z0`.
#[allow(non_snake_case)]
pub fn eval_J(idx: SunsetIndices, eps: &Rat, z0: &Rat, prec: u32) -> Result<BigFloat> {
    eval_J_scaled(idx, eps, z0, 0, prec)
}

/// `z0^v J(idx)`. The power is folded into each term's `(z/4)` power before
/// evaluation, so the product stays finite at `z0 = 0` whenever the
/// combined exponent is nonnegative.
#[allow(non_snake_case)]
pub fn eval_J_scaled(
    idx: SunsetIndices,
    eps: &Rat,
    z0: &Rat,
    v: u32,
    prec: u32,
) -> Result<BigFloat> {
    check_domain(z0)?;
    let n0 = dimension(eps);
    let digits = prec + GUARD;
    let p = Precision::from_digits(digits);
    let z = BigFloat::from_rat(z0, p);
    let four_v = BigFloat::from_i64(4, p).powi(v as u64);
    let mut total = BigFloat::zero(p);
    for t in &build_representation(idx)?.terms {
        let g = t.gammas.eval_gammas(&n0, digits)?;
        let e = t.gammas.power_z4.eval(&n0) + rat::int(v as i64);
        let zp = z4_power(&e, z0, digits)?;
        if zp.is_zero() {
            continue;
        }
        let c = t.multiplier.eval(&n0, z0)?;
        let s = series_sum(&t.pfq, &z, &n0, digits)?;
        total = total + g * zp * four_v.clone() * BigFloat::from_rat(&c, p) * s;
    }
    Ok(total)
}

/// `|LHS - RHS| / |RHS|` for the relation among the masters.
pub fn verify_main_numeric(eps: &Rat, z0: &Rat, prec: u32) -> Result<BigFloat> {
    let rel = assemble_main(&find_relation()?)?;
    relation_residual(&rel, eps, z0, prec)
}

/// Residual of any non-specialized relation with polynomial coefficients.
/// Each `λ_i J_i` is evaluated as `Σ_k c_k z^k J_i`, so coefficients that
/// vanish at `z = 0` suppress the small-`z` growth of `J_i`.
pub fn relation_residual(rel: &Relation, eps: &Rat, z0: &Rat, prec: u32) -> Result<BigFloat> {
    if rel.equal_mass {
        return Err(Error::OutsideConvergence);
    }
    check_domain(z0)?;
    let n0 = dimension(eps);
    let digits = prec + GUARD;
    let p = Precision::from_digits(digits);
    let mut lhs = BigFloat::zero(p);
    for (idx, lambda) in &rel.lambdas {
        let poly = lambda
            .subs_n(&n0)?
            .as_polynomial()
            .cloned()
            .ok_or_else(|| {
                Error::Invalid(format!("coefficient of {idx} is not polynomial in z"))
            })?;
        for (m, c) in poly.terms() {
            if c.is_zero() {
                continue;
            }
            let j = eval_J_scaled(*idx, eps, z0, m.z as u32, prec)?;
            lhs = lhs + BigFloat::from_rat(c, p) * j;
        }
    }
    let mult = rel.rhs_multiplier.eval(&n0, z0)?;
    let rhs = rel.rhs.eval_gammas(&n0, digits)? * BigFloat::from_rat(&mult, p);
    if rhs.is_zero() {
        return Err(Error::Invalid("relation right-hand side vanishes".into()));
    }
    Ok(((lhs - rhs.clone()) / rhs).abs())
}

/// `A = Γ(n/2-1) Γ(3-n) Γ(2-n/2)` at `n = 4 - 2ε`.
pub fn eval_gamma_a(eps: &Rat, prec: u32) -> Result<BigFloat> {
    gamma_a().eval_gammas(&dimension(eps), prec + GUARD)
}

/// `10^-k` at the given digit count, for residual thresholds.
pub fn tolerance(k: i64, digits: u32) -> BigFloat {
    let p = Precision::from_digits(digits);
    let ten = BigFloat::from_i64(10, p);
    let t = ten.powi(k.unsigned_abs());
    if k >= 0 {
        BigFloat::one(p) / t
    } else {
        t
    }
}
