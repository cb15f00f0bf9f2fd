//! Masters in the θ-basis and the linear relation among them.
//!
//! With `X = (M²)^(σ+β+α-n) (n/2-1) J` every master splits as
//! `X = A·(x0 + x1 F_x + x2 θF_x) + B·(y0 F_y + y1 θF_y)`.
//! A relation `Σ λ_i X_i = μ A` exists iff `Σ λ_i x_i = μ e_0` and
//! `Σ λ_i y_i = 0`, a 5×4 homogeneous system in `(λ, μ)`.

use serde::{Deserialize, Serialize};

use super::repr::{
    build_representation, collapse, gamma_a, gamma_b, SunsetIndices, J111, J112, J121,
};
use crate::error::{Error, Result};
use crate::hyper::{basis_x, basis_y, reduce_shifts};
use crate::kernel::gcd::{div_exact, gcd_poly};
use crate::kernel::linalg::nullspace;
use crate::kernel::{Poly, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XYCoords {
    /// Coordinates in `{1, F_x, θF_x}`.
    pub x: [RatFunc; 3],
    /// Coordinates in `{F_y, θF_y}`.
    pub y: [RatFunc; 2],
}

pub const MASTERS: [SunsetIndices; 3] = [J111, J121, J112];

/// `(n/2-1)`, the factor between `J` and `X` at `M² = 1`.
pub fn x_normalization() -> RatFunc {
    RatFunc::parse("n/2-1").expect("constant expression")
}

pub fn decompose_xy(idx: SunsetIndices) -> Result<XYCoords> {
    if !MASTERS.contains(&idx) {
        return Err(Error::NotAMaster(idx.to_string()));
    }
    decompose_any(idx)
}

/// Decomposition for any index triple whose terms reduce onto the basis.
pub(crate) fn decompose_any(idx: SunsetIndices) -> Result<XYCoords> {
    let combo = collapse(&build_representation(idx)?);
    let (a, b) = (gamma_a(), gamma_b());
    let mut x: [RatFunc; 3] = Default::default();
    let mut y: [RatFunc; 2] = Default::default();
    for t in &combo.terms {
        let base = &x_normalization() * &t.multiplier;
        if let Some(ra) = t.gammas.ratio_to(&a) {
            let r = reduce_shifts(&t.pfq, &basis_x())?.scaled(&(&base * &ra));
            if r.op.degree().is_some_and(|d| d > 1) {
                return Err(Error::Unreachable(format!(
                    "{} does not fit the x-basis",
                    t.pfq
                )));
            }
            x[0] = &x[0] + &r.remainder;
            x[1] = &x[1] + &r.op.coeff(0);
            x[2] = &x[2] + &r.op.coeff(1);
        } else if let Some(rb) = t.gammas.ratio_to(&b) {
            let r = reduce_shifts(&t.pfq, &basis_y())?.scaled(&(&base * &rb));
            if !r.remainder.is_zero() || r.op.degree().is_some_and(|d| d > 1) {
                return Err(Error::Unreachable(format!(
                    "{} does not fit the y-basis",
                    t.pfq
                )));
            }
            y[0] = &y[0] + &r.op.coeff(0);
            y[1] = &y[1] + &r.op.coeff(1);
        } else {
            return Err(Error::Unreachable(format!(
                "Γ-product {} is not rational over A or B",
                t.gammas
            )));
        }
    }
    Ok(XYCoords { x, y })
}

/// Generator of the relation, cleared to polynomials with `λ3 = 2`
/// whenever that leaves no denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundRelation {
    pub lambdas: [Poly; 3],
    pub mu: Poly,
}

pub fn find_relation() -> Result<FoundRelation> {
    let coords = MASTERS
        .iter()
        .map(|&m| decompose_xy(m))
        .collect::<Result<Vec<_>>>()?;
    relation_from_coords(&coords)
}

pub(crate) fn relation_from_coords(coords: &[XYCoords]) -> Result<FoundRelation> {
    // Unknowns (λ1, λ2, λ3, μ).
    let mut rows = Vec::new();
    for i in 0..3 {
        let mut row: Vec<RatFunc> = coords.iter().map(|c| c.x[i].clone()).collect();
        row.push(if i == 0 {
            -RatFunc::one()
        } else {
            RatFunc::zero()
        });
        rows.push(row);
    }
    for i in 0..2 {
        let mut row: Vec<RatFunc> = coords.iter().map(|c| c.y[i].clone()).collect();
        row.push(RatFunc::zero());
        rows.push(row);
    }
    let ns = nullspace(&rows);
    if ns.len() != 1 {
        return Err(Error::RelationCountMismatch(ns.len()));
    }
    let v = &ns[0];
    let scale = if v[2].is_zero() {
        RatFunc::one()
    } else {
        RatFunc::int(2).try_div(&v[2])?
    };
    let mut v: Vec<RatFunc> = v.iter().map(|x| x * &scale).collect();
    if let Some(den) = common_denominator(&v) {
        v = v.iter().map(|x| x * &RatFunc::from(den.clone())).collect();
    }
    let poly = |r: &RatFunc| r.as_polynomial().cloned().expect("cleared to polynomial");
    Ok(FoundRelation {
        lambdas: [poly(&v[0]), poly(&v[1]), poly(&v[2])],
        mu: poly(&v[3]),
    })
}

/// Least common multiple of the denominators, when any entry has one.
fn common_denominator(v: &[RatFunc]) -> Option<Poly> {
    let mut den = Poly::one();
    for x in v.iter().filter(|x| !x.is_polynomial()) {
        let g = gcd_poly(&den, x.den());
        den = &den * &div_exact(x.den(), &g);
    }
    (!den.is_one()).then_some(den)
}
