//! The two-term hypergeometric representation of `J(σ, β, α)`.
//!
//! ```text
//! J(σ,β,α) = (M²)^(n-σ-α-β) Γ(n/2-σ) / (Γ(σ)Γ(α)Γ(β)Γ(n/2)) ×
//!   [ Γ(n/2-β) Γ(α+β+σ-n) Γ(β+σ-n/2)
//!       4F3(α+β+σ-n, β+σ-n/2, β/2, (1+β)/2; 1+β-n/2, β, n/2; z)
//!   + (z/4)^(n/2-β) Γ(β-n/2) Γ(σ) Γ(α+σ-n/2)
//!       4F3(σ, α+σ-n/2, (n-β)/2, (1+n-β)/2; 1+n/2-β, n-β, n/2; z) ]
//! ```
//!
//! with `z = 4m²/M²`. `σ` sits on the massless line, `β` on the line of
//! mass `m`, `α` on the line of mass `M`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::gammas::GammaProduct;
use crate::error::{Error, Result};
use crate::hyper::{cancel_params, ParamExpr, PFQ};
use crate::kernel::rat::{self, Rat};
use crate::kernel::RatFunc;

/// Exponents of the sunset propagators: `sigma` on `(p-k1)²`, `beta` on
/// `k2²+m²`, `alpha` on `(k1-k2)²+M²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SunsetIndices {
    pub sigma: i64,
    pub beta: i64,
    pub alpha: i64,
}

impl SunsetIndices {
    pub const fn new(sigma: i64, beta: i64, alpha: i64) -> Self {
        SunsetIndices { sigma, beta, alpha }
    }

    /// Mass dimension of the integral in units of `M²`: `n - σ - α - β`.
    pub fn mass_dimension(&self) -> ParamExpr {
        ParamExpr::new(
            rat::int(-(self.sigma + self.beta + self.alpha)),
            rat::int(1),
        )
    }
}

impl fmt::Display for SunsetIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{},{})", self.sigma, self.beta, self.alpha)
    }
}

pub const J111: SunsetIndices = SunsetIndices::new(1, 1, 1);
pub const J121: SunsetIndices = SunsetIndices::new(1, 2, 1);
pub const J112: SunsetIndices = SunsetIndices::new(1, 1, 2);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub gammas: GammaProduct,
    pub multiplier: RatFunc,
    pub pfq: PFQ,
}

/// `Σ gammas · multiplier · pFq(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCombo {
    pub terms: Vec<ComboTerm>,
}

impl fmt::Display for HyperCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "term {}: {}", i + 1, t.gammas)?;
            if !t.multiplier.is_one() {
                write!(f, " * ({})", t.multiplier)?;
            }
            write!(f, " * {}", t.pfq)?;
        }
        Ok(())
    }
}

fn pe(c0: Rat, c1: Rat) -> ParamExpr {
    ParamExpr::new(c0, c1)
}

pub fn build_representation(idx: SunsetIndices) -> Result<HyperCombo> {
    let SunsetIndices { sigma, beta, alpha } = idx;
    if sigma < 1 || beta < 1 || alpha < 1 {
        return Err(Error::RepresentationUndefined);
    }
    let (s, b, a) = (rat::int(sigma), rat::int(beta), rat::int(alpha));
    let half = rat::rat(1, 2);
    let zero = Rat::from_integer(0.into());
    let one = rat::int(1);
    let c = |x: &Rat| pe(x.clone(), zero.clone());

    let prefactor = GammaProduct::from_factors([
        (pe(-s.clone(), half.clone()), 1),
        (c(&s), -1),
        (c(&a), -1),
        (c(&b), -1),
        (pe(zero.clone(), half.clone()), -1),
    ])
    .with_powers(ParamExpr::int(0), idx.mass_dimension());

    let g1 = GammaProduct::from_factors([
        (pe(-b.clone(), half.clone()), 1),
        (pe(&a + &b + &s, -one.clone()), 1),
        (pe(&b + &s, -half.clone()), 1),
    ]);
    let f1 = PFQ::new(
        vec![
            pe(&a + &b + &s, -one.clone()),
            pe(&b + &s, -half.clone()),
            c(&(&b / rat::int(2))),
            c(&((&one + &b) / rat::int(2))),
        ],
        vec![
            pe(&one + &b, -half.clone()),
            c(&b),
            pe(zero.clone(), half.clone()),
        ],
    )?;

    let g2 = GammaProduct::from_factors([
        (pe(b.clone(), -half.clone()), 1),
        (c(&s), 1),
        (pe(&a + &s, -half.clone()), 1),
    ])
    .with_powers(pe(-b.clone(), half.clone()), ParamExpr::int(0));
    let f2 = PFQ::new(
        vec![
            c(&s),
            pe(&a + &s, -half.clone()),
            pe(-&b / rat::int(2), half.clone()),
            pe((&one - &b) / rat::int(2), half.clone()),
        ],
        vec![
            pe(&one - &b, half.clone()),
            pe(-b.clone(), one.clone()),
            pe(zero.clone(), half.clone()),
        ],
    )?;

    Ok(HyperCombo {
        terms: vec![
            ComboTerm {
                gammas: prefactor.mul(&g1),
                multiplier: RatFunc::one(),
                pfq: f1,
            },
            ComboTerm {
                gammas: prefactor.mul(&g2),
                multiplier: RatFunc::one(),
                pfq: f2,
            },
        ],
    })
}

/// Applies [`cancel_params`] to every term.
pub fn collapse(h: &HyperCombo) -> HyperCombo {
    HyperCombo {
        terms: h
            .terms
            .iter()
            .map(|t| ComboTerm {
                gammas: t.gammas.clone(),
                multiplier: t.multiplier.clone(),
                pfq: cancel_params(&t.pfq),
            })
            .collect(),
    }
}

/// `A = Γ(n/2-1) Γ(3-n) Γ(2-n/2)`.
pub fn gamma_a() -> GammaProduct {
    GammaProduct::from_factors([
        (ParamExpr::parse("n/2-1").expect("param"), 1),
        (ParamExpr::parse("3-n").expect("param"), 1),
        (ParamExpr::parse("2-n/2").expect("param"), 1),
    ])
}

/// `B = (z/4)^(n/2-1) Γ(1-n/2) Γ(2-n/2)`.
pub fn gamma_b() -> GammaProduct {
    GammaProduct::from_factors([
        (ParamExpr::parse("1-n/2").expect("param"), 1),
        (ParamExpr::parse("2-n/2").expect("param"), 1),
    ])
    .with_powers(ParamExpr::parse("n/2-1").expect("param"), ParamExpr::int(0))
}
