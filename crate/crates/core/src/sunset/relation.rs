//! The relation among the masters with mass dimensions restored.
//!
//! Coefficients are stored at `M² = 1` as rational functions of `n` and
//! `z = 4m²/M²`. Rendering multiplies each by `(M²)^(σ+β+α-3)` so that every
//! term carries the dimension of `(M²)^(n-3)`, and substitutes
//! `z = 4m²/M²`.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::decompose::{x_normalization, FoundRelation};
use super::gammas::GammaProduct;
use super::repr::{gamma_a, SunsetIndices, J111, J112, J121};
use crate::error::{Error, Result};
use crate::hyper::ParamExpr;
use crate::kernel::rat::{self, Rat};
use crate::kernel::{parse_with, Monomial, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// `(master, λ)` at `M² = 1`.
    pub lambdas: Vec<(SunsetIndices, RatFunc)>,
    /// `m = M`: a single mass scale, written `m2`.
    pub equal_mass: bool,
    pub rhs_multiplier: RatFunc,
    pub rhs: GammaProduct,
}

/// Power of `M²` attached to the coefficient of `idx`.
fn mass_power(idx: SunsetIndices) -> i64 {
    idx.sigma + idx.beta + idx.alpha - 3
}

pub fn assemble_main(rel: &FoundRelation) -> Result<Relation> {
    let lambdas: Vec<(SunsetIndices, RatFunc)> = [J111, J121, J112]
        .into_iter()
        .zip(rel.lambdas.iter().map(|p| RatFunc::from(p.clone())))
        .collect();
    // Σ λ X = μ A with X = (n/2-1) J gives Σ λ J = μ/(n/2-1) A.
    let multiplier = RatFunc::from(rel.mu.clone()).try_div(&x_normalization())?;
    let rhs = gamma_a().with_powers(ParamExpr::int(0), ParamExpr::parse("n-3").expect("param"));
    Ok(Relation {
        lambdas,
        equal_mass: false,
        rhs_multiplier: multiplier,
        rhs,
    })
}

/// Sets `m = M` (`z = 4`) and merges `J(1,2,1)` into `J(1,1,2)`, which
/// coincide once the two massive lines are interchangeable.
pub fn equal_mass_specialize(rel: &Relation) -> Result<Relation> {
    if rel.equal_mass {
        return Ok(rel.clone());
    }
    let four = rat::int(4);
    let mut merged: BTreeMap<SunsetIndices, RatFunc> = BTreeMap::new();
    let mut order = Vec::new();
    for (idx, l) in &rel.lambdas {
        let target = if *idx == J121 { J112 } else { *idx };
        if !merged.contains_key(&target) {
            order.push(target);
        }
        let e = merged.entry(target).or_insert_with(RatFunc::zero);
        *e = &*e + &l.subs_z(&four)?;
    }
    Ok(Relation {
        lambdas: order.into_iter().map(|i| (i, merged[&i].clone())).collect(),
        equal_mass: true,
        rhs_multiplier: rel.rhs_multiplier.subs_z(&four)?,
        rhs: rel.rhs.clone(),
    })
}

impl Relation {
    /// Back to `(λ, μ)` with `λ` at `M² = 1`.
    pub fn to_found(&self) -> Result<FoundRelation> {
        let get = |i| {
            self.lambdas
                .iter()
                .find(|(j, _)| *j == i)
                .and_then(|(_, l)| l.as_polynomial().cloned())
                .ok_or_else(|| {
                    Error::Invalid(format!("relation lacks a polynomial coefficient for {i}"))
                })
        };
        let mu = (&self.rhs_multiplier * &x_normalization())
            .as_polynomial()
            .cloned()
            .ok_or_else(|| Error::Invalid("non-polynomial μ".into()))?;
        Ok(FoundRelation {
            lambdas: [get(J111)?, get(J121)?, get(J112)?],
            mu,
        })
    }

    fn mass_symbol(&self) -> &'static str {
        if self.equal_mass {
            "m2"
        } else {
            "M2"
        }
    }

    /// Coefficient of `idx` with dimensions restored, e.g. `4*m2`.
    pub fn coefficient_text(&self, idx: SunsetIndices, lambda: &RatFunc) -> String {
        render_dimensionful(lambda, mass_power(idx), self.equal_mass)
    }

    /// One-line rendering of the full relation.
    pub fn to_text(&self) -> String {
        let lhs: Vec<String> = self
            .lambdas
            .iter()
            .map(|(i, l)| {
                let c = self.coefficient_text(*i, l);
                let c = if c.contains(['+', '-']) {
                    format!("({c})")
                } else {
                    c
                };
                if self.equal_mass && *i == J112 {
                    format!("{c}*J(1,1,2)")
                } else {
                    format!("{c}*{i}")
                }
            })
            .collect();
        let (g, c) = self.rhs.fold_constants();
        let mult = &self.rhs_multiplier.scale(&c);
        let gam: Vec<String> = g
            .factors
            .iter()
            .map(|(a, e)| {
                if *e == 1 {
                    format!("Γ({a})")
                } else {
                    format!("Γ({a})^({e})")
                }
            })
            .collect();
        format!(
            "{} = {}*({})^({})*{}",
            lhs.join(" + "),
            mult,
            self.mass_symbol(),
            self.rhs.power_m2,
            gam.join("*")
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: BTreeMap<String, String> = self
            .lambdas
            .iter()
            .map(|(i, l)| (i.to_string(), self.coefficient_text(*i, l)))
            .collect();
        serde_json::to_value(RelationJson {
            coeffs,
            rhs: RhsJson {
                multiplier: self.rhs_multiplier.to_string(),
                gammas: self
                    .rhs
                    .factors
                    .iter()
                    .map(|(a, e)| GammaJson {
                        arg: a.to_string(),
                        power: *e,
                    })
                    .collect(),
                m2_exponent: self.rhs.power_m2.to_string(),
            },
            equal_mass: self.equal_mass,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: RelationJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let equal_mass = raw.equal_mass;
        let mut lambdas = Vec::new();
        for (key, text) in &raw.coeffs {
            let idx = parse_j_key(key)?;
            let symbols = |s: &str| match s {
                "n" => Some(RatFunc::n()),
                "m2" if equal_mass => Some(RatFunc::one()),
                "m2" => Some(&RatFunc::z() * &RatFunc::constant(rat::rat(1, 4))),
                "M2" => Some(RatFunc::one()),
                _ => None,
            };
            lambdas.push((idx, parse_with(text, &symbols)?));
        }
        lambdas.sort_by_key(|(i, _)| [J111, J121, J112].iter().position(|m| m == i));
        let factors = raw
            .rhs
            .gammas
            .iter()
            .map(|g| Ok((ParamExpr::parse(&g.arg)?, g.power)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation {
            lambdas,
            equal_mass,
            rhs_multiplier: RatFunc::parse(&raw.rhs.multiplier)?,
            rhs: GammaProduct::from_factors(factors)
                .with_powers(ParamExpr::int(0), ParamExpr::parse(&raw.rhs.m2_exponent)?),
        })
    }
}

fn parse_j_key(key: &str) -> Result<SunsetIndices> {
    let inner = key
        .strip_prefix("J(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("bad master key {key:?}")))?;
    let v: Vec<i64> = inner
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Invalid(format!("bad master key {key:?}")))?;
    match v.as_slice() {
        [s, b, a] => Ok(SunsetIndices::new(*s, *b, *a)),
        _ => Err(Error::Invalid(format!("bad master key {key:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    coeffs: BTreeMap<String, String>,
    rhs: RhsJson,
    #[serde(default)]
    equal_mass: bool,
}

#[derive(Serialize, Deserialize)]
struct RhsJson {
    multiplier: String,
    gammas: Vec<GammaJson>,
    #[serde(rename = "M2_exponent")]
    m2_exponent: String,
}

#[derive(Serialize, Deserialize)]
struct GammaJson {
    arg: String,
    power: i32,
}

/// `λ(n, z) (M²)^k` with `z = 4 m²/M²`, written in `n`, `m2`, `M2`.
fn render_dimensionful(lambda: &RatFunc, k: i64, equal_mass: bool) -> String {
    let Some(p) = lambda.as_polynomial() else {
        let mass = if equal_mass { "m2" } else { "M2" };
        return format!("({lambda})*{mass}^{k}");
    };
    // Terms keyed by (n power, m2 power, M2 power).
    let mut terms: Vec<((u32, i64, i64), Rat)> = Vec::new();
    for (m, c) in p.terms() {
        let Monomial { n, z } = *m;
        let c = c * num_traits::pow(rat::int(4), z as usize);
        let key = if equal_mass {
            (n, k, 0)
        } else {
            (n, z as i64, k - z as i64)
        };
        terms.push((key, c));
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = String::new();
    for (i, ((np, mp, bp), c)) in terms.iter().enumerate() {
        let mut factors = Vec::new();
        for (sym, e) in [("n", *np as i64), ("m2", *mp), ("M2", *bp)] {
            match e {
                0 => {}
                1 => factors.push(sym.to_string()),
                _ => factors.push(format!("{sym}^{e}")),
            }
        }
        let mono = factors.join("*");
        let a = c.abs();
        let mut body = match (mono.is_empty(), a.numer().is_one()) {
            (true, _) => a.numer().to_string(),
            (false, true) => mono,
            (false, false) => format!("{}*{mono}", a.numer()),
        };
        if !a.denom().is_one() {
            body = format!("{body}/{}", a.denom());
        }
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sunset::decompose::find_relation;

    #[test]
    fn main_relation() {
        let rel = assemble_main(&find_relation().unwrap()).unwrap();
        let texts: Vec<String> = rel
            .lambdas
            .iter()
            .map(|(i, l)| rel.coefficient_text(*i, l))
            .collect();
        assert_eq!(texts, ["3*n-8", "4*m2", "2*M2"]);
        assert_eq!(rel.rhs_multiplier, RatFunc::int(2));
        assert_eq!(rel.rhs.power_m2.to_string(), "n-3");
        assert_eq!(rel.to_found().unwrap(), find_relation().unwrap());
        let back = Relation::from_json(&rel.to_json()).unwrap();
        assert_eq!(back, rel);
    }

    #[test]
    fn equal_mass() {
        let rel = assemble_main(&find_relation().unwrap()).unwrap();
        let eq = equal_mass_specialize(&rel).unwrap();
        let texts: Vec<String> = eq
            .lambdas
            .iter()
            .map(|(i, l)| eq.coefficient_text(*i, l))
            .collect();
        assert_eq!(texts, ["3*n-8", "6*m2"]);
        assert_eq!(eq.rhs.power_m2.to_string(), "n-3");
        assert_eq!(Relation::from_json(&eq.to_json()).unwrap(), eq);
        assert_eq!(equal_mass_specialize(&eq).unwrap(), eq);
    }
}
