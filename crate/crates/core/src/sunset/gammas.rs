//! Products of Γ functions with parameters affine in `n`, times powers of
//! `z/4` and `M²`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyper::ParamExpr;
use crate::kernel::rat::{self, Rat};
use crate::kernel::{gamma_rat, BigFloat, Precision, RatFunc};

/// `∏ Γ(arg)^exp · (z/4)^power_z4 · (M²)^power_m2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaProduct {
    pub factors: Vec<(ParamExpr, i32)>,
    pub power_z4: ParamExpr,
    pub power_m2: ParamExpr,
}

impl Default for GammaProduct {
    fn default() -> Self {
        GammaProduct::one()
    }
}

impl GammaProduct {
    pub fn one() -> Self {
        GammaProduct {
            factors: Vec::new(),
            power_z4: ParamExpr::int(0),
            power_m2: ParamExpr::int(0),
        }
    }

    /// Builds from `(argument, exponent)` pairs, merging equal arguments.
    pub fn from_factors(factors: impl IntoIterator<Item = (ParamExpr, i32)>) -> Self {
        GammaProduct::one().times_factors(factors)
    }

    pub fn with_powers(mut self, z4: ParamExpr, m2: ParamExpr) -> Self {
        self.power_z4 = z4;
        self.power_m2 = m2;
        self
    }

    fn times_factors(&self, extra: impl IntoIterator<Item = (ParamExpr, i32)>) -> Self {
        let mut m: BTreeMap<ParamExpr, i32> = BTreeMap::new();
        for (a, e) in self.factors.iter().cloned().chain(extra) {
            *m.entry(a).or_insert(0) += e;
        }
        GammaProduct {
            factors: m.into_iter().filter(|(_, e)| *e != 0).collect(),
            power_z4: self.power_z4.clone(),
            power_m2: self.power_m2.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut g = self.times_factors(o.factors.iter().cloned());
        g.power_z4 = self.power_z4.add(&o.power_z4);
        g.power_m2 = self.power_m2.add(&o.power_m2);
        g
    }

    pub fn inv(&self) -> Self {
        GammaProduct {
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
            power_z4: self.power_z4.scale(&rat::int(-1)),
            power_m2: self.power_m2.scale(&rat::int(-1)),
        }
    }

    /// Drops Γ of positive integer constants, returning the rational factor
    /// they contributed.
    pub fn fold_constants(&self) -> (GammaProduct, Rat) {
        let mut c = Rat::one();
        let mut kept = Vec::new();
        for (a, e) in &self.factors {
            match a
                .as_constant()
                .filter(|v| rat::is_integer(v) && v.is_positive())
            {
                Some(v) => {
                    let k = v.to_integer().to_u64().expect("small Γ argument");
                    let f: Rat = (1..k).fold(Rat::one(), |acc, j| acc * rat::int(j as i64));
                    c *= if *e >= 0 {
                        f.pow(*e)
                    } else {
                        f.pow(*e).recip()
                    };
                }
                None => kept.push((a.clone(), *e)),
            }
        }
        (
            GammaProduct {
                factors: kept,
                power_z4: self.power_z4.clone(),
                power_m2: self.power_m2.clone(),
            },
            c,
        )
    }

    /// `self / other` as a rational function of `n` and `z`, when every Γ
    /// class cancels up to Pochhammer symbols and the `z/4` powers differ by
    /// an integer. `M²` powers are ignored (callers work at `M² = 1`).
    pub fn ratio_to(&self, other: &Self) -> Option<RatFunc> {
        let (q, c) = self.mul(&other.inv()).fold_constants();
        let mut classes: BTreeMap<(Rat, Rat), Vec<(ParamExpr, i32)>> = BTreeMap::new();
        for (a, e) in &q.factors {
            classes
                .entry(a.shift_class())
                .or_default()
                .push((a.clone(), *e));
        }
        let mut out = RatFunc::constant(c);
        for (_, members) in classes {
            let base = members
                .iter()
                .map(|(a, _)| a.clone())
                .min()
                .expect("nonempty class");
            if members.iter().map(|(_, e)| e).sum::<i32>() != 0 {
                return None;
            }
            for (a, e) in members {
                // Γ(base + k) = Γ(base) (base)_k
                let k = a.int_offset(&base).expect("same class");
                let mut p = RatFunc::one();
                for j in 0..k {
                    p = &p * &base.shifted(j).to_ratfunc();
                }
                out = &out * &p.pow(e).ok()?;
            }
        }
        let dz = q.power_z4.as_constant().filter(|d| rat::is_integer(d))?;
        let z4 = &RatFunc::z() * &RatFunc::constant(rat::rat(1, 4));
        Some(&out * &z4.pow(dz.to_integer().to_i32()?).ok()?)
    }

    /// The Γ factors alone at `n = n0`.
    pub fn eval_gammas(&self, n0: &Rat, digits: u32) -> Result<BigFloat> {
        let prec = Precision::from_digits(digits);
        let mut acc = BigFloat::one(prec);
        for (a, e) in &self.factors {
            let x = a.eval(n0);
            let g = gamma_rat(&x, digits)
                .map_err(|_| Error::GammaPole(format!("Γ({a}) at n = {}", rat::fmt_rat(n0))))?;
            let g = g.powi(e.unsigned_abs() as u64);
            acc = if *e > 0 { acc * g } else { acc / g };
        }
        Ok(acc)
    }

    /// The full product at `n = n0`, `z = z0`, `M² = 1`.
    pub fn eval(&self, n0: &Rat, z0: &Rat, digits: u32) -> Result<BigFloat> {
        let g = self.eval_gammas(n0, digits)?;
        Ok(g * z4_power(&self.power_z4.eval(n0), z0, digits)?)
    }
}

/// `(z0/4)^e` for `z0 >= 0`.
pub(crate) fn z4_power(e: &Rat, z0: &Rat, digits: u32) -> Result<BigFloat> {
    let prec = Precision::from_digits(digits);
    if e.is_zero() {
        return Ok(BigFloat::one(prec));
    }
    if z0.is_zero() {
        return if e.is_positive() {
            Ok(BigFloat::zero(prec))
        } else {
            Err(Error::OutsideConvergence)
        };
    }
    let base = BigFloat::from_rat(&(z0 / rat::int(4)), prec);
    Ok(base.powf(&BigFloat::from_rat(e, prec)))
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = Vec::new();
        let mut den = Vec::new();
        if !self.power_m2.is_zero() {
            num.push(format!("(M2)^({})", self.power_m2));
        }
        if !self.power_z4.is_zero() {
            num.push(format!("(z/4)^({})", self.power_z4));
        }
        for (a, e) in &self.factors {
            let g = if e.abs() == 1 {
                format!("Γ({a})")
            } else {
                format!("Γ({a})^{}", e.abs())
            };
            if *e > 0 {
                num.push(g);
            } else {
                den.push(g);
            }
        }
        let n = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if den.is_empty() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/({})", den.join("*"))
        }
    }
}
