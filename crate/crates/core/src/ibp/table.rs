//! Reduction tables, their JSON form, injection of the external relation,
//! and the numeric cross-check against the series representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::family::FamilyIndex;
use super::laporta::SeedBound;
use crate::error::{Error, Result};
use crate::kernel::rat::{self, Rat};
use crate::kernel::{BigFloat, Precision, RatFunc};
use crate::sunset::gammas::z4_power;
use crate::sunset::numeric::dimension;
use crate::sunset::{eval_J, GammaProduct, Relation, J112};

const GUARD: u32 = 10;

/// A master integral, or the pseudo-master carrying the Γ-product of an
/// injected relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MasterKey {
    Integral(FamilyIndex),
    GammaModule,
}

impl MasterKey {
    /// Expressible through Γ functions: the pseudo-master and the double
    /// tadpoles.
    pub fn is_gamma_expressible(&self) -> bool {
        match self {
            MasterKey::Integral(i) => i.is_tadpole(),
            MasterKey::GammaModule => true,
        }
    }

    fn key(&self) -> (u8, u8, Option<FamilyIndex>) {
        match self {
            MasterKey::Integral(i) => (i.sector(), 0, Some(*i)),
            MasterKey::GammaModule => (0b110, 1, None),
        }
    }
}

impl Ord for MasterKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl PartialOrd for MasterKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for MasterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MasterKey::Integral(i) => write!(f, "{i}"),
            MasterKey::GammaModule => f.write_str("Gamma"),
        }
    }
}

impl FromStr for MasterKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Gamma" {
            Ok(MasterKey::GammaModule)
        } else {
            Ok(MasterKey::Integral(s.parse()?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTable {
    pub bound: SeedBound,
    pub masters: Vec<MasterKey>,
    pub entries: BTreeMap<FamilyIndex, Vec<(MasterKey, RatFunc)>>,
    /// Value of [`MasterKey::GammaModule`] at `M² = 1`.
    pub gamma_module: Option<GammaProduct>,
}

impl ReductionTable {
    pub fn reduce(&self, target: &FamilyIndex) -> Result<Vec<(MasterKey, RatFunc)>> {
        if target.is_zero_sector() {
            return Ok(Vec::new());
        }
        let key = MasterKey::Integral(*target);
        if self.masters.contains(&key) {
            return Ok(vec![(key, RatFunc::one())]);
        }
        self.entries
            .get(target)
            .cloned()
            .ok_or_else(|| Error::NotReducible(target.to_string()))
    }

    pub fn non_gamma_masters(&self) -> Vec<MasterKey> {
        self.masters
            .iter()
            .filter(|m| !m.is_gamma_expressible())
            .copied()
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = TableJson {
            family: "sunset012".into(),
            variables: vec!["n".into(), "z".into()],
            bound: self.bound,
            masters: self.masters.iter().map(|m| m.to_string()).collect(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| {
                    (
                        k.to_string(),
                        v.iter()
                            .map(|(m, c)| (m.to_string(), c.to_string()))
                            .collect(),
                    )
                })
                .collect(),
            gamma_module: self.gamma_module.clone(),
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: TableJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        if raw.family != "sunset012" {
            return Err(Error::Invalid(format!("unknown family {:?}", raw.family)));
        }
        let masters = raw
            .masters
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<MasterKey>>>()?;
        let mut entries = BTreeMap::new();
        for (k, v) in &raw.entries {
            let expr = v
                .iter()
                .map(|(m, c)| Ok((m.parse()?, RatFunc::parse(c)?)))
                .collect::<Result<Vec<_>>>()?;
            entries.insert(k.parse()?, expr);
        }
        Ok(ReductionTable {
            bound: raw.bound,
            masters,
            entries,
            gamma_module: raw.gamma_module,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json(&v)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    family: String,
    variables: Vec<String>,
    bound: SeedBound,
    masters: Vec<String>,
    entries: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma_module: Option<GammaProduct>,
}

/// Eliminates `J(1,1,2) = I(1,2,1,0,0)` with the relation, moving its
/// right-hand side into the Γ pseudo-master. Applying it twice is a no-op.
pub fn apply_external_relation(t: &ReductionTable, rel: &Relation) -> Result<ReductionTable> {
    if rel.equal_mass {
        return Err(Error::Invalid(
            "the equal-mass relation does not apply to this family".into(),
        ));
    }
    let target = FamilyIndex::from_sunset(J112);
    if !t.masters.contains(&MasterKey::Integral(target)) {
        if t.gamma_module.is_some() {
            return Ok(t.clone());
        }
        return Err(Error::Invalid(format!(
            "I({target}) is not a master of the table"
        )));
    }
    let mut lt = None;
    let mut others = Vec::new();
    for (j, l) in &rel.lambdas {
        let i = FamilyIndex::from_sunset(*j);
        if i == target {
            lt = Some(l.clone());
        } else {
            if !t.masters.contains(&MasterKey::Integral(i)) {
                return Err(Error::Invalid(format!(
                    "I({i}) is not a master of the table"
                )));
            }
            others.push((MasterKey::Integral(i), l.clone()));
        }
    }
    let lt = lt.ok_or_else(|| Error::Invalid("relation does not involve J(1,1,2)".into()))?;
    // I_t = (mult Γ - Σ λ_j I_j) / λ_t
    let mut expr = vec![(MasterKey::GammaModule, rel.rhs_multiplier.try_div(&lt)?)];
    for (m, l) in others {
        expr.push((m, -l.try_div(&lt)?));
    }

    let tkey = MasterKey::Integral(target);
    let substitute = |e: &[(MasterKey, RatFunc)]| -> Vec<(MasterKey, RatFunc)> {
        let mut acc: BTreeMap<MasterKey, RatFunc> = BTreeMap::new();
        for (m, c) in e {
            let parts: Vec<(MasterKey, RatFunc)> = if *m == tkey {
                expr.iter().map(|(k, v)| (*k, c * v)).collect()
            } else {
                vec![(*m, c.clone())]
            };
            for (k, v) in parts {
                let s = acc.entry(k).or_insert_with(RatFunc::zero);
                *s = &*s + &v;
            }
        }
        acc.into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    };
    let mut entries: BTreeMap<FamilyIndex, Vec<(MasterKey, RatFunc)>> =
        t.entries.iter().map(|(k, e)| (*k, substitute(e))).collect();
    entries.insert(target, substitute(&[(tkey, RatFunc::one())]));
    let mut masters: Vec<MasterKey> = t.masters.iter().filter(|m| **m != tkey).copied().collect();
    masters.push(MasterKey::GammaModule);
    masters.sort();
    Ok(ReductionTable {
        bound: t.bound,
        masters,
        entries,
        gamma_module: Some(rel.rhs.clone()),
    })
}

/// `(x)_k` as a rational function for `k >= 0`.
fn poch(x: &RatFunc, k: i64) -> RatFunc {
    (0..k).fold(RatFunc::one(), |acc, j| &acc * &(x + &RatFunc::int(j)))
}

/// `I(0,a2,a3,0,0) / I(0,1,1,0,0)` at `M² = 1`, from
/// `∫ d^n k / π^(n/2) (k²+μ²)^-a = Γ(a-n/2)/Γ(a) (μ²)^(n/2-a)`.
pub fn tadpole_ratio(i: &FamilyIndex) -> Result<RatFunc> {
    let [a1, a2, a3, a4, a5] = i.0;
    if a1 != 0 || a4 != 0 || a5 != 0 || a2 < 1 || a3 < 1 {
        return Err(Error::Invalid(format!(
            "I({i}) is not a plain double tadpole"
        )));
    }
    let x = RatFunc::parse("1-n/2").expect("constant expression");
    let fact = |k: i64| RatFunc::constant((1..k).fold(rat::int(1), |acc, j| acc * rat::int(j)));
    let m2 = RatFunc::parse("z/4").expect("constant expression");
    let r = poch(&x, a2 - 1).try_div(&fact(a2))?;
    let r = &r * &poch(&x, a3 - 1).try_div(&fact(a3))?;
    Ok(&r * &m2.pow(1 - a3 as i32)?)
}

fn tadpole_value(i: &FamilyIndex, n0: &Rat, z0: &Rat, digits: u32) -> Result<BigFloat> {
    let [a1, a2, a3, a4, a5] = i.0;
    if a1 != 0 || a4 != 0 || a5 != 0 {
        return Err(Error::Invalid(format!("no closed form for I({i})")));
    }
    let p = Precision::from_digits(digits);
    let half_n = n0 / rat::int(2);
    let one_loop = |a: i64| -> Result<BigFloat> {
        let g = GammaProduct::from_factors([
            (crate::hyper::ParamExpr::constant(rat::int(a) - &half_n), 1),
            (crate::hyper::ParamExpr::int(a), -1),
        ]);
        g.eval_gammas(n0, digits)
    };
    let mass = z4_power(&(&half_n - rat::int(a3)), z0, digits)?;
    Ok(one_loop(a2)? * one_loop(a3)? * mass * BigFloat::one(p))
}

/// Numeric value of a master at `M² = 1`.
pub fn eval_master(
    t: &ReductionTable,
    m: &MasterKey,
    eps: &Rat,
    z0: &Rat,
    prec: u32,
) -> Result<BigFloat> {
    let n0 = dimension(eps);
    match m {
        MasterKey::GammaModule => t
            .gamma_module
            .as_ref()
            .ok_or_else(|| Error::Invalid("table has no Γ module".into()))?
            .eval_gammas(&n0, prec + GUARD),
        MasterKey::Integral(i) => match i.to_sunset() {
            Some(j) => eval_J(j, eps, z0, prec),
            None => tadpole_value(i, &n0, z0, prec + GUARD),
        },
    }
}

/// `|J(target) - Σ c_i master_i| / |J(target)|`.
pub fn cross_check(
    t: &ReductionTable,
    target: &FamilyIndex,
    eps: &Rat,
    z0: &Rat,
    prec: u32,
) -> Result<BigFloat> {
    let j = target.to_sunset().ok_or_else(|| {
        Error::Invalid(format!(
            "cross-check needs positive a1..a3 and no numerators, got I({target})"
        ))
    })?;
    let n0 = dimension(eps);
    let p = Precision::from_digits(prec + GUARD);
    let direct = eval_J(j, eps, z0, prec)?;
    let mut sum = BigFloat::zero(p);
    for (m, c) in t.reduce(target)? {
        let c = c.eval(&n0, z0)?;
        sum = sum + BigFloat::from_rat(&c, p) * eval_master(t, &m, eps, z0, prec)?;
    }
    Ok(((direct.clone() - sum) / direct).abs())
}
