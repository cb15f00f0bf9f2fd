//! Ordered Gaussian elimination of the identities generated on a box of
//! seeds.
//!
//! Integrals are ordered by sector, then numerators, then dots, then the
//! index vector. The leading integral of each identity is eliminated against
//! the rows found so far until it is new, and then becomes a pivot. A final
//! pass in ascending pivot order expresses the pivots inside the seed box
//! through non-pivots only.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::FamilyIndex;
use super::identity::{gen_ibp, IBPIdentity, ALL_MOMENTA, LOOP_MOMENTA};
use super::table::{tadpole_ratio, MasterKey, ReductionTable};
use crate::error::{Error, Result};
use crate::kernel::RatFunc;

/// Seeds have at most `dots` dots and `nums` numerator powers in total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedBound {
    pub dots: u32,
    pub nums: u32,
}

impl Default for SeedBound {
    fn default() -> Self {
        SeedBound { dots: 2, nums: 1 }
    }
}

impl SeedBound {
    pub fn new(dots: u32, nums: u32) -> Result<Self> {
        if dots < 2 || nums < 1 {
            return Err(Error::Invalid(format!(
                "seed bounds need dots >= 2 and nums >= 1, got ({dots}, {nums})"
            )));
        }
        Ok(SeedBound { dots, nums })
    }

    pub fn contains(&self, i: &FamilyIndex) -> bool {
        !i.is_zero_sector() && i.dots() <= self.dots as i64 && i.numerators() <= self.nums as i64
    }

    /// All seeds in the two nonzero sectors, ascending.
    pub fn seeds(&self) -> Vec<FamilyIndex> {
        let r = self.dots as i64;
        let s = self.nums as i64;
        let mut out = Vec::new();
        for a1 in -s..=1 + r {
            for a2 in 1..=1 + r {
                for a3 in 1..=1 + r {
                    for a4 in -s..=0 {
                        for a5 in -s..=0 {
                            let i = FamilyIndex([a1, a2, a3, a4, a5]);
                            if self.contains(&i) {
                                out.push(i);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Every identity on every seed, in seed order.
pub fn generate(bound: &SeedBound) -> Vec<IBPIdentity> {
    let pairs: Vec<_> = LOOP_MOMENTA
        .iter()
        .flat_map(|&l| ALL_MOMENTA.iter().map(move |&v| (l, v)))
        .collect();
    bound
        .seeds()
        .par_iter()
        .flat_map_iter(|&seed| pairs.iter().map(move |&(l, v)| gen_ibp(l, v, seed)))
        .collect()
}

type Row = BTreeMap<FamilyIndex, RatFunc>;

fn to_row(id: &IBPIdentity) -> Row {
    id.terms
        .iter()
        .filter(|(i, c)| !i.is_zero_sector() && !c.is_zero())
        .map(|(i, c)| (*i, RatFunc::from(c.clone())))
        .collect()
}

fn add_scaled(row: &mut Row, c: &RatFunc, expr: &Row) {
    for (k, v) in expr {
        let t = c * v;
        match row.get_mut(k) {
            Some(x) => {
                *x = &*x + &t;
                if x.is_zero() {
                    row.remove(k);
                }
            }
            None => {
                row.insert(*k, t);
            }
        }
    }
}

/// Pivot rows `I_p = Σ c_j I_j` with every `I_j` lower than `I_p`.
#[derive(Default)]
struct Eliminator {
    pivots: BTreeMap<FamilyIndex, Row>,
}

impl Eliminator {
    fn reduce(&self, mut row: Row) -> Row {
        let mut cursor: Option<FamilyIndex> = None;
        loop {
            let next = match cursor {
                Some(c) => row
                    .range(..c)
                    .rev()
                    .map(|(k, _)| *k)
                    .find(|k| self.pivots.contains_key(k)),
                None => row
                    .keys()
                    .rev()
                    .copied()
                    .find(|k| self.pivots.contains_key(k)),
            };
            let Some(k) = next else { break };
            let c = row.remove(&k).expect("present");
            add_scaled(&mut row, &c, &self.pivots[&k]);
            cursor = Some(k);
        }
        row
    }

    /// Eliminates the leading integral until it is not a pivot.
    fn reduce_leading(&self, mut row: Row) -> Row {
        while let Some((&k, _)) = row.iter().next_back() {
            let Some(expr) = self.pivots.get(&k) else {
                break;
            };
            let c = row.remove(&k).expect("present");
            add_scaled(&mut row, &c, expr);
        }
        row
    }

    fn insert(&mut self, row: Row) -> Result<()> {
        let mut row = self.reduce_leading(row);
        let Some((&p, _)) = row.iter().next_back() else {
            return Ok(());
        };
        let cp = row.remove(&p).expect("present");
        let scale = -RatFunc::one().try_div(&cp)?;
        for v in row.values_mut() {
            *v = &*v * &scale;
        }
        self.pivots.insert(p, row);
        Ok(())
    }

    /// Rewrites the pivots in `wanted`, and every pivot they depend on,
    /// through non-pivots only.
    fn back_substitute(&mut self, wanted: impl IntoIterator<Item = FamilyIndex>) {
        let mut need: BTreeSet<FamilyIndex> = BTreeSet::new();
        let mut stack: Vec<FamilyIndex> = wanted
            .into_iter()
            .filter(|k| self.pivots.contains_key(k))
            .collect();
        while let Some(k) = stack.pop() {
            if need.insert(k) {
                stack.extend(
                    self.pivots[&k]
                        .keys()
                        .filter(|j| self.pivots.contains_key(j) && !need.contains(j)),
                );
            }
        }
        for k in need {
            let row = self.pivots.remove(&k).expect("present");
            let row = self.reduce(row);
            self.pivots.insert(k, row);
        }
    }
}

pub fn laporta(bound: SeedBound) -> Result<ReductionTable> {
    let bound = SeedBound::new(bound.dots, bound.nums)?;
    let ids = generate(&bound);
    let rows: Vec<Row> = ids.par_iter().map(to_row).collect();
    let mut el = Eliminator::default();
    let mut seen: BTreeSet<FamilyIndex> = BTreeSet::new();
    for row in rows {
        seen.extend(row.keys().copied());
        el.insert(row)?;
    }
    let wanted: Vec<FamilyIndex> = el
        .pivots
        .keys()
        .filter(|k| bound.contains(k))
        .copied()
        .collect();
    el.back_substitute(wanted);

    let mut entries: BTreeMap<FamilyIndex, Vec<(MasterKey, RatFunc)>> = BTreeMap::new();
    let mut masters: BTreeSet<MasterKey> = BTreeSet::new();
    for (k, row) in &el.pivots {
        if !bound.contains(k) {
            continue;
        }
        let expr: Vec<(MasterKey, RatFunc)> = row
            .iter()
            .rev()
            .map(|(i, c)| (MasterKey::Integral(*i), c.clone()))
            .collect();
        masters.extend(expr.iter().map(|(m, _)| *m));
        entries.insert(*k, expr);
    }
    for i in seen
        .iter()
        .filter(|i| bound.contains(i) && !el.pivots.contains_key(i))
    {
        masters.insert(MasterKey::Integral(*i));
    }
    let table = ReductionTable {
        bound,
        masters: masters.into_iter().collect(),
        entries,
        gamma_module: None,
    };
    check_tadpoles(&table)?;
    Ok(table)
}

/// Compares reduced double tadpoles against their closed Γ-ratio.
fn check_tadpoles(t: &ReductionTable) -> Result<()> {
    let base = FamilyIndex([0, 1, 1, 0, 0]);
    for (k, expr) in &t.entries {
        if !(k.is_tadpole() && k.0[0] == 0 && k.0[3] == 0 && k.0[4] == 0) {
            continue;
        }
        let want = tadpole_ratio(k)?;
        let ok =
            matches!(expr.as_slice(), [(MasterKey::Integral(m), c)] if *m == base && *c == want);
        if !ok {
            return Err(Error::IbpInconsistency(format!(
                "I({k}) disagrees with its closed form"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_box() {
        let b = SeedBound::default();
        let s = b.seeds();
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains(&"1,1,3,0,0".parse().unwrap()));
        assert!(s.contains(&"-1,1,1,0,0".parse().unwrap()));
        assert!(!s.contains(&"1,1,1,-1,-1".parse().unwrap()));
        assert!(SeedBound::new(1, 1).is_err());
    }
}
