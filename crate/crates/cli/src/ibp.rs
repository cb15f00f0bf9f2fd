use std::path::PathBuf;

use mastercount::ibp::{
    apply_external_relation, cross_check, laporta, FamilyIndex, MasterKey, ReductionTable,
    SeedBound,
};
use mastercount::kernel::format_decimal;
use mastercount::sunset::numeric::tolerance;
use mastercount::sunset::{assemble_main, find_relation};
use mastercount::Rat;
use serde_json::json;

use crate::fail::{CmdResult, Fail};
use crate::Out;

pub struct TableConfig {
    pub dots: u32,
    pub nums: u32,
    pub path: Option<PathBuf>,
    pub with_main_relation: bool,
}

/// The reduction table, from the cache when its bounds match.
fn table(cfg: &TableConfig) -> Result<ReductionTable, Fail> {
    let bound = SeedBound::new(cfg.dots, cfg.nums)?;
    let cached = match &cfg.path {
        Some(p) if p.exists() => Some(ReductionTable::load(p)?).filter(|t| t.bound == bound),
        _ => None,
    };
    let t = match cached {
        Some(t) => t,
        None => {
            let t = laporta(bound)?;
            if let Some(p) = &cfg.path {
                t.save(p)?;
            }
            t
        }
    };
    if cfg.with_main_relation {
        Ok(apply_external_relation(
            &t,
            &assemble_main(&find_relation()?)?,
        )?)
    } else {
        Ok(t)
    }
}

fn integral_name(m: &MasterKey) -> String {
    match m {
        MasterKey::Integral(i) => format!("I({i})"),
        MasterKey::GammaModule => m.to_string(),
    }
}

pub fn reduce(out: Out, cfg: &TableConfig, target: &FamilyIndex) -> CmdResult {
    let t = table(cfg)?;
    let expr = t.reduce(target)?;
    if out.json {
        let terms: Vec<_> = expr
            .iter()
            .map(|(m, c)| json!([m.to_string(), c.to_string()]))
            .collect();
        out.emit(json!({ "target": target.to_string(), "terms": terms }));
    } else if expr.is_empty() {
        println!("I({target}) = 0");
    } else {
        println!("I({target}) =");
        for (m, c) in &expr {
            println!("  + ({c}) * {}", integral_name(m));
        }
    }
    Ok(())
}

pub fn masters(out: Out, cfg: &TableConfig) -> CmdResult {
    let t = table(cfg)?;
    let nontrivial = t.non_gamma_masters();
    let expected = if cfg.with_main_relation { 2 } else { 3 };
    if out.json {
        let all: Vec<String> = t.masters.iter().map(|m| m.to_string()).collect();
        let ng: Vec<String> = nontrivial.iter().map(|m| m.to_string()).collect();
        out.emit(json!({ "masters": all, "non_gamma": ng, "non_gamma_count": ng.len() }));
    } else {
        for m in &t.masters {
            let tag = if m.is_gamma_expressible() {
                "  (Γ-expressible)"
            } else {
                ""
            };
            println!("{}{tag}", integral_name(m));
        }
        println!("non-Γ masters: {}", nontrivial.len());
    }
    if nontrivial.len() != expected {
        return Err(Fail::Contradiction(format!(
            "{} non-Γ masters, expected {expected}",
            nontrivial.len()
        )));
    }
    Ok(())
}

pub fn check(out: Out, cfg: &TableConfig, target: &FamilyIndex, eps: &Rat, z: &Rat) -> CmdResult {
    let t = table(cfg)?;
    let residual = cross_check(&t, target, eps, z, out.prec)?;
    let pass = residual < tolerance(i64::from(out.prec) - 10, out.prec);
    let r = format_decimal(&residual.to_rat(), 6);
    if out.json {
        out.emit(json!({
            "target": target.to_string(),
            "eps": eps.to_string(),
            "z": z.to_string(),
            "prec": out.prec,
            "residual": r,
            "pass": pass,
        }));
    } else {
        println!("residual = {r}");
        println!("tolerance = 1e-{}", out.prec - 10);
    }
    if pass {
        Ok(())
    } else {
        Err(Fail::Verification(format!(
            "residual {r} exceeds 1e-{}",
            out.prec - 10
        )))
    }
}
