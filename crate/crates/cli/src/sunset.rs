use mastercount::kernel::format_decimal;
use mastercount::sunset::numeric::tolerance;
use mastercount::sunset::{
    assemble_main, build_representation, collapse, equal_mass_specialize, eval_J, find_relation,
    verify_main_numeric, Relation, SunsetIndices, J112,
};
use mastercount::{Poly, Rat, RatFunc};
use serde_json::json;

use crate::fail::{CmdResult, Fail};
use crate::Out;

pub fn repr(out: Out, sigma: i64, beta: i64, alpha: i64) -> CmdResult {
    let idx = SunsetIndices::new(sigma, beta, alpha);
    let full = build_representation(idx)?;
    let short = collapse(&full);
    if out.json {
        out.emit(json!({ "index": idx.to_string(), "terms": full, "collapsed": short }));
    } else {
        println!("{idx} at M2 = 1:");
        println!("{full}");
        println!("after collapse:");
        println!("{short}");
    }
    Ok(())
}

/// The relation found, checked against `λ = (3n-8, z, 2)`, `μ = n-2`.
fn checked_relation() -> Result<Relation, Fail> {
    let found = find_relation()?;
    let same = |p: &Poly, s: &str| {
        RatFunc::from(p.clone()) == RatFunc::parse(s).expect("valid expression")
    };
    let want = ["3*n-8", "z", "2"];
    if !found.lambdas.iter().zip(want).all(|(l, w)| same(l, w)) || !same(&found.mu, "n-2") {
        return Err(Fail::Contradiction(format!(
            "relation ({}, {}, {}; {}) differs from (3*n-8, z, 2; n-2)",
            found.lambdas[0], found.lambdas[1], found.lambdas[2], found.mu
        )));
    }
    Ok(assemble_main(&found)?)
}

pub fn relation(out: Out, equal_mass: bool) -> CmdResult {
    let main = checked_relation()?;
    let eq = equal_mass_specialize(&main)?;
    if out.json {
        out.emit(if equal_mass {
            eq.to_json()
        } else {
            main.to_json()
        });
        return Ok(());
    }
    let found = main.to_found()?;
    if !equal_mass {
        let [l1, l2, l3] = &found.lambdas;
        println!("lambda = ({l1}, {l2}, {l3})");
        println!("mu = {}", found.mu);
        for (i, l) in &main.lambdas {
            println!("coefficient of {i}: {}", main.coefficient_text(*i, l));
        }
        println!("relation: {}", main.to_text());
    }
    for (i, l) in &eq.lambdas {
        let name = if *i == J112 { "J(1,1,2)" } else { "J(1,1,1)" };
        println!(
            "equal-mass coefficient of {name}: {}",
            eq.coefficient_text(*i, l)
        );
    }
    println!("equal-mass relation: {}", eq.to_text());
    Ok(())
}

pub fn verify(out: Out, eps: &Rat, z: &Rat) -> CmdResult {
    let residual = verify_main_numeric(eps, z, out.prec)?;
    let pass = residual < tolerance(i64::from(out.prec) - 10, out.prec);
    let r = format_decimal(&residual.to_rat(), 6);
    if out.json {
        out.emit(json!({
            "eps": eps.to_string(),
            "z": z.to_string(),
            "prec": out.prec,
            "residual": r,
            "tolerance": format!("1e-{}", out.prec - 10),
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

pub fn eval(out: Out, sigma: i64, beta: i64, alpha: i64, eps: &Rat, z: &Rat) -> CmdResult {
    let idx = SunsetIndices::new(sigma, beta, alpha);
    let v = eval_J(idx, eps, z, out.prec)?.to_decimal_string(out.prec);
    if out.json {
        out.emit(json!({ "index": idx.to_string(), "eps": eps.to_string(), "z": z.to_string(), "value": v }));
    } else {
        println!("{idx} = {v}");
    }
    Ok(())
}
