use mastercount::hyper::{
    basis_count, basis_x, basis_y, cancel_params, reduce_shifts, series_sum, ReducedForm, PFQ,
};
use mastercount::sunset::dimension;
use mastercount::{BigFloat, Error, Precision, Rat};
use serde_json::json;

use crate::fail::{CmdResult, Fail};
use crate::Out;

const GUARD: u32 = 10;

fn parse(spec: &str) -> Result<PFQ, Fail> {
    PFQ::parse(spec).map_err(Fail::in_input(spec))
}

pub fn eval(out: Out, spec: &str, eps: &Rat, z: &Rat) -> CmdResult {
    let f = parse(spec)?;
    let p = Precision::from_digits(out.prec + GUARD);
    let v = series_sum(&f, &BigFloat::from_rat(z, p), &dimension(eps), out.prec)?;
    let v = v.to_decimal_string(out.prec);
    if out.json {
        out.emit(json!({ "function": f.to_string(), "eps": eps.to_string(), "z": z.to_string(), "value": v }));
    } else {
        println!("{v}");
    }
    Ok(())
}

fn reduce_default(f: &PFQ) -> Result<ReducedForm, Error> {
    reduce_shifts(f, &basis_x())
        .or_else(|_| reduce_shifts(f, &basis_y()))
        .or_else(|_| reduce_shifts(f, &cancel_params(f)))
}

pub fn reduce(out: Out, spec: &str, target: Option<&str>) -> CmdResult {
    let f = parse(spec)?;
    let r = match target {
        Some(t) => reduce_shifts(&f, &parse(t)?)?,
        None => reduce_default(&f)?,
    };
    if out.json {
        let op: Vec<String> = r.op.coeffs().iter().map(|c| c.to_string()).collect();
        out.emit(json!({
            "function": f.to_string(),
            "basis": r.basis.to_string(),
            "op": op,
            "remainder": r.remainder.to_string(),
            "compositions": r.compositions,
        }));
    } else {
        println!("{f} = {r}");
    }
    Ok(())
}

pub fn count(out: Out, spec: &str) -> CmdResult {
    let f = parse(spec)?;
    let c = basis_count(&f);
    if out.json {
        out.emit(json!({ "function": f.to_string(), "collapsed": cancel_params(&f).to_string(), "count": c }));
    } else {
        println!("{c}");
    }
    Ok(())
}
