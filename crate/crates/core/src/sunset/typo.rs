//! Exact check of the x-line identity `(3n-8) x1 + z x2 + 2 x3 = n-2` at an
//! integer dimension where `a = 3-n` is a nonpositive integer, so every
//! `2F1` terminates and the identity becomes a polynomial statement in `z`.
//!
//! With `a = 3-n`, `b = n/2`:
//!
//! ```text
//! x1 = 2F1(1/2, a; b; z)
//! x2 = (a-1)/z [2F1(1/2, a; b'; z) - 1]
//! x3 = a 2F1(1/2, 1+a; b; z)
//! ```
//!
//! The printed form of `x2` has `b' = b`. The form consistent with the
//! contiguous relation for the lower parameter has `b' = b-1`.

use crate::error::{Error, Result};
use crate::hyper::{terminating_poly, ParamExpr, PFQ};
use crate::kernel::rat::{self, Rat};
use crate::kernel::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum X2Form {
    /// Lower parameter `b`.
    Printed,
    /// Lower parameter `b-1`.
    Corrected,
}

fn terminating(upper: [Rat; 2], lower: Rat, n0: &Rat) -> Result<RatFunc> {
    let f = PFQ::new(
        upper.into_iter().map(ParamExpr::constant).collect(),
        vec![ParamExpr::constant(lower)],
    )?;
    terminating_poly(&f, n0)?
        .map(RatFunc::from)
        .ok_or_else(|| Error::Invalid(format!("{f} does not terminate")))
}

/// `(3n-8) x1 + z x2 + 2 x3` at `n = n0`, as an exact function of `z`.
pub fn x_line_identity(n0: &Rat, form: X2Form) -> Result<RatFunc> {
    let a = rat::int(3) - n0;
    let b = n0 / rat::int(2);
    if !rat::is_nonpositive_integer(&a) {
        return Err(Error::Invalid(format!(
            "3-n = {} is not a nonpositive integer",
            rat::fmt_rat(&a)
        )));
    }
    let half = rat::rat(1, 2);
    let x1 = terminating([half.clone(), a.clone()], b.clone(), n0)?;
    let b2 = match form {
        X2Form::Printed => b.clone(),
        X2Form::Corrected => &b - rat::int(1),
    };
    let inner = &terminating([half.clone(), a.clone()], b2, n0)? - &RatFunc::one();
    let x2 = inner.try_div(&RatFunc::z())?.scale(&(&a - rat::int(1)));
    let x3 = terminating([half, &a + rat::int(1)], b, n0)?.scale(&a);
    let c1 = n0 * rat::int(3) - rat::int(8);
    Ok(&(&x1.scale(&c1) + &(&RatFunc::z() * &x2)) + &x3.scale(&rat::int(2)))
}
