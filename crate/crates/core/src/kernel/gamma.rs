//! The Γ function at arbitrary precision.
//!
//! Spouge's approximation
//!
//! ```text
//! Γ(z+1) = (z+a)^(z+1/2) e^-(z+a) [ c_0 + Σ_{k=1}^{a-1} c_k / (z+k) + ε ]
//! c_0 = √(2π),  c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
//! ```
//!
//! has relative error at most `a^(-1/2) (2π)^-(a+1/2)` for `Re(z+a) > 0`,
//! so `a` follows directly from the requested digits. The alternating
//! coefficients are large, so the sum runs with enough extra bits to absorb
//! the cancellation. Arguments below 1/2 go through the reflection formula.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::bigfloat::{BigFloat, Precision};
use super::rat::{self, Rat};
use crate::error::{Error, Result};

/// Spouge parameter giving a truncation error below `10^-digits`.
fn spouge_a(digits: u32) -> u64 {
    let log10_2pi = (2.0 * std::f64::consts::PI).log10();
    let mut a = ((digits as f64) / log10_2pi).ceil().max(3.0) as u64;
    while (a as f64 + 0.5) * log10_2pi + 0.5 * (a as f64).log10() < digits as f64 {
        a += 1;
    }
    a
}

/// log2 of the largest |c_k|, used to size the working precision.
fn max_coeff_log2(a: u64) -> f64 {
    let mut best = 0.5 * (2.0 * std::f64::consts::PI).log2();
    let mut log_fact = 0.0; // ln (k-1)!
    for k in 1..a {
        if k > 1 {
            log_fact += ((k - 1) as f64).ln();
        }
        let ak = (a - k) as f64;
        let ln_ck = (k as f64 - 0.5) * ak.ln() + ak - log_fact;
        best = f64::max(best, ln_ck / std::f64::consts::LN_2);
    }
    best
}

/// Γ(x) for `x >= 1/2`.
fn spouge(x: &BigFloat, digits: u32) -> BigFloat {
    let target = Precision::from_digits(digits);
    // Truncation error must sit below the guard-digit floor.
    let a = spouge_a(digits + 12);
    let work = target.with_extra_bits(max_coeff_log2(a).ceil() as usize + 64);
    let x = x.with_precision(work);
    let one = BigFloat::one(work);
    let z = &x - &one;
    let af = BigFloat::from_i64(a as i64, work);

    let two_pi = BigFloat::pi(work) * BigFloat::from_i64(2, work);
    let mut sum = two_pi.sqrt();
    let e = one.exp();
    // e^(a-k) for k = 1 .. a-1, built downwards from e^(a-1).
    let mut e_pow = BigFloat::from_i64(a as i64 - 1, work).exp();
    let mut fact = BigFloat::one(work); // (k-1)!
    for k in 1..a {
        if k > 1 {
            fact = fact * BigFloat::from_i64(k as i64 - 1, work);
            e_pow = e_pow / e.clone();
        }
        let ak = BigFloat::from_i64((a - k) as i64, work);
        let mag = ak.powi(k - 1) * ak.sqrt() * e_pow.clone() / fact.clone();
        let term = mag / (&z + &BigFloat::from_i64(k as i64, work));
        sum = if k % 2 == 1 { sum + term } else { sum - term };
    }
    let za = &z + &af;
    let half = BigFloat::from_rat(&rat::rat(1, 2), work);
    let lead = ((&z + &half) * za.ln() - za).exp();
    (lead * sum).with_precision(target)
}

fn factorial(n: u64, prec: Precision) -> BigFloat {
    let f = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    BigFloat::from_bigint(&f, prec)
}

/// Γ(x) with relative error below `10^-digits`.
pub fn gamma(x: &BigFloat, digits: u32) -> Result<BigFloat> {
    if x.is_integer() && (x.is_zero() || x.is_negative()) {
        return Err(Error::GammaPole(format!("{x:?}")));
    }
    let target = Precision::from_digits(digits);
    if x.is_integer() && x.to_f64() < 1e6 {
        return Ok(factorial(x.to_f64() as u64 - 1, target));
    }
    let half = BigFloat::from_rat(&rat::rat(1, 2), x.precision());
    if *x >= half {
        return Ok(spouge(x, digits));
    }
    // Reflection: Γ(x) = π / (sin(πx) Γ(1-x)), with x reduced mod 2 before
    // the multiplication by π so the sine keeps full relative accuracy.
    let mag_bits = x.abs().to_f64().log2().max(0.0).ceil() as usize;
    let work = target.with_extra_bits(64 + mag_bits);
    let xw = x.with_precision(work);
    let two = BigFloat::from_i64(2, work);
    let r = &xw - &(two.clone() * (&xw / &two).floor());
    let pi = BigFloat::pi(work);
    let s = (pi.clone() * r).sin();
    let g = spouge(&(BigFloat::one(work) - xw), digits + 4).with_precision(work);
    Ok((pi / (s * g)).with_precision(target))
}

/// Γ at an exact rational argument.
pub fn gamma_rat(x: &Rat, digits: u32) -> Result<BigFloat> {
    if rat::is_nonpositive_integer(x) {
        return Err(Error::GammaPole(rat::fmt_rat(x)));
    }
    let target = Precision::from_digits(digits);
    if rat::is_integer(x) {
        if let Some(k) = x.to_integer().to_u64().filter(|&k| k < 100_000) {
            return Ok(factorial(k - 1, target));
        }
    }
    if x.is_negative() || *x < rat::rat(1, 2) {
        // Exact reduction of x modulo 2.
        let two = rat::int(2);
        let r = x - &two * (x / &two).floor();
        let work = target.with_extra_bits(64);
        let pi = BigFloat::pi(work);
        let s = (pi.clone() * BigFloat::from_rat(&r, work)).sin();
        let one_minus = BigFloat::from_rat(&(rat::int(1) - x), work);
        let g = spouge(&one_minus, digits + 4).with_precision(work);
        return Ok((pi / (s * g)).with_precision(target));
    }
    Ok(spouge(&BigFloat::from_rat(x, target), digits))
}
