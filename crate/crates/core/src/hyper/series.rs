//! Direct summation of the defining series.
//!
//! Terms follow the recurrence `t_{k+1} = t_k z ∏(a_i+k) / (∏(b_j+k) (k+1))`.
//! For a non-terminating series the loop stops at index `K` once
//!
//! * the bound `U(k) = |z| ∏(k + max(|a_i|,1)) / (∏(k - |b_j|) (k+1)) ((k+1)/k)^w`
//!   on the weighted term ratio satisfies `U(K+1) <= r`, and
//! * `|T_{K+1}| / (1 - r) <= 10^-(prec+5) |S_K|`.
//!
//! `U` is decreasing in `k`, so every later ratio is below `r` and the tail
//! is dominated by a geometric series.

use num_traits::{ToPrimitive, Zero};

use super::pfq::PFQ;
use crate::error::{Error, Result};
use crate::kernel::rat::{self, Rat};
use crate::kernel::{Poly, RealScalar};

const MAX_TERMS: u64 = 2_000_000;

struct Prepared {
    a: Vec<Rat>,
    b: Vec<Rat>,
    /// Last nonzero index of a terminating series.
    last: Option<u64>,
}

fn prepare(f: &PFQ, n0: &Rat) -> Result<Prepared> {
    let a: Vec<Rat> = f.upper().iter().map(|p| p.eval(n0)).collect();
    let b: Vec<Rat> = f.lower().iter().map(|p| p.eval(n0)).collect();
    let last = a
        .iter()
        .filter(|x| rat::is_nonpositive_integer(x))
        .filter_map(|x| (-x).to_integer().to_u64())
        .min();
    for bj in b.iter().filter(|x| rat::is_nonpositive_integer(x)) {
        let m = (-bj).to_integer().to_u64().unwrap_or(u64::MAX);
        // (b)_k vanishes for k > m.
        if last.map_or(true, |l| l > m) {
            return Err(Error::LowerParameterPole);
        }
    }
    Ok(Prepared { a, b, last })
}

fn ratio_bound(p: &Prepared, z: f64, k: u64, w: u32) -> f64 {
    let k = k as f64;
    let mut u = z;
    for a in &p.a {
        u *= k + rat::to_f64(a).abs().max(1.0);
    }
    for b in &p.b {
        let d = k - rat::to_f64(b).abs();
        if d <= 0.0 {
            return f64::INFINITY;
        }
        u /= d;
    }
    u /= k + 1.0;
    if w > 0 {
        u *= ((k + 1.0) / k).powi(w as i32);
    }
    // Cushion against rounding in the bound itself.
    u * (1.0 + 1e-12)
}

/// `Σ_k k^w t_k z^k`, i.e. `θ^w F` at `z0`.
fn weighted_sum<T: RealScalar>(f: &PFQ, w: u32, z0: &T, n0: &Rat, prec: u32) -> Result<T> {
    let p = prepare(f, n0)?;
    let one = z0.one_like();
    let zero = z0.zero_like();
    if z0.vanishes() {
        return Ok(if w == 0 { one } else { zero });
    }
    let weight = |k: u64| -> T {
        if w == 0 {
            one.clone()
        } else {
            z0.embed(&rat::int(k as i64)).powi(w)
        }
    };
    let a: Vec<T> = p.a.iter().map(|x| z0.embed(x)).collect();
    let b: Vec<T> = p.b.iter().map(|x| z0.embed(x)).collect();
    let step = |t: &T, k: u64| -> T {
        let kk = z0.embed(&rat::int(k as i64));
        let mut num = t.clone() * z0.clone();
        for ai in &a {
            num = num * (ai.clone() + kk.clone());
        }
        let mut den = kk.clone() + one.clone();
        for bj in &b {
            den = den * (bj.clone() + kk.clone());
        }
        num / den
    };

    if let Some(last) = p.last {
        let mut t = one.clone();
        let mut s = zero;
        for k in 0..=last {
            s = s + weight(k) * t.clone();
            if k < last {
                t = step(&t, k);
            }
        }
        return Ok(s);
    }

    let zf = z0.to_f64().abs();
    if zf >= 1.0 {
        return Err(Error::DivergentSeries);
    }
    let r = f64::max(0.9, (1.0 + zf) / 2.0);
    let tol = z0.embed(&Rat::new(
        1.into(),
        num_bigint::BigInt::from(10).pow(prec + 5),
    ));
    let inv_gap = z0.embed(&Rat::from_float(1.0 / (1.0 - r)).unwrap_or_else(|| rat::int(10)));
    let mut t = one.clone();
    let mut s = zero;
    for k in 0..MAX_TERMS {
        s = s + weight(k) * t.clone();
        t = step(&t, k);
        if ratio_bound(&p, zf, k + 1, w) <= r {
            let next = (weight(k + 1) * t.clone()).abs() * inv_gap.clone();
            if next <= tol.clone() * s.abs() {
                return Ok(s);
            }
        }
    }
    Err(Error::DivergentSeries)
}

/// `pFq` at `z0` for the rational dimension `n0`.
pub fn series_sum<T: RealScalar>(f: &PFQ, z0: &T, n0: &Rat, prec: u32) -> Result<T> {
    weighted_sum(f, 0, z0, n0, prec)
}

/// `θ^k pFq` at `z0` by termwise weighting.
pub fn series_theta<T: RealScalar>(f: &PFQ, k: u32, z0: &T, n0: &Rat, prec: u32) -> Result<T> {
    weighted_sum(f, k, z0, n0, prec)
}

/// The full series as a polynomial in `z` when it terminates at `n0`.
pub fn terminating_poly(f: &PFQ, n0: &Rat) -> Result<Option<Poly>> {
    let p = prepare(f, n0)?;
    let Some(last) = p.last else {
        return Ok(None);
    };
    let mut t = rat::int(1);
    let mut out = Poly::zero();
    for k in 0..=last {
        out = &out + &Poly::monomial(t.clone(), crate::kernel::Monomial::new(0, k as u32));
        let kk = rat::int(k as i64);
        let mut num = t.clone();
        for ai in &p.a {
            num *= ai + &kk;
        }
        let mut den = &kk + rat::int(1);
        for bj in &p.b {
            den *= bj + &kk;
        }
        t = if den.is_zero() {
            Rat::zero()
        } else {
            num / den
        };
    }
    Ok(Some(out))
}
