//! Integration-by-parts identities `0 = ∫ ∂/∂l · (v F)` for the family.
//!
//! Coefficients are kept symbolic in the indices as
//! `Σ_i a_i c_i(n, z) + c_free(n, z)` at `M² = 1`, `m² = z/4`, and
//! instantiated on a seed afterwards.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::family::FamilyIndex;
use crate::kernel::rat::{self, Rat};
use crate::kernel::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Momentum {
    K1,
    K2,
    P,
}

impl fmt::Display for Momentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Momentum::K1 => "k1",
            Momentum::K2 => "k2",
            Momentum::P => "p",
        })
    }
}

pub const LOOP_MOMENTA: [Momentum; 2] = [Momentum::K1, Momentum::K2];
pub const ALL_MOMENTA: [Momentum; 3] = [Momentum::K1, Momentum::K2, Momentum::P];

/// `Σ c_i P_i + c_m m² + c_M M²` over `P = (D1, D2, D3, N1, N2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub props: [Rat; 5],
    pub m2: Rat,
    pub big_m2: Rat,
}

impl LinearForm {
    fn prop(i: usize) -> Self {
        let mut f = LinearForm::default();
        f.props[i] = rat::int(1);
        f
    }

    fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (a, b) in f.props.iter_mut().zip(&o.props) {
            *a += b;
        }
        f.m2 += &o.m2;
        f.big_m2 += &o.big_m2;
        f
    }

    fn scale(&self, c: &Rat) -> Self {
        LinearForm {
            props: self.props.clone().map(|p| p * c),
            m2: &self.m2 * c,
            big_m2: &self.big_m2 * c,
        }
    }

    /// The constant part at `M² = 1`, `m² = z/4`.
    pub fn constant(&self) -> Poly {
        &Poly::constant(self.big_m2.clone()) + &Poly::z().scale(&(&self.m2 / rat::int(4)))
    }
}

fn lf(props: [i64; 5], m2: Rat, big_m2: Rat) -> LinearForm {
    LinearForm {
        props: props.map(rat::int),
        m2,
        big_m2,
    }
}

/// Scalar products in terms of propagators, with `p² = -m²`.
pub fn sp_map(a: Momentum, b: Momentum) -> LinearForm {
    use Momentum::*;
    let half = rat::rat(1, 2);
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (K1, K1) => LinearForm::prop(3),
        (K2, K2) => lf([0, 0, 1, 0, 0], rat::int(-1), rat::int(0)),
        (K1, K2) => lf([0, -1, 1, 1, 0], rat::int(-1), rat::int(1)).scale(&half),
        (K1, P) => lf([-1, 0, 0, 1, 0], rat::int(-1), rat::int(0)).scale(&half),
        (K2, P) => LinearForm::prop(4),
        (P, P) => lf([0; 5], rat::int(-1), rat::int(0)),
        _ => unreachable!("ordered pair"),
    }
}

/// `∂P_i/∂l` as a combination of momenta `(k1, k2, p)`.
fn grad(i: usize, l: Momentum) -> [i64; 3] {
    use Momentum::*;
    match (i, l) {
        (0, K1) => [2, 0, -2],
        (1, K1) => [2, -2, 0],
        (1, K2) => [-2, 2, 0],
        (2, K2) => [0, 2, 0],
        (3, K1) => [2, 0, 0],
        (4, K2) => [0, 0, 1],
        _ => [0, 0, 0],
    }
}

/// `v · u` for `u` given by its momentum coordinates.
fn dot(v: Momentum, u: [i64; 3]) -> LinearForm {
    ALL_MOMENTA
        .iter()
        .zip(u)
        .filter(|(_, c)| *c != 0)
        .fold(LinearForm::default(), |acc, (m, c)| {
            acc.add(&sp_map(v, *m).scale(&rat::int(c)))
        })
}

/// Coefficient `Σ a_i a[i] + free`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IbpCoeff {
    pub a: [Poly; 5],
    pub free: Poly,
}

impl IbpCoeff {
    fn add(&mut self, o: &IbpCoeff) {
        for (x, y) in self.a.iter_mut().zip(&o.a) {
            *x = &*x + y;
        }
        self.free = &self.free + &o.free;
    }

    pub fn at(&self, seed: &FamilyIndex) -> Poly {
        self.a
            .iter()
            .zip(seed.0)
            .fold(self.free.clone(), |acc, (c, s)| {
                &acc + &c.scale(&rat::int(s))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.a.iter().all(Poly::is_zero)
    }
}

/// An identity with coefficients symbolic in the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbpTemplate {
    pub l: Momentum,
    pub v: Momentum,
    pub terms: BTreeMap<[i64; 5], IbpCoeff>,
}

pub fn ibp_template(l: Momentum, v: Momentum) -> IbpTemplate {
    let mut terms: BTreeMap<[i64; 5], IbpCoeff> = BTreeMap::new();
    let mut push = |shift: [i64; 5], c: IbpCoeff| terms.entry(shift).or_default().add(&c);
    if l == v {
        push(
            [0; 5],
            IbpCoeff {
                free: Poly::n(),
                ..Default::default()
            },
        );
    }
    for i in 0..5 {
        let g = grad(i, l);
        if g == [0, 0, 0] {
            continue;
        }
        // -a_i P_i^(-a_i-1) (v·∂P_i) with v·∂P_i = Σ c_j P_j + c0
        let form = dot(v, g);
        let neg = |p: Poly| {
            let mut c = IbpCoeff::default();
            c.a[i] = -p;
            c
        };
        let mut up = [0; 5];
        up[i] = 1;
        let c0 = form.constant();
        if !c0.is_zero() {
            push(up, neg(c0));
        }
        for (j, cj) in form.props.iter().enumerate() {
            if cj == &rat::int(0) {
                continue;
            }
            let mut s = up;
            s[j] -= 1;
            push(s, neg(Poly::constant(cj.clone())));
        }
    }
    terms.retain(|_, c| !c.is_zero());
    IbpTemplate { l, v, terms }
}

/// An identity on a concrete seed: `Σ c · I(index) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IBPIdentity {
    pub l: Momentum,
    pub v: Momentum,
    pub seed: FamilyIndex,
    pub terms: Vec<(FamilyIndex, Poly)>,
}

pub fn gen_ibp(l: Momentum, v: Momentum, seed: FamilyIndex) -> IBPIdentity {
    let t = ibp_template(l, v);
    let mut acc: BTreeMap<FamilyIndex, Poly> = BTreeMap::new();
    for (shift, c) in &t.terms {
        let p = c.at(&seed);
        if p.is_zero() {
            continue;
        }
        let e = acc.entry(seed.shifted(shift)).or_insert_with(Poly::zero);
        *e = &*e + &p;
    }
    IBPIdentity {
        l,
        v,
        seed,
        terms: acc
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .rev()
            .collect(),
    }
}

impl fmt::Display for IBPIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂{}·{} at I({}): ", self.l, self.v, self.seed)?;
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*I({idx})")?;
        }
        f.write_str(" = 0")
    }
}
