//! Exact and arbitrary-precision arithmetic shared by every other module.

pub mod bigfloat;
pub mod gamma;
pub mod gcd;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod scalar;

pub use bigfloat::{format_decimal, BigFloat, Precision};
pub use gamma::{gamma, gamma_rat};
pub use parse::{parse_ratfunc, parse_with};
pub use poly::{Monomial, Poly};
pub use rat::{parse_rat, Rat};
pub use ratfunc::RatFunc;
pub use scalar::{pochhammer, RealScalar, Scalar};
