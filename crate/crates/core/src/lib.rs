//! Master-integral counting for the two-loop on-shell sunset.
//!
//! * [`kernel`]: big rationals, polynomials and rational functions in `n`
//!   and `z`, arbitrary-precision floats and Γ.
//! * [`hyper`]: generalized hypergeometric functions with parameters affine
//!   in `n`, series evaluation, contiguous operators and differential
//!   reduction.
//! * [`sunset`]: the hypergeometric representation of the sunset family,
//!   the θ-basis decomposition of the masters and the relation among them.
//! * [`ibp`]: integration-by-parts identities and Laporta reduction.

pub mod error;
pub mod hyper;
pub mod ibp;
pub mod kernel;
pub mod sunset;

pub use error::{Error, Result};
pub use kernel::{BigFloat, Poly, Precision, Rat, RatFunc};

/// Default decimal precision for numeric work.
pub const DEFAULT_PREC: u32 = 50;
