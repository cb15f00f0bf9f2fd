//! Generalized hypergeometric functions `pFq(a; b; z)` whose parameters are
//! affine in the dimension `n`.

pub mod param;
pub mod pfq;
pub mod reduce;
pub mod series;
pub mod theta;

pub use param::ParamExpr;
pub use pfq::{cancel_params, PFQ};
pub use reduce::{basis_count, eval_reduced, lower_lower, raise_upper, reduce_shifts, ReducedForm};
pub use series::{series_sum, series_theta, terminating_poly};
pub use theta::{theta_reduce, Ode, ThetaPoly};

/// `F_x = 2F1(1/2, 3-n; n/2; z)`, the basis for the first term of the
/// sunset representation.
pub fn basis_x() -> PFQ {
    PFQ::from_strs(&["1/2", "3-n"], &["n/2"]).expect("valid basis")
}

/// `F_y = 3F2(1, (n-1)/2, 2-n/2; n/2, n-1; z)`, the basis for the second
/// term.
pub fn basis_y() -> PFQ {
    PFQ::from_strs(&["1", "(n-1)/2", "2-n/2"], &["n/2", "n-1"]).expect("valid basis")
}
