//! The two-loop sunset with masses `{0, m, M}`: its hypergeometric
//! representation, decomposition onto a common basis, and the relation among
//! the masters.

pub mod decompose;
pub mod gammas;
pub mod numeric;
pub mod relation;
pub mod repr;
pub mod typo;

pub use decompose::{
    decompose_xy, find_relation, x_normalization, FoundRelation, XYCoords, MASTERS,
};
pub use gammas::GammaProduct;
pub use numeric::{dimension, eval_J, eval_J_scaled, relation_residual, verify_main_numeric};
pub use relation::{assemble_main, equal_mass_specialize, Relation};
pub use repr::{
    build_representation, collapse, gamma_a, gamma_b, ComboTerm, HyperCombo, SunsetIndices, J111,
    J112, J121,
};
pub use typo::{x_line_identity, X2Form};
