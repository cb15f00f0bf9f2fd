//! Integration-by-parts identities for the sunset family and their
//! Laporta-style reduction to masters.

pub mod family;
pub mod identity;
pub mod laporta;
pub mod table;

pub use family::FamilyIndex;
pub use identity::{
    gen_ibp, ibp_template, sp_map, IBPIdentity, IbpCoeff, IbpTemplate, LinearForm, Momentum,
    ALL_MOMENTA, LOOP_MOMENTA,
};
pub use laporta::{generate, laporta, SeedBound};
pub use table::{
    apply_external_relation, cross_check, eval_master, tadpole_ratio, MasterKey, ReductionTable,
};
