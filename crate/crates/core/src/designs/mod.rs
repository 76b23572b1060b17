//! Design arrays, the combinatorial `(r,s)`-design verifier, the counting
//! identities satisfied by designs, and the two spectral T-design tests.

mod array;
mod identities;
mod spectral;
mod verify;

pub use array::DesignArray;
pub use identities::{
    avoidance_count, cardinality_formula, derived_design, lambda_formula, lambda_table, reduce_to_w,
};
pub use spectral::{full_set_character_sum, tdesign_idempotent_check, tdesign_spectral_check, IndexSetT};
pub use verify::{count_mrs, verify_rs_design, Triple, VerifyReport, Witness, TRIPLE_CAP};
