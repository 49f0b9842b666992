//! Weight-sequence, weight-function, and weight-matrix calculus.
//!
//! Everything here operates at a finite truncation scale `p ≤ P_max` (or a
//! bounded parameter range) and says so: associated functions report the
//! attaining index and whether the cap was hit, condition checkers label
//! their verdicts as truncation-caveated, and conjugate sups expand their
//! bracket until the maximand turns over.

mod conditions;
mod matrix;
mod omega;
mod reduction;
mod report;
mod sandwich;
mod sequence;

pub use conditions::{
    check_m1, check_m1_star, check_m1_star_w, check_m2_prime, check_na, check_quasianalytic,
    growth_witnesses, relation, Relation, RelationReport,
};
pub use matrix::WeightMatrix;
pub use omega::{validate_weight_function, WeightFunction};
pub use reduction::{verify_reduction, ReductionCase, ReductionReport};
pub use report::{ConditionReport, Verdict, Witness};
pub use sandwich::{verify_star_ws_sandwich, SandwichReport, SandwichRow};
pub use sequence::{AssocValue, SequenceFamily, WeightSequence};
