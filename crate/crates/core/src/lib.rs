//! Ordering positive numbers to maximize the variance of their partial sums.
//!
//! The crate evaluates the objective (exactly for integer inputs), computes
//! the closed-form effect of pairwise interchanges, applies the improving
//! composite transforms, builds the two closed-form optima, and provides an
//! exhaustive oracle plus a local search and a dominance screen for the
//! minimization counterpart (completion time variance).

pub mod construct;
pub mod ctv;
pub mod error;
pub mod number;
pub mod oracle;
pub mod search;
pub mod sequence;
pub mod stats;
pub mod structure;
pub mod transforms;
pub mod verify;

pub use construct::{check_interleaved_structure, construct_optimal, InterleaveCheck};
pub use ctv::{ctv_compare, ctv_dominates, ctv_screen, CtvComparison, CtvOptions, Dominance};
pub use error::{Error, Result};
pub use number::{Number, FLOAT_REL_TOL};
pub use oracle::{brute_force, Objective, OracleOptions, OracleResult};
pub use search::{local_search, SearchReport, Strategy};
pub use sequence::{NumberSet, Sequence};
pub use stats::{partial_mean, partial_sums, variance, variance_numerator, PartialSumStats};
pub use structure::{is_v_shaped, is_wedge_shaped, violated_necessary_conditions, Violation};
pub use transforms::{
    delta_f, dual, dual_transform, interchange, is_favorable, sum_n1_transform,
    sum_n2_decomposition, sum_n2_transform, InterchangeDelta, SumN2Decomposition, TransformKind,
    TransformStatus, TransformTrace,
};
