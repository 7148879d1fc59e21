//! Achievable dimensions of automorphism groups of hyperbolic Reinhardt
//! domains in `ℂⁿ`.
//!
//! Every such dimension has the form `Σ nᵢ² + 2 Σ_{j ≤ m} nⱼ` for a
//! partition `(n₁, .., n_k)` of `n`. This crate enumerates those values,
//! computes the sums-of-squares sets `Ĉ(n)` with a bit-packed shift-or
//! recurrence, counts compact (`c(n)`) and non-compact (`h(n)`)
//! dimensions, classifies individual dimensions, and checks the known
//! bounds over finite ranges.
//!
//! ```
//! use reinhardt_core::{build_table, DEFAULT_MEMORY_LIMIT};
//!
//! let table = build_table(21, DEFAULT_MEMORY_LIMIT).unwrap();
//! assert_eq!(table.c_of(20).unwrap(), 117);
//! assert_eq!(table.h_of(20).unwrap(), 11);
//! ```

pub mod classify;
pub mod dims;
pub mod error;
pub mod partition;
pub mod sequences;
pub mod storage;
pub mod verify;

pub use classify::{
    classify_dimension, make_witness, realizations, t9_families, Classification, Classifier,
    DomainFamily, FamilyTag, Realization, RealizationMode, Status, WitnessDomain,
};
pub use dims::{
    build_table, chat_bruteforce, omega2_closed_form, omega_bruteforce, smooth_bounded_sets,
    DimSet, DimTable, GeneralTable, TableBuilder, DEFAULT_MEMORY_LIMIT,
};
pub use error::{Error, Result};
pub use partition::{
    distinct_arm_values, enumerate_partitions, enumerate_partitions_with_length, MarkedPartition,
    Partition,
};
pub use sequences::{fgk, format_ratio, ratio_table, FgkRow, RatioRow};
pub use storage::{load_table, save_table};
pub use verify::{CheckReport, CheckStatus};
