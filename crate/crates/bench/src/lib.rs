//! Shared inputs for the criterion benchmarks.

use reinhardt_core::{DimTable, TableBuilder};

/// Table sizes exercised by the build benchmarks.
pub const BUILD_SIZES: &[u32] = &[100, 200, 400];

pub fn table(n_max: u32) -> DimTable {
    TableBuilder::new()
        .build(n_max)
        .expect("benchmark table fits the default memory limit")
}
