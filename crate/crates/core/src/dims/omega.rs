//! The sets `Ω(n, ℓ, q)` of values `Σ nᵢ² + 2 Σ_{marked} nⱼ` over partitions
//! of `n` into `ℓ` parts with `q` marked parts, the smooth-bounded split
//! into compact and non-compact values, and brute-force oracles for the
//! sums-of-squares sets.

use std::collections::BTreeSet;

use super::set::{words_for, DimSet};
use super::table::{part_shift, DimTable};
use crate::error::{Error, Result};
use crate::partition::{
    distinct_of, enumerate_partitions, enumerate_partitions_with_length, for_each_marking,
    sum_of_squares,
};

/// Largest `n` accepted by [`chat_bruteforce`]. Enumeration cost grows like
/// the partition number, so this is a practical cap, not a semantic one.
pub const ORACLE_MAX_N: u32 = 120;

/// Largest `n` for which marked partitions are enumerated exhaustively.
pub const OMEGA_MAX_N: u32 = 80;

/// `Ĉ(n)` by enumerating every partition of `n`.
pub fn chat_bruteforce(n: u32) -> Result<DimSet> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleBound {
            n,
            bound: ORACLE_MAX_N,
        });
    }
    let mut set = DimSet::new(n);
    let mut it = enumerate_partitions(n);
    while let Some(parts) = it.next_parts() {
        let v = sum_of_squares(parts);
        assert!(set.insert(v), "sum of squares {v} outside range for n={n}");
    }
    Ok(set)
}

pub(crate) fn check_omega_scale(n: u32) -> Result<()> {
    if n > OMEGA_MAX_N {
        return Err(Error::OracleBound {
            n,
            bound: OMEGA_MAX_N,
        });
    }
    Ok(())
}

/// `Ω(n, ℓ, q)` by exhaustive enumeration. Degenerate `(ℓ, q)` give the
/// empty set.
pub fn omega_bruteforce(n: u32, len: u32, marks: u32) -> Result<BTreeSet<u64>> {
    check_omega_scale(n)?;
    let mut out = BTreeSet::new();
    if len == 0 || len > n || marks > len {
        log::warn!("Ω({n}, {len}, {marks}) is empty: need 1 <= ℓ <= n and q <= ℓ");
        return Ok(out);
    }
    let mut it = enumerate_partitions_with_length(n, len);
    while let Some(parts) = it.next_parts() {
        let sq = sum_of_squares(parts);
        for_each_marking(&distinct_of(parts), Some(marks), |m| {
            let marked: u64 = m.iter().map(|&(v, c)| u64::from(v) * u64::from(c)).sum();
            out.insert(sq + 2 * marked);
        });
    }
    Ok(out)
}

/// `Ω(n, ℓ) = ⋃_q Ω(n, ℓ, q)`.
pub fn omega_len_bruteforce(n: u32, len: u32) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for q in 0..=len {
        out.extend(omega_bruteforce(n, len, q)?);
    }
    Ok(out)
}

/// `Ω(n) = ⋃_ℓ Ω(n, ℓ)`.
pub fn omega_all_bruteforce(n: u32) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for len in 1..=n {
        out.extend(omega_len_bruteforce(n, len)?);
    }
    Ok(out)
}

/// `Ω(n, 2)` from the four quadratic families indexed by the imbalance `μ`
/// of the two parts.
pub fn omega2_closed_form(n: u32) -> BTreeSet<u64> {
    let n = u64::from(n);
    let mut out = BTreeSet::new();
    if n < 2 {
        return out;
    }
    if n % 2 == 0 {
        let base = n * n / 2;
        for mu in 0..n / 2 {
            out.insert(base + 2 * mu * mu);
            // μ(μ - 1) is never negative for integer μ.
            out.insert(base + 2 * mu * mu.saturating_sub(1) + n);
            out.insert(base + 2 * mu * (mu + 1) + n);
            out.insert(base + 2 * mu * mu + 2 * n);
        }
    } else {
        let base = (n * n + 1) / 2;
        for mu in 0..=(n - 3) / 2 {
            out.insert(base + 2 * mu * (mu + 1));
            out.insert(base + 2 * mu * mu + n - 1);
            out.insert(base + 2 * mu * (mu + 2) + n + 1);
            out.insert(base + 2 * mu * (mu + 1) + 2 * n);
        }
    }
    out
}

/// Compact and non-compact dimensions among the values realizable by
/// bounded domains with `C¹`-smooth boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothBounded {
    pub compact: DimSet,
    pub noncompact: DimSet,
}

/// Splits the smooth-bounded values of `n` (at least two blocks, at most
/// one marked block, value at most `n² - 2`) into compact values
/// `C(n) = Ĉ(n) \ {n²}` and the remaining non-compact ones.
///
/// The non-compact set is found by enumerating single-marked partitions,
/// independently of the table's recurrence, so it can be compared with
/// [`DimTable::big_h_set`].
pub fn smooth_bounded_sets(n: u32, table: &DimTable) -> Result<SmoothBounded> {
    let hi = table.n_max().saturating_sub(1);
    if n < 2 || n > hi {
        return Err(Error::OutOfRange {
            what: "n for smooth-bounded sets",
            got: n.into(),
            lo: 2,
            hi: hi.into(),
        });
    }
    check_omega_scale(n)?;
    let compact = table.compact_set(n)?;
    let cap = u64::from(n) * u64::from(n) - 2;
    let mut single = DimSet::new(n);
    for len in 2..=n {
        let mut it = enumerate_partitions_with_length(n, len);
        while let Some(parts) = it.next_parts() {
            let sq = sum_of_squares(parts);
            for (v, _) in distinct_of(parts) {
                let value = sq + 2 * u64::from(v);
                if value <= cap {
                    single.insert(value);
                }
            }
        }
    }
    Ok(SmoothBounded {
        noncompact: single.difference(&compact),
        compact,
    })
}

/// Membership table for `Ω(n)`: every value of the form
/// `Σ nᵢ² + 2 Σ_{marked} nⱼ`, any number of marks.
///
/// Built by the same shift-or recurrence as [`DimTable`], except that a new
/// part `d` contributes either `d²` or `d² + 2d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralTable {
    sets: Vec<DimSet>,
}

impl GeneralTable {
    pub fn build(n_max: u32, memory_limit: u64) -> Result<Self> {
        let required: u64 = (0..=n_max)
            .map(|m| words_for(general_bits(m)) as u64 * 8)
            .sum();
        if required > memory_limit {
            return Err(Error::MemoryLimit {
                n_max,
                required,
                limit: memory_limit,
            });
        }
        let mut sets = Vec::with_capacity(n_max as usize + 1);
        let mut zero = DimSet::with_max(0, 0);
        zero.set_bit(0);
        sets.push(zero);
        for m in 1..=n_max {
            let mm = u64::from(m);
            let mut acc = DimSet::with_max(m, mm * mm + 2 * mm);
            for d in 1..=m {
                let src: &DimSet = &sets[(m - d) as usize];
                acc.or_shifted(src, part_shift(d));
                acc.or_shifted(src, part_shift(d) + d as usize);
            }
            sets.push(acc);
        }
        Ok(Self { sets })
    }

    pub fn n_max(&self) -> u32 {
        (self.sets.len() - 1) as u32
    }

    /// `Ω(n)` as a packed set over `n..=n² + 2n`.
    pub fn set(&self, n: u32) -> Option<&DimSet> {
        self.sets.get(n as usize)
    }

    pub fn contains(&self, n: u32, value: u64) -> bool {
        self.set(n).is_some_and(|s| s.contains(value))
    }
}

fn general_bits(m: u32) -> usize {
    let m = m as usize;
    (m * m + m) / 2 + 1
}
