//! Integer partitions and the per-partition statistics used throughout the
//! crate: sum of squares, dimension value of a marked partition, and the
//! Young-diagram arm count.
//!
//! Partitions are streamed in reverse-lexicographic order on their
//! non-increasing part sequences, so `(n)` comes first and `(1, .., 1)` last.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A partition of `n` with parts stored in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .ok_or_else(|| Error::InvalidPartition("sum overflows u32".into()))?;
        Ok(Self { parts, n })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            n: 0,
        }
    }

    fn from_sorted(parts: &[u32]) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self {
            n: parts.iter().sum(),
            parts: parts.to_vec(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Distinct part values with multiplicities, largest value first.
    pub fn distinct_parts(&self) -> Vec<(u32, u32)> {
        distinct_of(&self.parts)
    }

    pub fn sum_of_squares(&self) -> u64 {
        sum_of_squares(&self.parts)
    }

    /// Total number of arms in the Young diagram.
    pub fn arm_count(&self) -> u64 {
        self.parts
            .iter()
            .map(|&p| u64::from(p) * u64::from(p.saturating_sub(1)) / 2)
            .sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

pub fn sum_of_squares(parts: &[u32]) -> u64 {
    parts.iter().map(|&p| u64::from(p) * u64::from(p)).sum()
}

/// A partition together with a sub-multiset of marked parts. Each marked
/// part `v` adds `2v` to the dimension value.
///
/// Marks are kept per distinct part value, so two markings that differ only
/// by which copy of a repeated part is chosen are the same marking.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedPartition {
    partition: Partition,
    /// `(value, marked copies)`, aligned with `partition.distinct_parts()`.
    marks: Vec<(u32, u32)>,
}

impl MarkedPartition {
    /// `marks` lists `(part value, number of marked copies)`; values not
    /// mentioned are unmarked.
    pub fn new(partition: Partition, marks: &[(u32, u32)]) -> Result<Self> {
        let mut aligned: Vec<(u32, u32)> = partition
            .distinct_parts()
            .into_iter()
            .map(|(v, _)| (v, 0))
            .collect();
        let distinct = partition.distinct_parts();
        for &(value, count) in marks {
            let Some(i) = distinct.iter().position(|&(v, _)| v == value) else {
                return Err(Error::InvalidMarking(format!(
                    "part {value} does not occur in {partition}"
                )));
            };
            aligned[i].1 += count;
            if aligned[i].1 > distinct[i].1 {
                return Err(Error::InvalidMarking(format!(
                    "{} marks on part {value}, which occurs {} times in {partition}",
                    aligned[i].1, distinct[i].1
                )));
            }
        }
        Ok(Self {
            partition,
            marks: aligned,
        })
    }

    pub fn unmarked(partition: Partition) -> Self {
        let marks = partition
            .distinct_parts()
            .into_iter()
            .map(|(v, _)| (v, 0))
            .collect();
        Self { partition, marks }
    }

    pub fn fully_marked(partition: Partition) -> Self {
        let marks = partition.distinct_parts();
        Self { partition, marks }
    }

    /// Trusted constructor for enumeration code; `marks` must be aligned.
    pub(crate) fn from_aligned(partition: Partition, marks: Vec<(u32, u32)>) -> Self {
        debug_assert_eq!(marks.len(), partition.distinct_parts().len());
        Self { partition, marks }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Marked copies per distinct value, largest value first.
    pub fn marks(&self) -> &[(u32, u32)] {
        &self.marks
    }

    /// Number of marked parts, counted with multiplicity.
    pub fn mark_count(&self) -> u32 {
        self.marks.iter().map(|&(_, c)| c).sum()
    }

    pub fn marked_sum(&self) -> u64 {
        self.marks
            .iter()
            .map(|&(v, c)| u64::from(v) * u64::from(c))
            .sum()
    }

    pub fn dimension_value(&self) -> u64 {
        self.partition.sum_of_squares() + 2 * self.marked_sum()
    }

    /// Block positions (0-based, in part order) that carry a mark. Marked
    /// copies of a repeated value are assigned to its leftmost blocks.
    pub fn marked_blocks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pos = 0;
        for (&(_, mult), &(_, marked)) in self
            .partition
            .distinct_parts()
            .iter()
            .zip(self.marks.iter())
        {
            out.extend(pos..pos + marked as usize);
            pos += mult as usize;
        }
        out
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} marks=[", self.partition)?;
        let mut first = true;
        for &(v, c) in self.marks.iter().filter(|&&(_, c)| c > 0) {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}x{c}")?;
        }
        f.write_str("]")
    }
}

/// Reverse-lexicographic stream of all partitions of `n`.
///
/// `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: u32) -> Partitions {
    Partitions::new(n, n)
}

/// Partitions of `n` whose parts are all at most `max_part`, in the same
/// order as [`enumerate_partitions`].
pub fn enumerate_partitions_bounded(n: u32, max_part: u32) -> Partitions {
    Partitions::new(n, max_part)
}

/// Partitions of `n` with exactly `len` parts, in the same order as
/// [`enumerate_partitions`]. Degenerate lengths give an empty stream.
pub fn enumerate_partitions_with_length(n: u32, len: u32) -> PartitionsOfLength {
    if len == 0 || len > n {
        log::warn!("no partitions of {n} have exactly {len} parts");
    }
    PartitionsOfLength::new(n, len)
}

#[derive(Clone, Debug)]
pub struct Partitions {
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: u32, max_part: u32) -> Self {
        let mut current = Vec::new();
        let done = n > 0 && max_part == 0;
        if !done {
            fill_greedy(&mut current, n, max_part.min(n).max(1));
        }
        Self {
            current,
            started: false,
            done,
        }
    }

    /// Advances in place and returns the next partition's parts without
    /// allocating.
    pub fn next_parts(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        // Parts after the rightmost part > 1 are all ones.
        let Some(i) = self.current.iter().rposition(|&p| p > 1) else {
            self.done = true;
            return None;
        };
        let ones = (self.current.len() - i - 1) as u32;
        let v = self.current[i] - 1;
        self.current[i] = v;
        self.current.truncate(i + 1);
        fill_greedy(&mut self.current, ones + 1, v);
        Some(&self.current)
    }
}

fn fill_greedy(out: &mut Vec<u32>, mut remaining: u32, cap: u32) {
    while remaining > 0 {
        let p = remaining.min(cap);
        out.push(p);
        remaining -= p;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts().map(Partition::from_sorted)
    }
}

#[derive(Clone, Debug)]
pub struct PartitionsOfLength {
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl PartitionsOfLength {
    fn new(n: u32, len: u32) -> Self {
        if len == 0 || len > n {
            return Self {
                current: Vec::new(),
                started: false,
                done: true,
            };
        }
        // Largest in reverse-lex order: (n - len + 1, 1, .., 1).
        let mut current = vec![1; len as usize];
        current[0] = n - len + 1;
        Self {
            current,
            started: false,
            done: false,
        }
    }

    pub fn next_parts(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let len = self.current.len();
        let mut suffix: u32 = self.current[len - 1];
        for i in (0..len - 1).rev() {
            let cap = self.current[i] - 1;
            let slots = (len - 1 - i) as u32;
            let rem = suffix + 1;
            if cap >= 1 && rem >= slots && rem <= slots * cap {
                self.current[i] = cap;
                let mut rem = rem;
                for (k, slot) in self.current[i + 1..].iter_mut().enumerate() {
                    let left_after = slots - 1 - k as u32;
                    let p = cap.min(rem - left_after);
                    *slot = p;
                    rem -= p;
                }
                return Some(&self.current);
            }
            suffix += self.current[i];
        }
        self.done = true;
        None
    }
}

impl Iterator for PartitionsOfLength {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts().map(Partition::from_sorted)
    }
}

/// The set `{A(λ) : λ ⊢ n}` of total arm counts.
pub fn distinct_arm_values(n: u32) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut it = enumerate_partitions(n);
    while let Some(parts) = it.next_parts() {
        let sq = sum_of_squares(parts);
        out.insert((sq - u64::from(n)) / 2);
    }
    out
}

/// Every marking of `partition` (as sub-multisets) with exactly `marks`
/// marked parts, or all markings when `marks` is `None`.
pub(crate) fn for_each_marking(
    distinct: &[(u32, u32)],
    marks: Option<u32>,
    mut f: impl FnMut(&[(u32, u32)]),
) {
    let mut chosen: Vec<(u32, u32)> = distinct.iter().map(|&(v, _)| (v, 0)).collect();
    fn rec(
        idx: usize,
        left: Option<u32>,
        distinct: &[(u32, u32)],
        chosen: &mut Vec<(u32, u32)>,
        f: &mut dyn FnMut(&[(u32, u32)]),
    ) {
        if idx == distinct.len() {
            if left.unwrap_or(0) == 0 {
                f(chosen);
            }
            return;
        }
        let mult = distinct[idx].1;
        let hi = left.map_or(mult, |l| l.min(mult));
        for c in 0..=hi {
            chosen[idx].1 = c;
            rec(idx + 1, left.map(|l| l - c), distinct, chosen, f);
        }
        chosen[idx].1 = 0;
    }
    rec(0, marks, distinct, &mut chosen, &mut f);
}

pub(crate) fn distinct_of(parts: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All markings of `partition`, each yielded once.
pub fn markings(partition: &Partition) -> Vec<MarkedPartition> {
    let mut out = Vec::new();
    for_each_marking(&partition.distinct_parts(), None, |m| {
        out.push(MarkedPartition::from_aligned(partition.clone(), m.to_vec()));
    });
    out
}
