use rayon::prelude::*;

use super::set::{bit_length, or_shifted_words, words_for, DimSet};
use crate::error::{Error, Result};

pub const DEFAULT_MEMORY_LIMIT: u64 = 2 << 30;

/// Below this `n` a single sweep beats splitting work across threads.
const PARALLEL_MIN_N: u32 = 192;

/// Bytes of packed storage held by a table covering `0..=n_max`.
pub fn projected_bytes(n_max: u32) -> u64 {
    (0..=n_max)
        .map(|k| words_for(bit_length(k)) as u64 * 8)
        .sum()
}

/// Index shift that translates a sums-of-squares set of `i` into the set of
/// `n` when a new part `d = n - i` is added: value `v + d²` lands at bit
/// `(v - i) / 2 + (d² - d) / 2`.
pub(crate) const fn part_shift(d: u32) -> usize {
    let d = d as usize;
    (d * d - d) / 2
}

/// The sums-of-squares sets `Ĉ(0), .., Ĉ(n_max)` together with their sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    sets: Vec<DimSet>,
    counts: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct TableBuilder {
    memory_limit: u64,
    parallel: bool,
}

impl Default for TableBuilder {
    fn default() -> Self {
        Self {
            memory_limit: DEFAULT_MEMORY_LIMIT,
            parallel: true,
        }
    }
}

impl TableBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memory_limit(mut self, bytes: u64) -> Self {
        self.memory_limit = bytes;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn build(&self, n_max: u32) -> Result<DimTable> {
        let required = projected_bytes(n_max);
        if required > self.memory_limit {
            return Err(Error::MemoryLimit {
                n_max,
                required,
                limit: self.memory_limit,
            });
        }
        let mut sets: Vec<DimSet> = Vec::with_capacity(n_max as usize + 1);
        let mut zero = DimSet::new(0);
        zero.set_bit(0);
        sets.push(zero);

        for n in 1..=n_max {
            let set = if self.parallel && n >= PARALLEL_MIN_N {
                next_set_parallel(&sets, n)
            } else {
                next_set(&sets, n)
            };
            sets.push(set);
        }
        Ok(DimTable::from_sets_unchecked(sets))
    }
}

/// `Ĉ(n) = ⋃_{0 ≤ i < n} (Ĉ(i) + (n - i)²)`, accumulated from `i = n - 1`
/// down to 0.
fn next_set(prev: &[DimSet], n: u32) -> DimSet {
    let mut acc = DimSet::new(n);
    for i in (0..n).rev() {
        acc.or_shifted(&prev[i as usize], part_shift(n - i));
    }
    acc
}

fn next_set_parallel(prev: &[DimSet], n: u32) -> DimSet {
    let words = words_for(bit_length(n));
    let acc = prev[..n as usize]
        .par_iter()
        .enumerate()
        .with_min_len(32)
        .fold(
            || vec![0u64; words],
            |mut acc, (i, src)| {
                or_shifted_words(&mut acc, src.words(), part_shift(n - i as u32));
                acc
            },
        )
        .reduce(
            || vec![0u64; words],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x |= y;
                }
                a
            },
        );
    let mut set = DimSet::new(n);
    set.words_mut().copy_from_slice(&acc);
    set.mask_padding();
    set
}

/// Builds `Ĉ(0), .., Ĉ(n_max)` with the default builder settings.
pub fn build_table(n_max: u32, memory_limit: u64) -> Result<DimTable> {
    TableBuilder::new().memory_limit(memory_limit).build(n_max)
}

impl DimTable {
    fn from_sets_unchecked(sets: Vec<DimSet>) -> Self {
        let counts = sets.iter().map(DimSet::count).collect();
        Self { sets, counts }
    }

    /// Assembles a table from already-built sets; set `k` must have base `k`
    /// and the standard bit length.
    pub fn from_sets(sets: Vec<DimSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidSet("a table holds at least Ĉ(0)".into()));
        }
        for (k, set) in sets.iter().enumerate() {
            if set.n() as usize != k || set.bit_len() != bit_length(k as u32) {
                return Err(Error::InvalidSet(format!(
                    "set {k} has base {} and {} bits",
                    set.n(),
                    set.bit_len()
                )));
            }
        }
        Ok(Self::from_sets_unchecked(sets))
    }

    pub fn n_max(&self) -> u32 {
        (self.sets.len() - 1) as u32
    }

    pub fn sets(&self) -> &[DimSet] {
        &self.sets
    }

    /// `Ĉ(n)`, the sums of squares over all partitions of `n`.
    pub fn set(&self, n: u32) -> Result<&DimSet> {
        self.sets.get(n as usize).ok_or(Error::OutOfRange {
            what: "n",
            got: n.into(),
            lo: 0,
            hi: self.n_max().into(),
        })
    }

    /// `ĉ(n) = |Ĉ(n)|`, defined for every `n` in the table.
    pub fn c_hat(&self, n: u32) -> Result<u64> {
        self.set(n)?;
        Ok(self.counts[n as usize])
    }

    /// Number of compact dimensions, `c(n) = ĉ(n) - 1`, for `n ≥ 2`.
    pub fn c_of(&self, n: u32) -> Result<u64> {
        self.check_range("n for c(n)", n, self.n_max())?;
        Ok(self.counts[n as usize] - 1)
    }

    /// Number of non-compact dimensions, `h(n) = c(n + 1) - c(n) - 1`.
    pub fn h_of(&self, n: u32) -> Result<u64> {
        self.check_range("n for h(n)", n, self.n_max().saturating_sub(1))?;
        Ok(self.counts[n as usize + 1] - self.counts[n as usize] - 1)
    }

    /// `c(n)` for `n = 2..=n_max`.
    pub fn c_values(&self) -> Vec<(u32, u64)> {
        (2..=self.n_max())
            .map(|n| (n, self.counts[n as usize] - 1))
            .collect()
    }

    /// `h(n)` for `n = 2..n_max`.
    pub fn h_values(&self) -> Vec<(u32, u64)> {
        (2..self.n_max())
            .map(|n| (n, self.h_of(n).expect("in range")))
            .collect()
    }

    fn check_range(&self, what: &'static str, n: u32, hi: u32) -> Result<()> {
        if n < 2 || n > hi {
            return Err(Error::OutOfRange {
                what,
                got: n.into(),
                lo: 2,
                hi: hi.into(),
            });
        }
        Ok(())
    }

    /// `C(n) = Ĉ(n) \ {n²}`.
    pub fn compact_set(&self, n: u32) -> Result<DimSet> {
        self.check_range("n for C(n)", n, self.n_max())?;
        let mut set = self.sets[n as usize].clone();
        set.remove(u64::from(n) * u64::from(n));
        Ok(set)
    }

    /// `H(n) = (C(n + 1) - 1) \ (C(n) ∪ {n²})`.
    ///
    /// Shifting every value of `Ĉ(n + 1)` down by one keeps its bit index,
    /// so the translation is a truncation to the bit range of `n`, which also
    /// drops `(n + 1)²`.
    pub fn big_h_set(&self, n: u32) -> Result<DimSet> {
        self.check_range("n for H(n)", n, self.n_max().saturating_sub(1))?;
        let here = &self.sets[n as usize];
        let next = &self.sets[n as usize + 1];
        let len = bit_length(n);
        let mut words: Vec<u64> = next.words()[..words_for(len)].to_vec();
        for (w, &h) in words.iter_mut().zip(here.words()) {
            *w &= !h;
        }
        let mut set = DimSet::new(n);
        set.words_mut().copy_from_slice(&words);
        set.mask_padding();
        Ok(set)
    }

    /// Packed storage in bytes.
    pub fn storage_bytes(&self) -> u64 {
        self.sets.iter().map(|s| s.words().len() as u64 * 8).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(set: &DimSet) -> Vec<u64> {
        set.iter().collect()
    }

    #[test]
    fn small_sets() {
        let t = build_table(5, DEFAULT_MEMORY_LIMIT).unwrap();
        assert_eq!(values(t.set(0).unwrap()), vec![0]);
        assert_eq!(values(t.set(1).unwrap()), vec![1]);
        assert_eq!(values(t.set(2).unwrap()), vec![2, 4]);
        assert_eq!(values(t.set(4).unwrap()), vec![4, 6, 8, 10, 16]);
        assert_eq!(values(t.set(5).unwrap()), vec![5, 7, 9, 11, 13, 17, 25]);
    }

    #[test]
    fn counts_and_h() {
        let t = build_table(5, DEFAULT_MEMORY_LIMIT).unwrap();
        assert_eq!(t.c_of(4).unwrap(), 4);
        assert_eq!(t.h_of(4).unwrap(), 1);
        assert_eq!(values(&t.big_h_set(4).unwrap()), vec![12]);
        // C(3) - 1 = {2, 4} = C(2) ∪ {4}.
        assert!(t.big_h_set(2).unwrap().is_empty());
        assert_eq!(t.h_of(2).unwrap(), 0);
    }

    #[test]
    fn range_errors() {
        let t = build_table(5, DEFAULT_MEMORY_LIMIT).unwrap();
        assert!(matches!(t.c_of(1), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.c_of(6), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.h_of(5), Err(Error::OutOfRange { .. })));
        assert!(t.big_h_set(5).is_err());
        assert!(t.c_of(5).is_ok());
    }

    #[test]
    fn zero_table() {
        let t = build_table(0, DEFAULT_MEMORY_LIMIT).unwrap();
        assert_eq!(t.n_max(), 0);
        assert_eq!(values(t.set(0).unwrap()), vec![0]);
    }

    #[test]
    fn memory_refusal_happens_before_building() {
        let err = build_table(1000, 1 << 20).unwrap_err();
        match err {
            Error::MemoryLimit { required, .. } => assert_eq!(required, projected_bytes(1000)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let seq = TableBuilder::new().parallel(false).build(260).unwrap();
        let par = TableBuilder::new().parallel(true).build(260).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn known_table_rows() {
        let t = build_table(101, DEFAULT_MEMORY_LIMIT).unwrap();
        assert_eq!(t.c_of(20).unwrap(), 117);
        assert_eq!(t.h_of(20).unwrap(), 11);
        assert_eq!(t.c_of(100).unwrap(), 3880);
        assert_eq!(t.h_of(100).unwrap(), 81);
    }
}
