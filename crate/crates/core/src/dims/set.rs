use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Number of bit positions needed for the sums of squares over partitions
/// of `n`: values `n, n + 2, .., n²`.
pub const fn bit_length(n: u32) -> usize {
    if n == 0 {
        1
    } else {
        let n = n as usize;
        (n * n - n) / 2 + 1
    }
}

pub(crate) const fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A set of dimension values sharing the parity of a base `n`, packed one
/// bit per candidate: bit `j` stands for the value `n + 2j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DimSet {
    n: u32,
    len: usize,
    words: Vec<u64>,
}

impl DimSet {
    /// Empty set over the candidate range `n..=n²` used by the
    /// sums-of-squares sets.
    pub fn new(n: u32) -> Self {
        Self::with_bits(n, bit_length(n))
    }

    /// Empty set over the candidate range `n..=max_value` (same parity as
    /// `n`). Used for the general dimension sets, which reach `n² + 2n`.
    pub fn with_max(n: u32, max_value: u64) -> Self {
        let bits = if max_value < u64::from(n) {
            0
        } else {
            ((max_value - u64::from(n)) / 2 + 1) as usize
        };
        Self::with_bits(n, bits)
    }

    fn with_bits(n: u32, len: usize) -> Self {
        Self {
            n,
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Rebuilds a set from packed words. Padding bits must be zero.
    pub fn from_words(n: u32, len: usize, words: Vec<u64>) -> Result<Self> {
        if words.len() != words_for(len) {
            return Err(Error::InvalidSet(format!(
                "expected {} words for {len} bits, got {}",
                words_for(len),
                words.len()
            )));
        }
        let set = Self { n, len, words };
        if !set.padding_is_zero() {
            return Err(Error::InvalidSet("non-zero padding bits".into()));
        }
        Ok(set)
    }

    pub fn from_values(n: u32, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::new(n);
        for v in values {
            if !set.insert(v) {
                return Err(Error::OutOfRange {
                    what: "value",
                    got: v,
                    lo: u64::from(n),
                    hi: set.max_candidate(),
                });
            }
        }
        Ok(set)
    }

    pub(crate) fn padding_is_zero(&self) -> bool {
        let rem = self.len % 64;
        match (rem, self.words.last()) {
            (0, _) | (_, None) => true,
            (rem, Some(&last)) => last >> rem == 0,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of bit positions (candidates), not the number of members.
    pub fn bit_len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn value_at(&self, index: usize) -> u64 {
        u64::from(self.n) + 2 * index as u64
    }

    pub fn max_candidate(&self) -> u64 {
        self.value_at(self.len.saturating_sub(1))
    }

    /// Bit index of `value`, if it is a candidate of this set.
    pub fn index_of(&self, value: u64) -> Option<usize> {
        let n = u64::from(self.n);
        if value < n || (value - n) % 2 != 0 {
            return None;
        }
        let j = ((value - n) / 2) as usize;
        (j < self.len).then_some(j)
    }

    pub fn test_bit(&self, index: usize) -> bool {
        index < self.len && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn set_bit(&mut self, index: usize) {
        assert!(index < self.len, "bit {index} out of range {}", self.len);
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn clear_bit(&mut self, index: usize) {
        if index < self.len {
            self.words[index / 64] &= !(1 << (index % 64));
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        self.index_of(value).is_some_and(|j| self.test_bit(j))
    }

    /// Returns false if `value` is not a candidate of this set.
    pub fn insert(&mut self, value: u64) -> bool {
        match self.index_of(value) {
            Some(j) => {
                self.set_bit(j);
                true
            }
            None => false,
        }
    }

    pub fn remove(&mut self, value: u64) {
        if let Some(j) = self.index_of(value) {
            self.clear_bit(j);
        }
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min(&self) -> Option<u64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<u64> {
        let (i, w) = self
            .words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)?;
        Some(self.value_at(i * 64 + 63 - w.leading_zeros() as usize))
    }

    pub fn to_btree(&self) -> BTreeSet<u64> {
        self.iter().collect()
    }

    /// ORs `src << shift` (in bit positions) into `self`. Bits shifted past
    /// the end of `self` are dropped.
    pub fn or_shifted(&mut self, src: &DimSet, shift: usize) {
        or_shifted_words(&mut self.words, &src.words, shift);
        self.mask_padding();
    }

    pub(crate) fn mask_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Members of `self` not in `other`. Both sets must share base and
    /// candidate range.
    pub fn difference(&self, other: &DimSet) -> DimSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union(&self, other: &DimSet) -> DimSet {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &DimSet, op: impl Fn(u64, u64) -> u64) -> DimSet {
        assert_eq!(
            (self.n, self.len),
            (other.n, other.len),
            "set operation on incompatible ranges"
        );
        DimSet {
            n: self.n,
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

/// `dst |= src << shift`, word-wise. `shift` counts bits.
pub(crate) fn or_shifted_words(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    if word_shift >= dst.len() {
        return;
    }
    let span = src.len().min(dst.len() - word_shift);
    let dst = &mut dst[word_shift..];
    if bit_shift == 0 {
        for (d, &s) in dst.iter_mut().zip(&src[..span]) {
            *d |= s;
        }
        return;
    }
    let back = 64 - bit_shift;
    let mut carry = 0u64;
    for (d, &s) in dst.iter_mut().zip(&src[..span]) {
        *d |= (s << bit_shift) | carry;
        carry = s >> back;
    }
    if carry != 0 {
        if let Some(d) = dst.get_mut(span) {
            *d |= carry;
        }
    }
}

impl fmt::Debug for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DimSet(n={}) ", self.n)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    set: &'a DimSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.set.value_at(self.word * 64 + tz));
            }
            self.word += 1;
            self.bits = *self.set.words.get(self.word)?;
        }
    }
}

impl<'a> IntoIterator for &'a DimSet {
    type Item = u64;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lengths() {
        assert_eq!(bit_length(0), 1);
        assert_eq!(bit_length(1), 1);
        assert_eq!(bit_length(4), 7);
        assert_eq!(bit_length(1000), 499_501);
    }

    #[test]
    fn membership_respects_parity_and_range() {
        let mut s = DimSet::new(4);
        assert!(s.insert(4));
        assert!(s.insert(16));
        assert!(!s.insert(5));
        assert!(!s.insert(18));
        assert!(!s.insert(2));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![4, 16]);
        assert_eq!(s.min(), Some(4));
        assert_eq!(s.max(), Some(16));
        assert_eq!(s.count(), 2);
        s.remove(16);
        assert_eq!(s.max(), Some(4));
    }

    #[test]
    fn padding_check() {
        assert!(DimSet::from_words(4, 7, vec![1 << 6]).is_ok());
        assert!(DimSet::from_words(4, 7, vec![1 << 7]).is_err());
        assert!(DimSet::from_words(4, 7, vec![0, 0]).is_err());
    }

    fn naive_or_shifted(dst: &mut [bool], src: &[bool], shift: usize) {
        for (i, &b) in src.iter().enumerate() {
            if b && i + shift < dst.len() {
                dst[i + shift] = true;
            }
        }
    }

    proptest! {
        #[test]
        fn shift_or_matches_bit_by_bit(
            src in proptest::collection::vec(any::<bool>(), 0..300),
            dst in proptest::collection::vec(any::<bool>(), 1..400),
            shift in 0usize..300,
        ) {
            let pack = |bits: &[bool]| {
                let mut w = vec![0u64; words_for(bits.len())];
                for (i, &b) in bits.iter().enumerate() {
                    if b { w[i / 64] |= 1 << (i % 64); }
                }
                w
            };
            let src_set = DimSet::from_words(0, src.len(), pack(&src)).unwrap();
            let mut dst_set = DimSet::from_words(0, dst.len(), pack(&dst)).unwrap();
            dst_set.or_shifted(&src_set, shift);

            let mut expect = dst.clone();
            naive_or_shifted(&mut expect, &src, shift);
            prop_assert_eq!(dst_set.words(), &pack(&expect)[..]);
        }
    }
}
