use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use super::{Model, MAX_MODELS};

const WORDS: usize = MAX_MODELS / 64;

/// A set of models as a fixed-width bitmask (bit `i` = model with index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ModelSet {
    words: [u64; WORDS],
}

impl ModelSet {
    pub const fn empty() -> Self {
        ModelSet { words: [0; WORDS] }
    }

    /// All models with index below `n_models`.
    pub fn full(n_models: usize) -> Self {
        assert!(n_models <= MAX_MODELS, "at most {MAX_MODELS} models");
        let mut s = ModelSet::empty();
        let whole = n_models / 64;
        for w in s.words.iter_mut().take(whole) {
            *w = u64::MAX;
        }
        let rest = n_models % 64;
        if rest > 0 {
            s.words[whole] = (1u64 << rest) - 1;
        }
        s
    }

    pub fn singleton(m: Model) -> Self {
        let mut s = ModelSet::empty();
        s.insert(m);
        s
    }

    /// Builds a set from the low 64 models encoded as a bitmask.
    pub fn from_bits(bits: u64) -> Self {
        let mut s = ModelSet::empty();
        s.words[0] = bits;
        s
    }

    /// The membership bits of models `0..64`.
    pub fn low_bits(&self) -> u64 {
        self.words[0]
    }

    pub fn insert(&mut self, m: Model) {
        let i = m.index();
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, m: Model) {
        let i = m.index();
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, m: Model) -> bool {
        let i = m.index();
        i < MAX_MODELS && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Models in increasing index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words[0],
        }
    }

    fn zip_with(self, other: ModelSet, f: impl Fn(u64, u64) -> u64) -> ModelSet {
        let mut out = ModelSet::empty();
        for (i, w) in out.words.iter_mut().enumerate() {
            *w = f(self.words[i], other.words[i]);
        }
        out
    }
}

impl BitAnd for ModelSet {
    type Output = ModelSet;
    fn bitand(self, rhs: ModelSet) -> ModelSet {
        self.zip_with(rhs, |a, b| a & b)
    }
}

impl BitOr for ModelSet {
    type Output = ModelSet;
    fn bitor(self, rhs: ModelSet) -> ModelSet {
        self.zip_with(rhs, |a, b| a | b)
    }
}

impl BitXor for ModelSet {
    type Output = ModelSet;
    fn bitxor(self, rhs: ModelSet) -> ModelSet {
        self.zip_with(rhs, |a, b| a ^ b)
    }
}

impl Sub for ModelSet {
    type Output = ModelSet;
    fn sub(self, rhs: ModelSet) -> ModelSet {
        self.zip_with(rhs, |a, b| a & !b)
    }
}

impl FromIterator<Model> for ModelSet {
    fn from_iter<I: IntoIterator<Item = Model>>(iter: I) -> Self {
        let mut s = ModelSet::empty();
        for m in iter {
            s.insert(m);
        }
        s
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|m| m.index())).finish()
    }
}

pub struct Iter<'a> {
    set: &'a ModelSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(Model::new(self.word * 64 + tz));
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ModelSet {
    type Item = Model;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sets_respect_word_boundaries() {
        assert_eq!(ModelSet::full(0).len(), 0);
        assert_eq!(ModelSet::full(4).low_bits(), 0b1111);
        assert_eq!(ModelSet::full(64).len(), 64);
        assert_eq!(ModelSet::full(1024).len(), 1024);
        assert!(ModelSet::full(100).contains(Model::new(99)));
        assert!(!ModelSet::full(100).contains(Model::new(100)));
    }

    #[test]
    fn iteration_is_increasing_across_words() {
        let s: ModelSet = [700, 3, 64, 63].into_iter().map(Model::new).collect();
        let got: Vec<usize> = s.iter().map(|m| m.index()).collect();
        assert_eq!(got, vec![3, 63, 64, 700]);
    }

    #[test]
    fn set_algebra() {
        let a = ModelSet::from_bits(0b1100);
        let b = ModelSet::from_bits(0b1010);
        assert_eq!((a & b).low_bits(), 0b1000);
        assert_eq!((a | b).low_bits(), 0b1110);
        assert_eq!((a - b).low_bits(), 0b0100);
        assert_eq!((a ^ b).low_bits(), 0b0110);
        assert!((a & b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.intersects(&b));
    }
}
