//! Fixed-width bitmask subsets of a ground set `{0, .., n-1}`.

use core::fmt;
use core::ops::{BitAnd, BitOr, Sub};

const WORDS: usize = 4;

/// Largest ground set a [`Subset`] can address.
pub const MAX_ELEMENTS: usize = WORDS * 64;

/// A subset of `{0, .., MAX_ELEMENTS - 1}` stored as a multi-word bitmask.
///
/// Ground sets of up to 64 elements only ever touch the first word, so the
/// common case costs a single `u64` operation per union or popcount.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Subset {
    words: [u64; WORDS],
}

impl Subset {
    pub const fn empty() -> Self {
        Subset { words: [0; WORDS] }
    }

    /// Interprets `mask` as a subset of the first 64 elements (bit `i` is element `i`).
    pub const fn from_mask(mask: u64) -> Self {
        let mut words = [0; WORDS];
        words[0] = mask;
        Subset { words }
    }

    /// The full ground set `{0, .., n-1}`.
    ///
    /// # Panics
    /// If `n > MAX_ELEMENTS`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} elements exceeds {MAX_ELEMENTS}");
        let mut words = [0; WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        Subset { words }
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_ELEMENTS, "element {i} out of range");
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_ELEMENTS {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn contains(&self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
        Subset { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w &= o;
        }
        Subset { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        Subset { words }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// The low 64 elements as a mask; `None` if any higher element is present.
    pub fn to_mask(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Elements {
        Elements { words: self.words, word: 0 }
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Self) -> Subset {
        self.union(&rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Self) -> Subset {
        self.intersection(&rhs)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Self) -> Subset {
        self.difference(&rhs)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Elements {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for &Subset {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// The ground set `{0, .., n-1}` of a set function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self, crate::Error> {
        if size > MAX_ELEMENTS {
            return Err(crate::Error::Unsupported(alloc::format!(
                "ground set of {size} elements exceeds the {MAX_ELEMENTS}-element limit"
            )));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size)
    }

    pub fn contains(&self, set: &Subset) -> bool {
        set.is_subset_of(&self.full())
    }
}
