//! Set partitions of a ground set and their refinement order.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::subset::Subset;
use crate::{Error, Result};

/// A partition of `{0, .., n-1}` into disjoint non-empty blocks.
///
/// Blocks are kept in canonical order, sorted by their smallest element, so
/// two partitions are equal exactly when they have the same blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Subset>,
}

impl Partition {
    /// Validates and canonicalizes a list of blocks over `{0, .., n-1}`.
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        let full = Subset::full(n);
        let mut seen = Subset::empty();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("partition contains an empty block".into()));
            }
            if !b.is_subset_of(&full) {
                return Err(Error::Domain(format!("block {b:?} is not within a ground set of size {n}")));
            }
            if !b.is_disjoint(&seen) {
                return Err(Error::Domain(format!("block {b:?} overlaps another block")));
            }
            seen = seen | *b;
        }
        if seen != full {
            return Err(Error::Domain(format!("blocks do not cover the ground set of size {n}")));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    /// The finest partition `{{0}, .., {n-1}}`.
    pub fn singletons(n: usize) -> Self {
        Partition { n, blocks: (0..n).map(Subset::singleton).collect() }
    }

    /// The one-block partition `{V}`.
    pub fn trivial(n: usize) -> Self {
        let blocks = if n == 0 { Vec::new() } else { alloc::vec![Subset::full(n)] };
        Partition { n, blocks }
    }

    /// Builds a partition from a block label per element (labels need not be contiguous).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<(usize, Subset)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match blocks.iter_mut().find(|(label, _)| *label == l) {
                Some((_, b)) => b.insert(i),
                None => blocks.push((l, Subset::singleton(i))),
            }
        }
        let mut blocks: Vec<Subset> = blocks.into_iter().map(|(_, b)| b).collect();
        blocks.sort_by_key(|b| b.first());
        Partition { n: labels.len(), blocks }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding element `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(i))
    }

    /// Blocks with more than one element.
    pub fn non_singletons(&self) -> impl Iterator<Item = &Subset> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }

    /// `self ⪯ other`: every block of `self` lies inside some block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.n == other.n
            && self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.is_subset_of(c)))
    }

    /// Refinement as a partial order; `Less` means `self` is strictly finer.
    pub fn compare_refinement(&self, other: &Partition) -> Option<Ordering> {
        match (self.refines(other), other.refines(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// Merges groups of blocks; `groups` lists block indices and must cover every block once.
    pub fn coarsen(&self, groups: &[Vec<usize>]) -> Result<Partition> {
        let blocks = groups
            .iter()
            .map(|g| g.iter().fold(Subset::empty(), |acc, &i| acc | self.blocks[i]))
            .collect();
        Partition::new(self.n, blocks)
    }
}

impl core::fmt::Debug for Partition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.blocks.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(elems: &[usize]) -> Subset {
        elems.iter().copied().collect()
    }

    #[test]
    fn canonical_order_by_minimum() {
        let p = Partition::new(4, vec![s(&[3]), s(&[1, 2]), s(&[0])]).unwrap();
        assert_eq!(p.blocks(), &[s(&[0]), s(&[1, 2]), s(&[3])]);
        assert_eq!(p, Partition::from_labels(&[7, 1, 1, 9]));
    }

    #[test]
    fn rejects_malformed_blocks() {
        assert!(Partition::new(3, vec![s(&[0, 1]), s(&[1, 2])]).is_err());
        assert!(Partition::new(3, vec![s(&[0, 1])]).is_err());
        assert!(Partition::new(3, vec![s(&[0, 1, 2]), Subset::empty()]).is_err());
        assert!(Partition::new(2, vec![s(&[0, 1, 2])]).is_err());
    }

    #[test]
    fn refinement_order() {
        let fine = Partition::singletons(3);
        let mid = Partition::from_labels(&[0, 0, 1]);
        let other = Partition::from_labels(&[0, 1, 1]);
        let coarse = Partition::trivial(3);
        assert_eq!(fine.compare_refinement(&mid), Some(Ordering::Less));
        assert_eq!(coarse.compare_refinement(&mid), Some(Ordering::Greater));
        assert_eq!(mid.compare_refinement(&other), None);
        assert_eq!(mid.compare_refinement(&mid.clone()), Some(Ordering::Equal));
    }

    #[test]
    fn coarsen_groups_blocks() {
        let p = Partition::singletons(4);
        let q = p.coarsen(&[vec![0, 2], vec![1], vec![3]]).unwrap();
        assert_eq!(q, Partition::from_labels(&[0, 1, 0, 2]));
        assert_eq!(q.non_singletons().count(), 1);
    }
}
