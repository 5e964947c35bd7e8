//! Set functions over `{0, .., n-1}` and the derived functions the clustering
//! algorithms evaluate: residual, fused and contracted forms.

use alloc::format;
use alloc::vec::Vec;

use crate::partition::Partition;
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest ground set for which [`check_submodular`] runs its pairwise check.
pub const MAX_SUBMODULARITY_CHECK: usize = 12;

/// Largest ground set [`tabulate`] will expand into a dense table.
pub const MAX_TABULATE: usize = 20;

/// A real-valued function on subsets of `{0, .., ground_size() - 1}`.
///
/// Implementations are expected to be pure; the algorithms call `value`
/// repeatedly and from several threads.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    /// Value at `set`. Callers guarantee `set` lies within the ground set.
    fn value(&self, set: &Subset) -> f64;
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, set: &Subset) -> f64 {
        (**self).value(set)
    }
}

/// `f(B) = Σ_{i∈B} w_i`.
#[derive(Clone, Debug)]
pub struct Modular {
    weights: Vec<f64>,
}

impl Modular {
    pub fn new(weights: Vec<f64>) -> Self {
        Modular { weights }
    }
}

impl SetFunction for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &Subset) -> f64 {
        set.iter().map(|i| self.weights[i]).sum()
    }
}

/// A set function given by its full value table, indexed by bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct TableFunction {
    n: usize,
    values: Vec<f64>,
}

impl TableFunction {
    /// `values[mask]` is the value at the subset with bit `i` set for each element `i`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Domain(format!("value table length {len} is not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_TABULATE {
            return Err(Error::Unsupported(format!("value table over {n} elements")));
        }
        Ok(TableFunction { n, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }
}

impl SetFunction for TableFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &Subset) -> f64 {
        let mask = set.to_mask().expect("table functions live on at most 64 elements");
        self.values[mask as usize]
    }
}

/// Dense value table of `f`, indexed by bitmask.
pub fn tabulate<F: SetFunction + ?Sized>(f: &F) -> Result<TableFunction> {
    let n = f.ground_size();
    if n > MAX_TABULATE {
        return Err(Error::Unsupported(format!("cannot tabulate a function on {n} elements")));
    }
    let values = (0..1u64 << n).map(|m| f.value(&Subset::from_mask(m))).collect();
    Ok(TableFunction { n, values })
}

/// The residual function `h_γ(B) = h(B) − γ` for non-empty `B`, and `0` at `∅`.
#[derive(Clone, Debug)]
pub struct Residual<F> {
    inner: F,
    gamma: f64,
}

impl<F: SetFunction> Residual<F> {
    pub fn new(inner: F, gamma: f64) -> Self {
        Residual { inner, gamma }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `h_γ[P] = Σ_{C∈P} (h(C) − γ)`.
    pub fn partition_cost(&self, partition: &Partition) -> f64 {
        partition_cost(&self.inner, partition, self.gamma)
    }
}

impl<F: SetFunction> SetFunction for Residual<F> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn value(&self, set: &Subset) -> f64 {
        if set.is_empty() {
            0.0
        } else {
            self.inner.value(set) - self.gamma
        }
    }
}

/// `Σ_{C∈P} (h(C) − γ)`, the objective of the Dilworth truncation.
pub fn partition_cost<F: SetFunction + ?Sized>(h: &F, partition: &Partition, gamma: f64) -> f64 {
    partition.blocks().iter().map(|b| h.value(b) - gamma).sum()
}

/// The function of the fused variables: part `i` of `parts` becomes element `i`,
/// and `B ↦ h(∪_{i∈B} C_i)`.
#[derive(Clone, Debug)]
pub struct Fused<F> {
    parent: F,
    parts: Vec<Subset>,
}

impl<F: SetFunction> Fused<F> {
    pub fn new(parent: F, parts: &Partition) -> Result<Self> {
        if parts.ground_size() != parent.ground_size() {
            return Err(Error::Domain(format!(
                "partition of {} elements does not match a function on {}",
                parts.ground_size(),
                parent.ground_size()
            )));
        }
        Ok(Fused { parent, parts: parts.blocks().to_vec() })
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    fn expand(&self, set: &Subset) -> Subset {
        set.iter().fold(Subset::empty(), |acc, i| acc | self.parts[i])
    }
}

impl<F: SetFunction> SetFunction for Fused<F> {
    fn ground_size(&self) -> usize {
        self.parts.len()
    }

    fn value(&self, set: &Subset) -> f64 {
        self.parent.value(&self.expand(set))
    }
}

/// The contracted function anchored at part `j` of a partition `{C_0, .., C_{k-1}}`:
///
/// `g_j(B) = h(C_j ∪ ∪_{i∈B} C_i) − h(C_j) − Σ_{i∈B} h(C_i)`
///
/// over the parts after the anchor. Local element `t` stands for part `j + 1 + t`.
/// The function is normalized and inherits submodularity from `h`.
#[derive(Clone, Debug)]
pub struct Contracted<'a, F: ?Sized> {
    parent: &'a F,
    anchor: usize,
    anchor_set: Subset,
    anchor_value: f64,
    parts: Vec<Subset>,
    part_values: Vec<f64>,
}

/// Builds the contracted function anchored at part `anchor` (0-based) of `parts`.
pub fn contracted<'a, F: SetFunction + ?Sized>(
    h: &'a F,
    parts: &Partition,
    anchor: usize,
) -> Result<Contracted<'a, F>> {
    let k = parts.len();
    if parts.ground_size() != h.ground_size() {
        return Err(Error::Domain(format!(
            "partition of {} elements does not match a function on {}",
            parts.ground_size(),
            h.ground_size()
        )));
    }
    if anchor + 1 >= k {
        return Err(Error::Domain(format!(
            "anchor {anchor} leaves an empty ground set among {k} parts"
        )));
    }
    let blocks = parts.blocks();
    let anchor_set = blocks[anchor];
    let rest: Vec<Subset> = blocks[anchor + 1..].to_vec();
    let part_values = rest.iter().map(|c| h.value(c)).collect();
    Ok(Contracted {
        parent: h,
        anchor,
        anchor_set,
        anchor_value: h.value(&anchor_set),
        parts: rest,
        part_values,
    })
}

impl<F: SetFunction + ?Sized> Contracted<'_, F> {
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    /// Index in the original partition of local element `t`.
    pub fn part_index(&self, local: usize) -> usize {
        self.anchor + 1 + local
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Contracted<'_, F> {
    fn ground_size(&self) -> usize {
        self.parts.len()
    }

    fn value(&self, set: &Subset) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let mut union = self.anchor_set;
        let mut separate = self.anchor_value;
        for t in set.iter() {
            union = union | self.parts[t];
            separate += self.part_values[t];
        }
        self.parent.value(&union) - separate
    }
}

/// A pair of subsets violating `f(A) + f(B) ≥ f(A∪B) + f(A∩B)` by more than the tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub first: Subset,
    pub second: Subset,
    /// `f(A∪B) + f(A∩B) − f(A) − f(B)`, positive.
    pub excess: f64,
}

/// Exhaustively checks submodularity over all pairs of subsets.
///
/// Returns `Ok(None)` if the inequality holds everywhere within `tol`, or the
/// first violating pair in mask order.
pub fn check_submodular<F: SetFunction + ?Sized>(f: &F, tol: f64) -> Result<Option<Violation>> {
    let n = f.ground_size();
    if n > MAX_SUBMODULARITY_CHECK {
        return Err(Error::Unsupported(format!(
            "exhaustive submodularity check on {n} > {MAX_SUBMODULARITY_CHECK} elements"
        )));
    }
    let table = tabulate(f)?;
    let v = table.values();
    let size = v.len() as u64;
    for a in 0..size {
        for b in a + 1..size {
            // comparable pairs satisfy the inequality with equality
            if a & b == a || a & b == b {
                continue;
            }
            let excess = v[(a | b) as usize] + v[(a & b) as usize] - v[a as usize] - v[b as usize];
            if excess > tol {
                return Ok(Some(Violation {
                    first: Subset::from_mask(a),
                    second: Subset::from_mask(b),
                    excess,
                }));
            }
        }
    }
    Ok(None)
}

/// Exhaustive monotonicity check: `f(B − i) ≤ f(B) + tol` for all `B` and `i ∈ B`.
pub fn is_monotone<F: SetFunction + ?Sized>(f: &F, tol: f64) -> Result<bool> {
    let table = tabulate(f)?;
    let v = table.values();
    for m in 1..v.len() {
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if v[m ^ bit] > v[m] + tol {
                return Ok(false);
            }
            rest &= rest - 1;
        }
    }
    Ok(true)
}
