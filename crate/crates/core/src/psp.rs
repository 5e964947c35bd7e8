//! Agglomerative info-clustering: the `fuse` step that computes the next
//! coarser level of the principal sequence of partitions from minimum norm
//! bases of contracted entropy functions, the loop driving it from the
//! singletons up to `{V}`, and queries on the resulting hierarchy.

use alloc::vec;
use alloc::vec::Vec;

use crate::min_norm::{min_norm_base, MinNormBase};
use crate::partition::Partition;
use crate::set_function::{contracted, Fused, SetFunction};
use crate::subset::Subset;
use crate::{Error, Result};

/// Default absolute tolerance for value comparisons and Wolfe termination.
pub const DEFAULT_TOL: f64 = 1e-9;

/// One merge of [`fuse`]: the anchor part together with the later parts whose
/// minimum norm base entry reached `−γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeRecord {
    /// Index of the anchor part in the input partition.
    pub anchor: usize,
    /// Indices of the absorbed parts, with their entries of the anchor's base.
    pub absorbed: Vec<(usize, f64)>,
}

/// Result of one call to [`fuse`].
#[derive(Clone, Debug, PartialEq)]
pub struct FuseOutcome {
    /// The critical value of the input level.
    pub gamma: f64,
    /// The next coarser level.
    pub coarser: Partition,
    /// `bases[j]` is the minimum norm base of the function anchored at part `j`,
    /// indexed by the parts after `j`.
    pub bases: Vec<MinNormBase>,
    pub merges: Vec<MergeRecord>,
}

/// Minimum norm bases of the `k − 1` contracted functions of `partition`, in anchor order.
pub fn contracted_bases<F: SetFunction + ?Sized>(
    h: &F,
    partition: &Partition,
    tol: f64,
) -> Result<Vec<MinNormBase>> {
    check_fusable(h, partition)?;
    (0..partition.len() - 1)
        .map(|j| min_norm_base(&contracted(h, partition, j)?, tol))
        .collect()
}

/// Computes the critical value of `partition` and the next coarser partition.
///
/// `γ = −min_j min_i x⁽ʲ⁾_i` over the minimum norm bases `x⁽ʲ⁾` of the
/// contracted functions; part `j` absorbs every later part `i` with
/// `x⁽ʲ⁾_i ≤ −γ + tol`, and blocks sharing a part are joined.
pub fn fuse<F: SetFunction + ?Sized>(h: &F, partition: &Partition, tol: f64) -> Result<FuseOutcome> {
    let bases = contracted_bases(h, partition, tol)?;
    fuse_with_bases(partition, bases, tol)
}

/// The merge step of [`fuse`], given the minimum norm bases computed elsewhere
/// (for instance in parallel).
pub fn fuse_with_bases(partition: &Partition, bases: Vec<MinNormBase>, tol: f64) -> Result<FuseOutcome> {
    let k = partition.len();
    if k < 2 {
        return Err(Error::Domain("fuse needs a partition with at least two parts".into()));
    }
    if bases.len() != k - 1 || bases.iter().enumerate().any(|(j, b)| b.x.len() != k - 1 - j) {
        return Err(Error::Domain("one minimum norm base per anchor is required".into()));
    }
    let min_entry = bases
        .iter()
        .flat_map(|b| b.x.iter().copied())
        .fold(f64::INFINITY, f64::min);
    // adding 0.0 turns a negated zero entry into +0
    let gamma = -min_entry + 0.0;
    let threshold = min_entry + tol;

    let mut parent: Vec<usize> = (0..k).collect();
    let mut merges = Vec::new();
    for (j, base) in bases.iter().enumerate() {
        let absorbed: Vec<(usize, f64)> = base
            .x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v <= threshold)
            .map(|(t, &v)| (j + 1 + t, v))
            .collect();
        if absorbed.is_empty() {
            continue;
        }
        for &(i, _) in &absorbed {
            union(&mut parent, j, i);
        }
        merges.push(MergeRecord { anchor: j, absorbed });
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(i);
    }
    let coarser = partition.coarsen(&groups)?;
    Ok(FuseOutcome { gamma, coarser, bases, merges })
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = i;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn check_fusable<F: SetFunction + ?Sized>(h: &F, partition: &Partition) -> Result<()> {
    if partition.ground_size() != h.ground_size() {
        return Err(Error::Domain("partition and function have different ground sets".into()));
    }
    if partition.len() < 2 {
        return Err(Error::Domain("fuse needs a partition with at least two parts".into()));
    }
    Ok(())
}

/// A fused level of the hierarchy: `P_ℓ`, its critical value `γ_ℓ`, and the
/// minimum norm base data that produced `P_{ℓ−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub gamma: f64,
    pub partition: Partition,
    pub bases: Vec<Vec<f64>>,
    /// Part indices refer to `partition`. If a later fuse round repeated `gamma`
    /// within tolerance, its records are appended with each merged group named
    /// by its lowest-indexed part of `partition`.
    pub merges: Vec<MergeRecord>,
}

/// The principal sequence of partitions `{V} = P_0 ≻ P_1 ≻ … ≻ P_N` (singletons)
/// with critical values `γ_1 < … < γ_N`.
///
/// A run stopped early holds a suffix of the chain: `partitions` then starts
/// at the coarsest partition reached instead of `{V}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PspResult {
    n: usize,
    tol: f64,
    critical_values: Vec<f64>,
    partitions: Vec<Partition>,
    levels: Vec<Level>,
    min_norm_calls: usize,
}

impl PspResult {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `γ_1 < … < γ_N` (or the computed suffix of them).
    pub fn critical_values(&self) -> &[f64] {
        &self.critical_values
    }

    /// Partitions from coarsest to finest; `partitions()[ℓ]` pairs with
    /// `critical_values()[ℓ − 1]` for `ℓ ≥ 1`.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Per-level provenance, in the same order as `critical_values`.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Whether the chain reaches `{V}`.
    pub fn is_complete(&self) -> bool {
        self.partitions.first().is_some_and(|p| p.len() == 1)
    }

    /// Number of minimum norm base computations the run performed.
    pub fn min_norm_calls(&self) -> usize {
        self.min_norm_calls
    }

    /// Assembles a result from `(γ_ℓ, P_ℓ)` pairs listed in increasing `γ`
    /// and the coarsest partition. Checks the chain invariants.
    pub fn from_chain(n: usize, tol: f64, coarsest: Partition, levels: Vec<(f64, Partition)>) -> Result<Self> {
        let levels = levels
            .into_iter()
            .map(|(gamma, partition)| Level { gamma, partition, bases: Vec::new(), merges: Vec::new() })
            .collect();
        let r = Self::assemble(n, tol, coarsest, levels, 0);
        r.validate()?;
        Ok(r)
    }

    fn assemble(n: usize, tol: f64, coarsest: Partition, levels: Vec<Level>, calls: usize) -> Self {
        let mut partitions = Vec::with_capacity(levels.len() + 1);
        partitions.push(coarsest);
        partitions.extend(levels.iter().map(|l| l.partition.clone()));
        PspResult {
            n,
            tol,
            critical_values: levels.iter().map(|l| l.gamma).collect(),
            partitions,
            levels,
            min_norm_calls: calls,
        }
    }

    /// Checks strict monotonicity of the critical values, the strict refinement
    /// chain, and that the finest partition is the singletons.
    pub fn validate(&self) -> Result<()> {
        if self.partitions.len() != self.critical_values.len() + 1 {
            return Err(Error::Domain("chain length does not match critical values".into()));
        }
        if self.critical_values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("critical values are not strictly increasing".into()));
        }
        for w in self.partitions.windows(2) {
            if !(w[1].refines(&w[0]) && w[1].len() > w[0].len()) {
                return Err(Error::Domain("partitions do not strictly refine".into()));
            }
        }
        if self.partitions.last() != Some(&Partition::singletons(self.n)) {
            return Err(Error::Domain("finest partition is not the singletons".into()));
        }
        Ok(())
    }

    /// Index `ℓ` of the level in force at threshold `gamma`: the largest `ℓ`
    /// with `γ_ℓ ≤ gamma` (`0` if none), using half-open intervals `[γ_ℓ, γ_{ℓ+1})`.
    pub fn level_at(&self, gamma: f64) -> usize {
        self.critical_values.iter().take_while(|&&g| g <= gamma + self.tol).count()
    }

    /// The clusters at threshold `gamma`: the non-singleton blocks of the level in force.
    ///
    /// For a run stopped early, thresholds below the smallest computed critical
    /// value report the coarsest partition reached.
    pub fn clusters_at(&self, gamma: f64) -> ClusterSet {
        let p = &self.partitions[self.level_at(gamma)];
        ClusterSet { clusters: p.non_singletons().copied().collect() }
    }

    /// The laminar family of clusters as a tree (a forest for truncated runs).
    pub fn dendrogram(&self) -> Dendrogram {
        Dendrogram::from_psp(self)
    }
}

/// When [`agglomerate_with`] should stop before reaching `{V}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StopRule {
    /// Stop once the current partition has at most this many blocks.
    pub max_blocks: Option<usize>,
    /// Stop once a critical value at or below this is found.
    pub gamma_floor: Option<f64>,
}

/// A run interrupted by an error, with the levels computed before it.
#[derive(Clone, Debug, PartialEq)]
pub struct Interrupted {
    pub partial: PspResult,
    pub error: Error,
}

/// The full principal sequence of partitions of `h`.
pub fn agglomerate<F: SetFunction + ?Sized>(h: &F, tol: f64) -> Result<PspResult> {
    agglomerate_with(h, tol, StopRule::default(), |h, p| fuse(h, p, tol)).map_err(|e| e.error)
}

/// Runs the agglomerative loop from the singletons with a caller-supplied
/// fuse step, stopping early according to `stop`.
pub fn agglomerate_with<F, S>(
    h: &F,
    tol: f64,
    stop: StopRule,
    mut fuse_step: S,
) -> core::result::Result<PspResult, Interrupted>
where
    F: SetFunction + ?Sized,
    S: FnMut(&F, &Partition) -> Result<FuseOutcome>,
{
    let n = h.ground_size();
    let mut current = Partition::singletons(n);
    // built finest first, reversed at the end
    let mut levels: Vec<Level> = Vec::new();
    let mut calls = 0;
    let finish = |levels: &[Level], coarsest: &Partition, calls: usize| {
        let mut ordered = levels.to_vec();
        ordered.reverse();
        PspResult::assemble(n, tol, coarsest.clone(), ordered, calls)
    };
    if n < 2 {
        return Err(Interrupted {
            partial: finish(&levels, &current, calls),
            error: Error::Domain("clustering needs at least two variables".into()),
        });
    }

    while current.len() > 1 {
        if stop.max_blocks.is_some_and(|m| current.len() <= m) {
            break;
        }
        let outcome = match fuse_step(h, &current) {
            Ok(o) => o,
            Err(error) => {
                return Err(Interrupted { partial: finish(&levels, &current, calls), error });
            }
        };
        calls += outcome.bases.len();
        let bases = outcome.bases.into_iter().map(|b| b.x).collect();
        match levels.last_mut() {
            // a critical value repeated within tolerance continues the previous merge
            Some(prev) if outcome.gamma > prev.gamma - tol => {
                let outer = |i: usize| {
                    let first = current.blocks()[i].first().expect("blocks are non-empty");
                    prev.partition.block_of(first).expect("levels share a ground set")
                };
                prev.merges.extend(outcome.merges.into_iter().map(|m| MergeRecord {
                    anchor: outer(m.anchor),
                    absorbed: m.absorbed.into_iter().map(|(i, v)| (outer(i), v)).collect(),
                }));
            }
            _ => levels.push(Level {
                gamma: outcome.gamma,
                partition: current.clone(),
                bases,
                merges: outcome.merges,
            }),
        }
        let reached_floor = stop.gamma_floor.is_some_and(|g| outcome.gamma <= g);
        current = outcome.coarser;
        if reached_floor {
            break;
        }
    }
    Ok(finish(&levels, &current, calls))
}

/// Clusters: disjoint subsets with at least two elements each.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClusterSet {
    clusters: Vec<Subset>,
}

impl ClusterSet {
    /// Sorts by smallest element; does not check disjointness.
    pub fn new(mut clusters: Vec<Subset>) -> Self {
        clusters.sort_by_key(|c| c.first());
        ClusterSet { clusters }
    }

    pub fn clusters(&self) -> &[Subset] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

/// `I*(Z_V)`, the largest multivariate mutual information of any subset with
/// at least two elements, and `C*(Z_V)`, the maximal subsets attaining it,
/// from one round of minimum norm bases on the singleton partition.
pub fn i_star_c_star<F: SetFunction + ?Sized>(h: &F, tol: f64) -> Result<(f64, ClusterSet)> {
    let n = h.ground_size();
    if n < 2 {
        return Err(Error::Domain("I* needs at least two variables".into()));
    }
    let bases = contracted_bases(h, &Partition::singletons(n), tol)?;
    let min_entry = bases
        .iter()
        .flat_map(|b| b.x.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let mut candidates: Vec<Subset> = Vec::new();
    for (j, base) in bases.iter().enumerate() {
        let row_min = base.x.iter().copied().fold(f64::INFINITY, f64::min);
        if row_min > min_entry + tol {
            continue;
        }
        let set = base
            .x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v <= row_min + tol)
            .fold(Subset::singleton(j), |acc, (t, _)| acc.with(j + 1 + t));
        if !candidates.contains(&set) {
            candidates.push(set);
        }
    }
    Ok((-min_entry + 0.0, ClusterSet::new(maximal(&candidates))))
}

/// `I*` and `C*` of the fused variables `Z_{C_1}, …, Z_{C_k}`; clusters are
/// given over part indices.
pub fn i_star_c_star_fused<F: SetFunction>(h: F, parts: &Partition, tol: f64) -> Result<(f64, ClusterSet)> {
    i_star_c_star(&Fused::new(h, parts)?, tol)
}

/// Inclusion-wise maximal members of `family`.
pub fn maximal(family: &[Subset]) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::new();
    for (i, s) in family.iter().enumerate() {
        let dominated = family
            .iter()
            .enumerate()
            .any(|(k, t)| k != i && s.is_subset_of(t) && (s != t || k < i));
        if !dominated {
            out.push(*s);
        }
    }
    out
}

/// Whether every two members of `family` are disjoint or nested.
pub fn is_laminar(family: &[Subset]) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family[i + 1..]
            .iter()
            .all(|b| a.is_disjoint(b) || a.is_subset_of(b) || b.is_subset_of(a))
    })
}

/// A node of a [`Dendrogram`]: a leaf variable or a cluster formed at threshold `gamma`.
#[derive(Clone, Debug, PartialEq)]
pub struct DendrogramNode {
    pub members: Subset,
    /// Critical value at which the cluster forms; `None` for leaves.
    pub gamma: Option<f64>,
    pub children: Vec<usize>,
}

/// The clusters of a [`PspResult`] arranged as a rooted tree. Leaves come
/// first, node `i < n` being variable `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    nodes: Vec<DendrogramNode>,
    roots: Vec<usize>,
}

impl Dendrogram {
    fn from_psp(psp: &PspResult) -> Self {
        let n = psp.ground_size();
        let mut nodes: Vec<DendrogramNode> = (0..n)
            .map(|i| DendrogramNode { members: Subset::singleton(i), gamma: None, children: Vec::new() })
            .collect();
        // node currently representing each block of the finer partition
        let mut current: Vec<(Subset, usize)> = (0..n).map(|i| (Subset::singleton(i), i)).collect();
        let parts = psp.partitions();
        for ell in (1..parts.len()).rev() {
            let gamma = psp.critical_values()[ell - 1];
            let mut next = Vec::with_capacity(parts[ell - 1].len());
            for block in parts[ell - 1].blocks() {
                let inside: Vec<usize> = current
                    .iter()
                    .filter(|(s, _)| s.is_subset_of(block))
                    .map(|&(_, id)| id)
                    .collect();
                if inside.len() == 1 {
                    next.push((*block, inside[0]));
                } else {
                    nodes.push(DendrogramNode { members: *block, gamma: Some(gamma), children: inside });
                    next.push((*block, nodes.len() - 1));
                }
            }
            current = next;
        }
        let roots = current.into_iter().map(|(_, id)| id).collect();
        Dendrogram { nodes, roots }
    }

    pub fn nodes(&self) -> &[DendrogramNode] {
        &self.nodes
    }

    /// Top-level nodes: one for a complete run.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// `(parent, child)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(p, node)| node.children.iter().map(move |&c| (p, c)))
            .collect()
    }
}
