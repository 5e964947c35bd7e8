//! Exponential-time reference implementations of the clustering quantities,
//! straight from their definitions, for certifying the fast path on small
//! ground sets.
//!
//! Everything here enumerates set partitions as restricted growth strings,
//! so the limits are a handful of elements (Bell(10) = 115975).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::partition::Partition;
use crate::psp::{self, ClusterSet, PspResult};
use crate::set_function::{tabulate, SetFunction, TableFunction};
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest set whose partitions [`mmi_brute`] and [`dilworth_brute`] enumerate.
pub const MAX_PARTITION_ENUMERATION: usize = 10;
/// Largest ground set for the routines that enumerate all subsets and their partitions.
pub const MAX_BRUTE_GROUND: usize = 8;
/// Values within this distance are ties when picking minimizers.
pub const TIE_TOL: f64 = 1e-9;
/// Agreement tolerance between fast and brute-force values.
pub const AGREEMENT_TOL: f64 = 1e-6;

/// Calls `visit(labels, blocks)` for every partition of `m` items, as
/// restricted growth strings in lexicographic order.
pub fn for_each_partition(m: usize, mut visit: impl FnMut(&[usize], usize)) {
    if m == 0 {
        return;
    }
    let mut labels = vec![0usize; m];
    // prefix_max[i] = max(labels[..i]); prefix_max[0] is unused
    let mut prefix_max = vec![0usize; m];
    loop {
        let blocks = prefix_max[m - 1].max(labels[m - 1]) + 1;
        visit(&labels, blocks);
        let mut i = m - 1;
        loop {
            if i == 0 {
                return;
            }
            if labels[i] <= prefix_max[i] {
                labels[i] += 1;
                break;
            }
            labels[i] = 0;
            i -= 1;
        }
        for t in i + 1..m {
            prefix_max[t] = prefix_max[t - 1].max(labels[t - 1]);
        }
    }
}

fn check_limit(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::Unsupported(format!("{what} on {size} > {limit} elements")));
    }
    Ok(())
}

/// Blocks (as masks over the ground set) of the partition of `elements` given by `labels`.
fn blocks_of(elements: &[usize], labels: &[usize], count: usize) -> Vec<u64> {
    let mut blocks = vec![0u64; count];
    for (&e, &l) in elements.iter().zip(labels) {
        blocks[l] |= 1 << e;
    }
    blocks
}

fn refines(fine: &[u64], coarse: &[u64]) -> bool {
    fine.iter().all(|&b| coarse.iter().any(|&c| b & !c == 0))
}

fn to_subsets(blocks: &[u64]) -> Vec<Subset> {
    let mut out: Vec<Subset> = blocks.iter().map(|&b| Subset::from_mask(b)).collect();
    out.sort_by_key(|b| b.first());
    out
}

/// Among `minimizers`, the one refining all others.
fn finest(minimizers: &[Vec<u64>]) -> Result<Vec<u64>> {
    let candidate = minimizers
        .iter()
        .max_by_key(|p| p.len())
        .ok_or_else(|| Error::Domain("no partition to choose from".into()))?;
    if minimizers.iter().all(|p| refines(candidate, p)) {
        Ok(candidate.clone())
    } else {
        Err(Error::InvalidSource(
            "optimal partitions have no finest member; the function is not submodular".into(),
        ))
    }
}

/// Minimizes `cost` over partitions of `elements` with at least `min_blocks`
/// blocks; returns the optimal value and the finest minimizer.
fn minimize_partitions(
    elements: &[usize],
    min_blocks: usize,
    cost: impl Fn(&[u64]) -> f64,
) -> Result<(f64, Vec<u64>)> {
    let mut best = f64::INFINITY;
    for_each_partition(elements.len(), |labels, count| {
        if count >= min_blocks {
            best = best.min(cost(&blocks_of(elements, labels, count)));
        }
    });
    let mut minimizers = Vec::new();
    for_each_partition(elements.len(), |labels, count| {
        if count >= min_blocks {
            let blocks = blocks_of(elements, labels, count);
            if cost(&blocks) <= best + TIE_TOL {
                minimizers.push(blocks);
            }
        }
    });
    Ok((best, finest(&minimizers)?))
}

/// Multivariate mutual information of the variables in `set` from a value table.
fn mmi_table(h: &TableFunction, set: u64) -> Result<(f64, Vec<u64>)> {
    let elements: Vec<usize> = (0..64).filter(|i| set >> i & 1 == 1).collect();
    if elements.len() < 2 {
        return Err(Error::Domain("MMI needs at least two variables".into()));
    }
    check_limit("MMI enumeration", elements.len(), MAX_PARTITION_ENUMERATION)?;
    let whole = h.at(set);
    minimize_partitions(&elements, 2, |blocks| {
        let sum: f64 = blocks.iter().map(|&b| h.at(b)).sum();
        (sum - whole) / (blocks.len() - 1) as f64
    })
}

/// `I(Z_B) = min over partitions P of B into ≥ 2 blocks of (Σ_{C∈P} h(C) − h(B)) / (|P| − 1)`,
/// with the finest optimal partition of `B`.
pub fn mmi_brute<F: SetFunction + ?Sized>(h: &F, set: &Subset) -> Result<(f64, Vec<Subset>)> {
    check_limit("MMI enumeration", set.len(), MAX_PARTITION_ENUMERATION)?;
    let table = tabulate(h)?;
    let mask = set
        .to_mask()
        .ok_or_else(|| Error::Domain("set lies outside the tabulated ground set".into()))?;
    let (value, blocks) = mmi_table(&table, mask)?;
    Ok((value, to_subsets(&blocks)))
}

/// `maximal{B : |B| > 1, I(Z_B) > γ}`.
pub fn clusters_brute<F: SetFunction + ?Sized>(h: &F, gamma: f64) -> Result<ClusterSet> {
    let n = h.ground_size();
    check_limit("cluster enumeration", n, MAX_BRUTE_GROUND)?;
    let table = tabulate(h)?;
    let mmi = all_mmi(&table)?;
    let above: Vec<Subset> = mmi
        .iter()
        .filter(|(_, v)| *v > gamma + TIE_TOL)
        .map(|&(s, _)| Subset::from_mask(s))
        .collect();
    Ok(ClusterSet::new(psp::maximal(&above)))
}

/// `(B, I(Z_B))` for every `B` with at least two elements.
fn all_mmi(table: &TableFunction) -> Result<Vec<(u64, f64)>> {
    let n = table.ground_size();
    (0..1u64 << n)
        .filter(|s| s.count_ones() >= 2)
        .map(|s| mmi_table(table, s).map(|(v, _)| (s, v)))
        .collect()
}

/// Dilworth truncation `min over all partitions P of Σ_{C∈P} (h(C) − γ)`, with
/// the finest optimal partition.
pub fn dilworth_brute<F: SetFunction + ?Sized>(h: &F, gamma: f64) -> Result<(f64, Partition)> {
    let n = h.ground_size();
    check_limit("Dilworth truncation", n, MAX_PARTITION_ENUMERATION)?;
    let table = tabulate(h)?;
    let elements: Vec<usize> = (0..n).collect();
    let (value, blocks) =
        minimize_partitions(&elements, 1, |blocks| blocks.iter().map(|&b| table.at(b) - gamma).sum())?;
    Ok((value, Partition::new(n, to_subsets(&blocks))?))
}

/// The principal sequence of partitions from the lower envelope of the
/// Dilworth truncation, which is concave and piecewise linear in `γ` with
/// slope `−|P|` on each piece.
pub fn psp_brute<F: SetFunction + ?Sized>(h: &F) -> Result<PspResult> {
    let n = h.ground_size();
    if n < 2 {
        return Err(Error::Domain("PSP needs at least two variables".into()));
    }
    check_limit("PSP enumeration", n, MAX_BRUTE_GROUND)?;
    let table = tabulate(h)?;
    let elements: Vec<usize> = (0..n).collect();

    // cheapest total entropy among partitions with exactly k blocks
    let mut best = vec![f64::INFINITY; n + 1];
    for_each_partition(n, |labels, count| {
        let sum: f64 = blocks_of(&elements, labels, count).iter().map(|&b| table.at(b)).sum();
        best[count] = best[count].min(sum);
    });
    let mut argmin: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n + 1];
    for_each_partition(n, |labels, count| {
        let blocks = blocks_of(&elements, labels, count);
        let sum: f64 = blocks.iter().map(|&b| table.at(b)).sum();
        if sum <= best[count] + TIE_TOL {
            argmin[count].push(blocks);
        }
    });

    // walk the envelope from slope -1 (γ → -∞) to slope -n (γ → +∞)
    let mut k = 1;
    let mut levels = Vec::new();
    while k < n {
        let mut next: Option<(f64, usize)> = None;
        for k2 in k + 1..=n {
            let crossing = (best[k2] - best[k]) / (k2 - k) as f64;
            // on ties the steeper line wins, giving the finest partition
            if next.is_none_or(|(g, _)| crossing <= g + TIE_TOL) {
                next = Some((crossing, k2));
            }
        }
        let (gamma, k2) = next.expect("k < n leaves a steeper line");
        if argmin[k2].len() != 1 {
            return Err(Error::InvalidSource(format!(
                "{} partitions with {k2} blocks attain the envelope",
                argmin[k2].len()
            )));
        }
        levels.push((gamma, Partition::new(n, to_subsets(&argmin[k2][0]))?));
        k = k2;
    }
    PspResult::from_chain(n, TIE_TOL, Partition::trivial(n), levels)
}

/// Normalized total correlation `(Σ_{i∈C} h({i}) − h(C)) / (|C| − 1)`.
pub fn jt_brute<F: SetFunction + ?Sized>(h: &F, set: &Subset) -> Result<f64> {
    let m = set.len();
    if m < 2 {
        return Err(Error::Domain("normalized total correlation needs at least two variables".into()));
    }
    let singles: f64 = set.iter().map(|i| h.value(&Subset::singleton(i))).sum();
    Ok((singles - h.value(set)) / (m - 1) as f64)
}

/// Outcome of comparing a fast computation with its brute-force reference.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceReport {
    pub quantity: String,
    pub fast: Vec<f64>,
    pub oracle: Vec<f64>,
    pub fast_witness: Vec<Vec<Subset>>,
    pub oracle_witness: Vec<Vec<Subset>>,
    /// Values within [`AGREEMENT_TOL`] and witnesses equal as sets.
    pub agree: bool,
}

impl BruteForceReport {
    fn new(
        quantity: &str,
        fast: Vec<f64>,
        oracle: Vec<f64>,
        fast_witness: Vec<Vec<Subset>>,
        oracle_witness: Vec<Vec<Subset>>,
    ) -> Self {
        let agree = fast.len() == oracle.len()
            && fast.iter().zip(&oracle).all(|(a, b)| (a - b).abs() <= AGREEMENT_TOL)
            && fast_witness == oracle_witness;
        BruteForceReport { quantity: quantity.into(), fast, oracle, fast_witness, oracle_witness, agree }
    }
}

fn sorted(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort_by_key(|s| s.first());
    sets
}

/// Checks `I* = max_C J_T(Z_C) = max_B I(Z_B)` and that the maximal maximizers
/// agree, and compares both with the minimum norm base route.
pub fn theorem2_check<F: SetFunction + ?Sized>(h: &F, tol: f64) -> Result<BruteForceReport> {
    let n = h.ground_size();
    check_limit("I* enumeration", n, MAX_BRUTE_GROUND)?;
    let table = tabulate(h)?;
    let multi: Vec<u64> = (0..1u64 << n).filter(|s| s.count_ones() >= 2).collect();

    let jt: Vec<f64> = multi
        .iter()
        .map(|&s| jt_brute(&table, &Subset::from_mask(s)))
        .collect::<Result<_>>()?;
    let jt_max = jt.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let jt_sets: Vec<Subset> = multi
        .iter()
        .zip(&jt)
        .filter(|(_, &v)| v >= jt_max - TIE_TOL)
        .map(|(&s, _)| Subset::from_mask(s))
        .collect();
    let jt_sets = sorted(psp::maximal(&jt_sets));

    let mmi = all_mmi(&table)?;
    let mmi_max = mmi.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
    let mmi_sets: Vec<Subset> = mmi
        .iter()
        .filter(|(_, v)| *v >= mmi_max - TIE_TOL)
        .map(|&(s, _)| Subset::from_mask(s))
        .collect();
    let mmi_sets = sorted(psp::maximal(&mmi_sets));

    let (fast, fast_sets) = psp::i_star_c_star(h, tol)?;
    let mut report = BruteForceReport::new(
        "I* and C*",
        vec![fast],
        vec![jt_max],
        vec![fast_sets.clusters().to_vec()],
        vec![jt_sets.clone()],
    );
    if (jt_max - mmi_max).abs() > AGREEMENT_TOL || jt_sets != mmi_sets {
        report.agree = false;
        report.quantity = format!("I* and C* (J_T route {jt_max} vs MMI route {mmi_max} disagree)");
    }
    Ok(report)
}

/// Compares [`psp::agglomerate`] with [`psp_brute`]: critical values and partitions.
pub fn psp_check<F: SetFunction + ?Sized>(h: &F, tol: f64) -> Result<BruteForceReport> {
    let fast = psp::agglomerate(h, tol)?;
    let oracle = psp_brute(h)?;
    Ok(psp_report(&fast, &oracle))
}

/// Report comparing two principal sequences of partitions.
pub fn psp_report(fast: &PspResult, oracle: &PspResult) -> BruteForceReport {
    let witness = |p: &PspResult| p.partitions().iter().map(|q| q.blocks().to_vec()).collect();
    BruteForceReport::new(
        "principal sequence of partitions",
        fast.critical_values().to_vec(),
        oracle.critical_values().to_vec(),
        witness(fast),
        witness(oracle),
    )
}

/// Every cluster of the hierarchy, over all levels.
pub fn all_clusters(psp: &PspResult) -> Vec<Subset> {
    let mut family: Vec<Subset> = Vec::new();
    for p in psp.partitions() {
        for b in p.non_singletons() {
            if !family.contains(b) {
                family.push(*b);
            }
        }
    }
    family
}

/// Laminarity of all clusters, plus strict monotonicity and refinement of the chain.
pub fn structure_check(psp: &PspResult) -> BruteForceReport {
    let family = all_clusters(psp);
    let mut report = BruteForceReport::new("laminarity and refinement chain", Vec::new(), Vec::new(), Vec::new(), Vec::new());
    report.agree = psp::is_laminar(&family) && psp.validate().is_ok() && psp.is_complete();
    report.fast_witness = vec![sorted(family)];
    report
}

/// Searches for intersecting `B₁, B₂` (each with ≥ 2 elements) with
/// `I(B₁ ∪ B₂) < min(I(B₁), I(B₂)) − 1e−6`.
pub fn union_property_violation<F: SetFunction + ?Sized>(h: &F) -> Result<Option<(Subset, Subset)>> {
    let n = h.ground_size();
    check_limit("union property check", n, 6)?;
    let table = tabulate(h)?;
    let mut mmi = vec![f64::NAN; 1 << n];
    for (s, v) in all_mmi(&table)? {
        mmi[s as usize] = v;
    }
    for a in 0..1usize << n {
        if a.count_ones() < 2 {
            continue;
        }
        for b in a + 1..1usize << n {
            if b.count_ones() < 2 || a & b == 0 {
                continue;
            }
            if mmi[a | b] < mmi[a].min(mmi[b]) - AGREEMENT_TOL {
                return Ok(Some((Subset::from_mask(a as u64), Subset::from_mask(b as u64))));
            }
        }
    }
    Ok(None)
}

/// Report form of [`union_property_violation`].
pub fn union_property_check<F: SetFunction + ?Sized>(h: &F) -> Result<BruteForceReport> {
    let violation = union_property_violation(h)?;
    let mut report = BruteForceReport::new("union property", Vec::new(), Vec::new(), Vec::new(), Vec::new());
    if let Some((a, b)) = violation {
        report.agree = false;
        report.oracle_witness = vec![vec![a, b]];
    }
    Ok(report)
}
