//! Entropy oracles: `h(B) = H(Z_B)` in bits for four kinds of source statistics.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{E, PI};

use crate::linalg::cholesky_log_det;
use crate::set_function::{self, SetFunction, TableFunction, MAX_SUBMODULARITY_CHECK};
use crate::subset::{Subset, MAX_ELEMENTS};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceKind {
    /// Each variable is a set of independent uniform bits.
    Bits,
    /// Jointly Gaussian variables given by a covariance matrix (differential entropy).
    Gaussian,
    /// Plug-in estimate from rows of discrete observations.
    Samples,
    /// An explicit table of `2^n` values.
    Table,
}

#[derive(Clone, Debug)]
enum Source {
    Bits { vars: Vec<Subset> },
    Gaussian { cov: Vec<f64> },
    Samples { columns: Vec<Vec<u32>>, rows: usize },
    Table { table: TableFunction, entropic: bool },
}

/// A normalized submodular entropy function over `n` random variables.
///
/// Immutable after construction, so evaluation is safe from any number of
/// threads at once.
#[derive(Clone, Debug)]
pub struct EntropyOracle {
    n: usize,
    source: Source,
}

impl EntropyOracle {
    /// Variables built from shared uniform bits; `vars[i]` is the set of bits `Z_i` carries.
    /// `h(B)` is the number of distinct bits in the union.
    pub fn bits(vars: Vec<Subset>) -> Result<Self> {
        check_size(vars.len())?;
        Ok(EntropyOracle { n: vars.len(), source: Source::Bits { vars } })
    }

    /// Jointly Gaussian variables with the given symmetric positive definite covariance.
    pub fn gaussian(cov: &[Vec<f64>]) -> Result<Self> {
        let n = cov.len();
        check_size(n)?;
        if cov.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSource("covariance matrix is not square".into()));
        }
        let flat: Vec<f64> = cov.iter().flatten().copied().collect();
        if flat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSource("covariance has non-finite entries".into()));
        }
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (flat[i * n + j], flat[j * n + i]);
                if (a - b).abs() > 1e-9 * (1.0 + a.abs().max(b.abs())) {
                    return Err(Error::InvalidSource(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if cholesky_log_det(&flat, n).is_none() {
            return Err(Error::InvalidSource("covariance is not positive definite".into()));
        }
        Ok(EntropyOracle { n, source: Source::Gaussian { cov: flat } })
    }

    /// Plug-in entropy of the empirical joint distribution of the columns.
    /// Every row holds one observation of all `n` variables.
    pub fn samples(rows: &[Vec<u32>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::Domain("empirical entropy needs at least one sample".into()));
        };
        let n = first.len();
        check_size(n)?;
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidSource(format!(
                "sample row {r} has {} columns, expected {n}",
                rows[r].len()
            )));
        }
        let columns = (0..n).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
        Ok(EntropyOracle { n, source: Source::Samples { columns, rows: rows.len() } })
    }

    /// An explicit mask-indexed value table. Only normalization and
    /// submodularity are required; monotonicity is additionally checked when
    /// `entropic` is set.
    pub fn table(mut values: Vec<f64>, entropic: bool, tol: f64) -> Result<Self> {
        let Some(&empty) = values.first() else {
            return Err(Error::InvalidSource("empty value table".into()));
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSource("value table has non-finite entries".into()));
        }
        if empty.abs() > tol {
            return Err(Error::InvalidSource(format!("table is not normalized: h(∅) = {empty}")));
        }
        values[0] = 0.0;
        let table = TableFunction::new(values).map_err(|e| Error::InvalidSource(format!("{e}")))?;
        let n = table.ground_size();
        if n == 0 {
            return Err(Error::InvalidSource("table over an empty ground set".into()));
        }
        let violation = if n <= MAX_SUBMODULARITY_CHECK {
            set_function::check_submodular(&table, tol)?.map(|v| (v.first, v.second))
        } else {
            local_submodularity_violation(&table, tol)
        };
        if let Some((a, b)) = violation {
            return Err(Error::InvalidSource(format!(
                "table is not submodular: h({a:?}) + h({b:?}) < h(∪) + h(∩) (variables numbered from 0)"
            )));
        }
        if entropic && !set_function::is_monotone(&table, tol)? {
            return Err(Error::InvalidSource("table flagged entropic is not monotone".into()));
        }
        Ok(EntropyOracle { n, source: Source::Table { table, entropic } })
    }

    pub fn kind(&self) -> SourceKind {
        match self.source {
            Source::Bits { .. } => SourceKind::Bits,
            Source::Gaussian { .. } => SourceKind::Gaussian,
            Source::Samples { .. } => SourceKind::Samples,
            Source::Table { .. } => SourceKind::Table,
        }
    }

    /// Whether the values are Shannon entropies of discrete variables, hence monotone.
    pub fn is_entropic(&self) -> bool {
        match &self.source {
            Source::Bits { .. } | Source::Samples { .. } => true,
            Source::Gaussian { .. } => false,
            Source::Table { entropic, .. } => *entropic,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// `h(B)` in bits, checking that `B` lies in the ground set.
    pub fn eval(&self, set: &Subset) -> Result<f64> {
        if !set.is_subset_of(&Subset::full(self.n)) {
            return Err(Error::Domain(format!(
                "{set:?} is not a subset of a ground set of size {}",
                self.n
            )));
        }
        if let Source::Gaussian { cov } = &self.source {
            return gaussian_entropy(cov, self.n, set);
        }
        Ok(self.value(set))
    }
}

impl SetFunction for EntropyOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &Subset) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        match &self.source {
            Source::Bits { vars } => bit_source_entropy(vars, set),
            Source::Gaussian { cov } => gaussian_entropy(cov, self.n, set).unwrap_or(f64::NAN),
            Source::Samples { columns, rows } => empirical_entropy(columns, *rows, set),
            Source::Table { table, .. } => table.value(set),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSource("source has no variables".into()));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::Unsupported(format!("{n} variables exceed the {MAX_ELEMENTS} limit")));
    }
    Ok(())
}

/// Number of distinct bits carried by the variables in `set`.
pub fn bit_source_entropy(vars: &[Subset], set: &Subset) -> f64 {
    set.iter().fold(Subset::empty(), |acc, i| acc | vars[i]).len() as f64
}

/// `½ log2((2πe)^{|B|} det Σ_B)` for a row-major `n × n` covariance.
pub fn gaussian_entropy(cov: &[f64], n: usize, set: &Subset) -> Result<f64> {
    let idx: Vec<usize> = set.iter().collect();
    let k = idx.len();
    if k == 0 {
        return Ok(0.0);
    }
    let mut sub = Vec::with_capacity(k * k);
    for &i in &idx {
        for &j in &idx {
            sub.push(cov[i * n + j]);
        }
    }
    let log_det = cholesky_log_det(&sub, k).ok_or_else(|| {
        Error::InvalidSource(format!("covariance restricted to {set:?} is not positive definite (variables numbered from 0)"))
    })?;
    Ok(0.5 * (k as f64 * libm::log2(2.0 * PI * E) + log_det / core::f64::consts::LN_2))
}

/// Plug-in Shannon entropy (bits) of the joint empirical distribution of the selected columns.
pub fn empirical_entropy(columns: &[Vec<u32>], rows: usize, set: &Subset) -> f64 {
    if set.is_empty() || rows == 0 {
        return 0.0;
    }
    let cols: Vec<&[u32]> = set.iter().map(|c| columns[c].as_slice()).collect();
    let cmp = |&a: &usize, &b: &usize| {
        cols.iter()
            .map(|c| c[a].cmp(&c[b]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    };
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_unstable_by(cmp);
    let mut sum = 0.0;
    let mut run = 1usize;
    for w in order.windows(2) {
        if cmp(&w[0], &w[1]).is_eq() {
            run += 1;
        } else {
            sum += plogp(run);
            run = 1;
        }
    }
    sum += plogp(run);
    let total = rows as f64;
    (libm::log2(total) - sum / total).max(0.0)
}

fn plogp(count: usize) -> f64 {
    let c = count as f64;
    c * libm::log2(c)
}

/// Checks `f(S+i) + f(S+j) ≥ f(S+i+j) + f(S)` for all `S` and `i, j ∉ S`, which
/// is equivalent to submodularity and runs in `O(n² 2ⁿ)`.
fn local_submodularity_violation(table: &TableFunction, tol: f64) -> Option<(Subset, Subset)> {
    let n = table.ground_size();
    let v = table.values();
    for s in 0..v.len() {
        for i in 0..n {
            if s >> i & 1 == 1 {
                continue;
            }
            for j in i + 1..n {
                if s >> j & 1 == 1 {
                    continue;
                }
                let (si, sj) = (s | 1 << i, s | 1 << j);
                if v[si | 1 << j] + v[s] > v[si] + v[sj] + tol {
                    return Some((Subset::from_mask(si as u64), Subset::from_mask(sj as u64)));
                }
            }
        }
    }
    None
}
