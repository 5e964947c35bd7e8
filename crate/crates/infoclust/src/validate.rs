//! Brute-force certification of the fast path on small sources.

use infoclust_core::entropy::EntropyOracle;
use infoclust_core::oracle::{
    psp_check, structure_check, theorem2_check, union_property_check, BruteForceReport, MAX_BRUTE_GROUND,
};
use infoclust_core::psp::agglomerate;
use infoclust_core::{Error, Subset};
use serde::{Deserialize, Serialize};

use crate::report::{members, round12};

/// Largest ground set on which the union property is checked pairwise.
pub const MAX_UNION_CHECK: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CheckReport {
    pub agree: bool,
    pub fast: Vec<f64>,
    pub fast_witness: Vec<Vec<Vec<usize>>>,
    /// Which source the check ran on, e.g. `input` or `random #3 (seed 42)`.
    pub instance: String,
    pub oracle: Vec<f64>,
    pub oracle_witness: Vec<Vec<Vec<usize>>>,
    pub quantity: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ValidationReport {
    pub all_agree: bool,
    pub checks: Vec<CheckReport>,
    pub instances: usize,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn witness(sets: &[Vec<Subset>]) -> Vec<Vec<Vec<usize>>> {
    sets.iter().map(|family| family.iter().map(members).collect()).collect()
}

fn convert(instance: &str, r: BruteForceReport) -> CheckReport {
    CheckReport {
        agree: r.agree,
        fast: r.fast.into_iter().map(round12).collect(),
        fast_witness: witness(&r.fast_witness),
        instance: instance.into(),
        oracle: r.oracle.into_iter().map(round12).collect(),
        oracle_witness: witness(&r.oracle_witness),
        quantity: r.quantity,
    }
}

fn failed(instance: &str, quantity: &str, e: Error) -> CheckReport {
    CheckReport {
        agree: false,
        fast: Vec::new(),
        fast_witness: Vec::new(),
        instance: instance.into(),
        oracle: Vec::new(),
        oracle_witness: Vec::new(),
        quantity: format!("{quantity}: {e}"),
    }
}

/// Runs every check on one source. Errors only if the source is too large to
/// enumerate; a check that fails to run counts as a disagreement.
pub fn check_source(h: &EntropyOracle, tol: f64, instance: &str) -> Result<Vec<CheckReport>, Error> {
    let n = h.ground_size();
    if !(2..=MAX_BRUTE_GROUND).contains(&n) {
        return Err(Error::Unsupported(format!(
            "validation needs between 2 and {MAX_BRUTE_GROUND} variables, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut push = |quantity: &str, r: Result<BruteForceReport, Error>| {
        out.push(match r {
            Ok(r) => convert(instance, r),
            Err(e) => failed(instance, quantity, e),
        });
    };
    push("principal sequence of partitions", psp_check(h, tol));
    push("I* and C*", theorem2_check(h, tol));
    push("laminarity and refinement chain", agglomerate(h, tol).map(|r| structure_check(&r)));
    if n <= MAX_UNION_CHECK {
        push("union property", union_property_check(h));
    }
    Ok(out)
}

pub fn summarize(checks: Vec<CheckReport>, instances: usize) -> ValidationReport {
    ValidationReport { all_agree: checks.iter().all(|c| c.agree), checks, instances }
}
