//! The clustering report and its JSON, DOT and text renderings.
//!
//! Variables, parts and dendrogram nodes are numbered from 1. Floats are
//! rounded to 12 significant digits and keys are emitted in alphabetical
//! order, so parsing a JSON report and rendering it again reproduces it byte
//! for byte.

use std::fmt::Write as _;

use infoclust_core::entropy::SourceKind;
use infoclust_core::psp::PspResult;
use infoclust_core::{Error, Partition, Subset};
use serde::{Deserialize, Serialize};

use crate::source::kind_name;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Report {
    /// Whether the hierarchy reaches the one-block partition.
    pub complete: bool,
    pub critical_values: Vec<f64>,
    pub dendrogram: DendrogramReport,
    /// Gaussian sources use differential entropy, which can be negative.
    pub differential_entropy: bool,
    pub error: Option<ErrorReport>,
    pub levels: Vec<LevelReport>,
    pub min_norm_calls: usize,
    pub n: usize,
    /// Coarsest first, ending with the singletons.
    pub partitions: Vec<Vec<Vec<usize>>>,
    pub source: String,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LevelReport {
    /// `bases[j]` is the minimum norm base anchored at part `j + 1`, over parts `j + 2, ..`.
    pub bases: Vec<Vec<f64>>,
    pub gamma: f64,
    pub merges: Vec<MergeReport>,
    pub partition: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MergeReport {
    pub absorbed: Vec<AbsorbedPart>,
    pub anchor: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AbsorbedPart {
    pub part: usize,
    /// The anchor's base entry for this part.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DendrogramReport {
    /// Nodes `1..=n` are the variables.
    pub nodes: Vec<NodeReport>,
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NodeReport {
    pub children: Vec<usize>,
    pub gamma: Option<f64>,
    pub id: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

/// `x` rounded to 12 significant digits, with `-0` folded into `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn members(s: &Subset) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn blocks(p: &Partition) -> Vec<Vec<usize>> {
    p.blocks().iter().map(members).collect()
}

fn round_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(round12).collect()
}

impl Report {
    pub fn new(psp: &PspResult, kind: SourceKind, error: Option<&Error>) -> Self {
        let levels = psp
            .levels()
            .iter()
            .map(|l| LevelReport {
                bases: l.bases.iter().map(|b| round_all(b)).collect(),
                gamma: round12(l.gamma),
                merges: l
                    .merges
                    .iter()
                    .map(|m| MergeReport {
                        absorbed: m
                            .absorbed
                            .iter()
                            .map(|&(part, value)| AbsorbedPart { part: part + 1, value: round12(value) })
                            .collect(),
                        anchor: m.anchor + 1,
                    })
                    .collect(),
                partition: blocks(&l.partition),
            })
            .collect();
        let d = psp.dendrogram();
        let dendrogram = DendrogramReport {
            nodes: d
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, node)| NodeReport {
                    children: node.children.iter().map(|c| c + 1).collect(),
                    gamma: node.gamma.map(round12),
                    id: i + 1,
                    members: members(&node.members),
                })
                .collect(),
            roots: d.roots().iter().map(|r| r + 1).collect(),
        };
        Report {
            complete: psp.is_complete(),
            critical_values: round_all(psp.critical_values()),
            dendrogram,
            differential_entropy: kind == SourceKind::Gaussian,
            error: error.map(|e| ErrorReport { kind: error_kind(e).into(), message: e.to_string() }),
            levels,
            min_norm_calls: psp.min_norm_calls(),
            n: psp.ground_size(),
            partitions: psp.partitions().iter().map(blocks).collect(),
            source: kind_name(kind).into(),
            tol: round12(psp.tol()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Graphviz digraph with one edge from each cluster to each of its children.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dendrogram {\n    rankdir=BT;\n");
        for node in &self.dendrogram.nodes {
            let label = match node.gamma {
                Some(g) => format!("C{}@{}", braces(&node.members), g),
                None => format!("C{}", braces(&node.members)),
            };
            let _ = writeln!(s, "    n{} [label=\"{label}\"];", node.id);
        }
        for node in &self.dendrogram.nodes {
            for c in &node.children {
                let _ = writeln!(s, "    n{} -> n{c};", node.id);
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let kind = if self.differential_entropy { " (differential entropy)" } else { "" };
        let _ = writeln!(s, "source: {}{kind}, {} variables", self.source, self.n);
        let _ = writeln!(s, "critical values: {}", join(&self.critical_values));
        let _ = writeln!(s, "\nclusters by threshold:");
        let gammas = &self.critical_values;
        for (l, p) in self.partitions.iter().enumerate() {
            let range = match (l.checked_sub(1).map(|i| gammas[i]), gammas.get(l)) {
                (None, Some(hi)) => format!("γ < {hi}"),
                (Some(lo), Some(hi)) => format!("{lo} ≤ γ < {hi}"),
                (Some(lo), None) => format!("γ ≥ {lo}"),
                (None, None) => "all γ".into(),
            };
            let clusters: Vec<String> = p.iter().filter(|b| b.len() > 1).map(|b| braces(b)).collect();
            let clusters = if clusters.is_empty() { "(none)".into() } else { clusters.join(" ") };
            let _ = writeln!(s, "  {range:<22} {clusters}");
        }
        if !self.complete {
            let _ = writeln!(s, "  (stopped before merging everything; the first row is the coarsest level reached)");
        }
        let _ = writeln!(s, "\nminimum norm base computations: {}", self.min_norm_calls);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
        }
        s
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::InvalidSource(_) => "invalidSource",
        Error::Unsupported(_) => "unsupported",
        Error::Convergence { .. } => "convergence",
    }
}

fn braces(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn join(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(f64::to_string).collect();
    parts.join(" ")
}
