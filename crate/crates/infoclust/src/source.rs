//! The JSON source formats.
//!
//! ```json
//! {"kind": "bits", "universe": ["a", "b"], "vars": [["a"], ["a", "b"]]}
//! {"kind": "gaussian", "cov": [[1.0, 0.5], [0.5, 1.0]]}
//! {"kind": "samples", "rows": [[0, "x"], [1, "y"]]}
//! {"kind": "table", "n": 2, "values": [0, 1, 1, 1.5], "entropic": true}
//! ```
//!
//! Table values are indexed by bitmask (bit `i` is variable `i + 1`). Sample
//! entries may be any JSON scalars; each column's distinct values are symbols.

use std::collections::HashMap;
use std::path::Path;

use infoclust_core::entropy::{EntropyOracle, SourceKind};
use infoclust_core::subset::MAX_ELEMENTS;
use infoclust_core::Subset;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceSpec {
    Bits { universe: Vec<String>, vars: Vec<Vec<String>> },
    Gaussian { cov: Vec<Vec<f64>> },
    Samples { rows: Vec<Vec<Value>> },
    Table {
        n: usize,
        values: Vec<f64>,
        #[serde(default)]
        entropic: bool,
    },
}

/// Parses a source document. `kind` replaces (or supplies) the document's `kind` field.
pub fn parse(text: &str, kind: Option<SourceKind>) -> Result<SourceSpec> {
    let mut doc: Value = serde_json::from_str(text).map_err(|e| CliError::Schema(format!("malformed JSON: {e}")))?;
    if let Some(kind) = kind {
        let obj = doc
            .as_object_mut()
            .ok_or_else(|| CliError::Schema("source must be a JSON object".into()))?;
        obj.insert("kind".into(), Value::String(kind_name(kind).into()));
    }
    serde_json::from_value(doc).map_err(|e| CliError::Schema(e.to_string()))
}

pub fn read(path: &Path, kind: Option<SourceKind>) -> Result<SourceSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, kind)
}

pub fn kind_name(kind: SourceKind) -> &'static str {
    match kind {
        SourceKind::Bits => "bits",
        SourceKind::Gaussian => "gaussian",
        SourceKind::Samples => "samples",
        SourceKind::Table => "table",
    }
}

pub fn parse_kind(name: &str) -> std::result::Result<SourceKind, String> {
    match name {
        "bits" => Ok(SourceKind::Bits),
        "gaussian" => Ok(SourceKind::Gaussian),
        "samples" => Ok(SourceKind::Samples),
        "table" => Ok(SourceKind::Table),
        other => Err(format!("unknown source kind `{other}` (expected bits, gaussian, samples or table)")),
    }
}

impl SourceSpec {
    /// Builds the entropy oracle; `tol` is the slack for checking table sources.
    pub fn build(&self, tol: f64) -> Result<EntropyOracle> {
        let oracle = match self {
            SourceSpec::Bits { universe, vars } => {
                if universe.len() > MAX_ELEMENTS {
                    return Err(CliError::Schema(format!("at most {MAX_ELEMENTS} bits are supported")));
                }
                let index: HashMap<&str, usize> = universe.iter().enumerate().map(|(i, b)| (b.as_str(), i)).collect();
                if index.len() != universe.len() {
                    return Err(CliError::Schema("universe lists a bit twice".into()));
                }
                let sets = vars
                    .iter()
                    .enumerate()
                    .map(|(v, bits)| {
                        bits.iter()
                            .map(|b| {
                                index.get(b.as_str()).copied().ok_or_else(|| {
                                    CliError::Schema(format!("variable {} uses bit `{b}` outside the universe", v + 1))
                                })
                            })
                            .collect::<Result<Subset>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                EntropyOracle::bits(sets)?
            }
            SourceSpec::Gaussian { cov } => EntropyOracle::gaussian(cov)?,
            SourceSpec::Samples { rows } => EntropyOracle::samples(&intern(rows)?)?,
            SourceSpec::Table { n, values, entropic } => {
                if *n > 30 || values.len() != 1usize << n {
                    return Err(CliError::Schema(format!("a table over {n} variables needs 2^{n} values")));
                }
                EntropyOracle::table(values.clone(), *entropic, tol)?
            }
        };
        Ok(oracle)
    }
}

/// Replaces each column's distinct scalars by symbol numbers in order of first appearance.
fn intern(rows: &[Vec<Value>]) -> Result<Vec<Vec<u32>>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut symbols: Vec<HashMap<String, u32>> = vec![HashMap::new(); width];
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != width {
                return Err(CliError::InvalidSource(format!("row {} has {} entries, expected {width}", r + 1, row.len())));
            }
            row.iter()
                .zip(symbols.iter_mut())
                .map(|(v, table)| {
                    if v.is_array() || v.is_object() {
                        return Err(CliError::Schema(format!("row {} holds a non-scalar entry", r + 1)));
                    }
                    let next = table.len() as u32;
                    Ok(*table.entry(v.to_string()).or_insert(next))
                })
                .collect()
        })
        .collect()
}
