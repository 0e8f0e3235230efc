//! `matching.json`: a matching with its points, readable without the
//! instance file.

use serde::{Deserialize, Serialize};

use super::{Edge, Matching, Method};
use crate::points::PointSet;
use crate::{CostSpec, Error, Result};

pub const MATCHING_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchingFile {
    version: u32,
    method: Method,
    cost: CostSpec,
    perm: Vec<usize>,
    edges: Vec<Edge>,
    total_cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    step_minima: Option<Vec<f64>>,
    d: usize,
    #[serde(rename = "X")]
    x: Vec<Vec<f64>>,
    #[serde(rename = "Y")]
    y: Vec<Vec<f64>>,
}

pub fn matching_to_json(m: &Matching, x: &PointSet, y: &PointSet) -> String {
    let file = MatchingFile {
        version: MATCHING_SCHEMA_VERSION,
        method: m.method,
        cost: m.cost,
        perm: m.perm.clone(),
        edges: m.edges.clone(),
        total_cost: m.total_cost(),
        step_minima: m.step_minima.clone(),
        d: x.dim(),
        x: x.to_rows(),
        y: y.to_rows(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("matching serializes");
    s.push('\n');
    s
}

/// Parses a matching document back into the matching and its two point sets.
pub fn matching_from_json(text: &str) -> Result<(Matching, PointSet, PointSet)> {
    let raw: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matching file: {e}")))?;
    match raw.get("version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == MATCHING_SCHEMA_VERSION as u64 => {}
        other => {
            return Err(Error::Schema(format!(
                "field `version`: expected {MATCHING_SCHEMA_VERSION}, found {other:?}"
            )))
        }
    }
    let f: MatchingFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matching file: {e}")))?;
    let x = PointSet::new(f.d, &f.x).map_err(|e| Error::Parse(format!("field `X`: {e}")))?;
    let y = PointSet::new(f.d, &f.y).map_err(|e| Error::Parse(format!("field `Y`: {e}")))?;
    if x.len() != y.len() || x.len() != f.perm.len() {
        return Err(Error::Parse("fields `X`, `Y`, `perm`: sizes differ".into()));
    }
    let m = Matching {
        method: f.method,
        cost: f.cost,
        perm: f.perm,
        edges: f.edges,
        step_minima: f.step_minima,
    };
    m.check_bijection()
        .map_err(|e| Error::Parse(format!("field `perm`: {e}")))?;
    if m.edges.iter().any(|e| e.i >= x.len() || e.j >= y.len()) {
        return Err(Error::Parse("field `edges`: index out of range".into()));
    }
    Ok((m, x, y))
}
