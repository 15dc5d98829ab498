//! JSON fixture format: `{"order": 4, "edges": [[0, 1], [1, 2]], "label": "P3+K1"}`.
//! Edge endpoints are 0-indexed; `label` is optional.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = value.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(value.order, &edges)?;
        g.set_label(value.label);
        Ok(g)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            order: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            label: g.label().map(str::to_owned),
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::GraphJson(e.to_string()))?;
    raw.try_into()
}

/// Accepts either a single graph object or an array of them.
pub fn graphs_from_json(text: &str) -> Result<Vec<Graph>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::GraphJson(e.to_string()))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| {
            let raw: GraphJson = serde_json::from_value(v).map_err(|e| Error::GraphJson(e.to_string()))?;
            Graph::try_from(raw)
        })
        .collect()
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serializes")
}
