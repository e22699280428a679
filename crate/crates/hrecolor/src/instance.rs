//! Instance and witness files.
//!
//! An instance is a JSON object with a target graph `H`, a domain graph `G`,
//! colorings `alpha` and `beta` as vertex-to-color name maps, and an
//! optional base vertex `q`. Loops are written as repeated pairs. Unknown
//! keys are rejected so typos fail loudly. Serialization is deterministic:
//! vertex lists sorted, edge pairs sorted, map keys sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Coloring, Graph, GraphError};
use crate::reconfig::RecoloringStep;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("step {index}: {message}")]
    Step { index: usize, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(rename = "H")]
    h: RawGraph,
    #[serde(rename = "G")]
    g: RawGraph,
    alpha: BTreeMap<String, String>,
    beta: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
}

/// A parsed instance. Graph-level validity (known names, no duplicates) is
/// established here; semantic preconditions (connectivity, the target
/// property, homomorphy) are deliberately left to the engine so callers can
/// distinguish malformed files from well-formed but invalid instances.
#[derive(Debug, Clone)]
pub struct Instance {
    pub g: Graph,
    pub h: Graph,
    pub alpha: Coloring,
    pub beta: Coloring,
    pub q: usize,
    pub q_explicit: bool,
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
    let h = Graph::new(&raw.h.vertices, &raw.h.edges, true)?;
    // Loops in G are a semantic precondition, not a shape error, so build
    // permissively and let the engine report them.
    let g = Graph::new(&raw.g.vertices, &raw.g.edges, true)?;
    let alpha = Coloring::from_map(&g, &h, &raw.alpha)?;
    let beta = Coloring::from_map(&g, &h, &raw.beta)?;
    let (q, q_explicit) = match &raw.q {
        Some(name) => (g.index_of(name)?, true),
        None => (0, false),
    };
    Ok(Instance {
        g,
        h,
        alpha,
        beta,
        q,
        q_explicit,
    })
}

fn raw_graph(g: &Graph) -> RawGraph {
    RawGraph {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .into_iter()
            .map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()))
            .collect(),
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    let raw = RawInstance {
        h: raw_graph(&inst.h),
        g: raw_graph(&inst.g),
        alpha: inst.alpha.to_map(&inst.g, &inst.h),
        beta: inst.beta.to_map(&inst.g, &inst.h),
        q: inst
            .q_explicit
            .then(|| inst.g.name(inst.q).to_string()),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("instance serialization is total");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    vertex: String,
    from: String,
    to: String,
}

/// Witness files are a JSON array of steps in order, with graph vertex and
/// color names rather than indices.
pub fn witness_to_json(g: &Graph, h: &Graph, steps: &[RecoloringStep]) -> String {
    let raw: Vec<RawStep> = steps
        .iter()
        .map(|s| RawStep {
            vertex: g.name(s.vertex).to_string(),
            from: h.name(s.from).to_string(),
            to: h.name(s.to).to_string(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&raw).expect("witness serialization is total");
    out.push('\n');
    out
}

pub fn witness_from_json(
    g: &Graph,
    h: &Graph,
    text: &str,
) -> Result<Vec<RecoloringStep>, InstanceError> {
    let raw: Vec<RawStep> =
        serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
    raw.iter()
        .enumerate()
        .map(|(index, s)| {
            let resolve = || -> Result<RecoloringStep, GraphError> {
                Ok(RecoloringStep {
                    vertex: g.index_of(&s.vertex)?,
                    from: h.index_of(&s.from)?,
                    to: h.index_of(&s.to)?,
                })
            };
            resolve().map_err(|e| InstanceError::Step {
                index,
                message: e.to_string(),
            })
        })
        .collect()
}
