use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{min_degree_subgraph, two_coloring, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelReport {
    /// `delta n^{alpha - 1}` for the original order `n`.
    pub threshold: f64,
    /// Vertices in removal order.
    pub removed: Vec<usize>,
    pub removed_edges: usize,
    /// Remainder on the original index space; removed vertices are isolated.
    #[serde(rename = "H")]
    pub h: Graph,
    #[serde(rename = "H_bipartite")]
    pub h_bipartite: bool,
    pub edges_before: usize,
    pub edges_after: usize,
    /// `e(G) - t * threshold`.
    pub edge_floor: f64,
    /// `e(H) >= e(G) - t * threshold`.
    pub inequality_holds: bool,
}

/// Deletes vertices of degree below `delta n^{alpha-1}` one at a time until none is left.
pub fn peel_bipartize(g: &Graph, delta: f64, alpha: f64) -> Result<PeelReport> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::input(format!("delta must be positive, got {delta}")));
    }
    if !(alpha.is_finite() && 1.0 < alpha && alpha < 2.0) {
        return Err(Error::input(format!("alpha must lie in (1, 2), got {alpha}")));
    }
    let threshold = delta * (g.n() as f64).powf(alpha - 1.0);
    // degree < threshold  <=>  degree < ceil(threshold)
    let floor = threshold.ceil() as usize;
    let peeled = min_degree_subgraph(g, floor);
    let t = peeled.removed.len();
    let edges_after = peeled.graph.edge_count();
    let edge_floor = g.edge_count() as f64 - t as f64 * threshold;
    // every removal deletes at most floor - 1 edges, so the exact form is
    // removed_edges <= t (floor - 1); the real bound follows from it
    let exact = peeled.removed_edges <= t * floor.saturating_sub(1);
    Ok(PeelReport {
        threshold,
        removed: peeled.removed,
        removed_edges: peeled.removed_edges,
        h_bipartite: two_coloring(&peeled.graph).is_some(),
        h: peeled.graph,
        edges_before: g.edge_count(),
        edges_after,
        edge_floor,
        inequality_holds: exact && edges_after as f64 >= edge_floor,
    })
}
