use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{bfs_layers_within, Graph};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Result of peeling low-degree vertices. `graph` keeps the original index space;
/// removed vertices are isolated in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeeledSubgraph {
    pub graph: Graph,
    pub kept: Vec<usize>,
    /// Removal order.
    pub removed: Vec<usize>,
    /// Edges deleted together with the removed vertices.
    pub removed_edges: usize,
}

impl PeeledSubgraph {
    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn kept_set(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.graph.n(), self.kept.iter().copied())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.kept.iter().map(|&v| self.graph.degree(v)).min()
    }
}

/// Repeatedly deletes the lowest-indexed vertex of current degree `< d` until
/// none remain. Only vertices in `within` (all when `None`) are considered present.
pub fn min_degree_subgraph(g: &Graph, d: usize) -> PeeledSubgraph {
    peel_within(g, d, None)
}

pub(crate) fn peel_within(g: &Graph, d: usize, within: Option<&VertexSet>) -> PeeledSubgraph {
    let n = g.n();
    let present = match within {
        Some(w) => w.clone(),
        None => VertexSet::full(n),
    };
    let mut h = g.induced(&present);
    let mut alive = present;
    let mut deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut violating: BTreeSet<usize> = alive.iter().filter(|&v| deg[v] < d).collect();
    let mut removed = Vec::new();
    let mut removed_edges = 0;
    while let Some(v) = violating.pop_first() {
        alive.remove(v);
        removed.push(v);
        let nbrs: Vec<usize> = h.neighbors(v).collect();
        removed_edges += nbrs.len();
        for x in nbrs {
            h.remove_edge(v, x);
            deg[x] -= 1;
            if deg[x] < d && alive.contains(x) {
                violating.insert(x);
            }
        }
    }
    PeeledSubgraph {
        graph: h,
        kept: alive.to_vec(),
        removed,
        removed_edges,
    }
}

/// Induced subgraph on `keep`, relabelled `0..|keep|` in increasing order, with the
/// map from new to old labels. Part metadata is dropped.
pub fn compact(g: &Graph, keep: &VertexSet) -> (Graph, Vec<usize>) {
    let old: Vec<usize> = keep.iter().filter(|&v| v < g.n()).collect();
    let mut new_of = vec![usize::MAX; g.n()];
    for (i, &v) in old.iter().enumerate() {
        new_of[v] = i;
    }
    let mut h = Graph::new(old.len()).expect("no larger than the source");
    for (i, &v) in old.iter().enumerate() {
        for x in g.neighbors(v) {
            let j = new_of[x];
            if j != usize::MAX && i < j {
                h.add_edge(i, j).expect("labels in range");
            }
        }
    }
    (h, old)
}

/// `uv` is an edge iff `1 <= dist(u, v) <= ell`.
pub fn power_graph(g: &Graph, ell: usize) -> Result<Graph> {
    if ell == 0 {
        return Err(Error::input("power must be at least 1"));
    }
    let mut p = Graph::new(g.n())?;
    for u in 0..g.n() {
        let layers = bfs_layers_within(g, u, None, ell)?;
        for &v in layers.layers.iter().skip(1).flatten() {
            if v > u {
                p.add_edge(u, v)?;
            }
        }
    }
    Ok(p)
}
