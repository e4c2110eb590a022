//! Simple undirected graphs over dense vertex indices with bit-row adjacency.

mod io;
mod ops;
mod traverse;

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::{iter_words, words_for, Iter, VertexSet};
use crate::error::{Error, Result};

pub use io::{read_graph, write_graph};
pub use ops::{compact, min_degree_subgraph, power_graph, PeeledSubgraph};
pub use traverse::{
    bfs_distances, bfs_distances_within, bfs_layers, bfs_layers_within, components, diameter,
    is_connected, shortest_path_to_set, two_coloring, LayerDecomposition,
};

/// Upper bound on vertex count accepted by [`Graph::new`].
pub const MAX_VERTICES: usize = 4096;

const _: () = assert!(MAX_VERTICES % 64 == 0 && MAX_VERTICES <= 1 << 16);

/// A length that may be unbounded: diameters of disconnected graphs, girth of forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extent::Finite(d) => Some(d),
            Extent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extent::Infinite)
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(d) => write!(f, "{d}"),
            Extent::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(d) => s.serialize_u64(*d as u64),
            Extent::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(v) => Ok(Extent::Finite(v as usize)),
            Repr::S(s) if s == "infinite" => Ok(Extent::Infinite),
            Repr::S(s) => Err(serde::de::Error::custom(format!("bad extent {s:?}"))),
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency is symmetric and irreflexive. When bipartite metadata is present the
/// parts are `0..m` and `m..n`, and every edge crosses them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
    left: Option<usize>,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "graph order {n} exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        let stride = words_for(n).max(1);
        Ok(Self {
            n,
            stride,
            adj: vec![0; stride * n],
            left: None,
            edges: 0,
        })
    }

    /// Empty bipartite graph with parts `0..m` and `m..m+n`.
    pub fn bipartite(m: usize, n: usize) -> Result<Self> {
        let mut g = Self::new(m + n)?;
        g.left = Some(m);
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Bipartite metadata as a pair of index ranges.
    pub fn parts(&self) -> Option<(Range<usize>, Range<usize>)> {
        self.left.map(|m| (0..m, m..self.n))
    }

    pub fn left_size(&self) -> Option<usize> {
        self.left
    }

    /// Attaches bipartite metadata `0..m`, `m..n`; fails if an edge lies inside a part.
    pub fn set_parts(&mut self, m: usize) -> Result<()> {
        if m > self.n {
            return Err(Error::input(format!("part size {m} exceeds order {}", self.n)));
        }
        for (u, v) in self.edges() {
            if (u < m) == (v < m) {
                return Err(Error::input(format!("edge {u}-{v} lies inside a part")));
            }
        }
        self.left = Some(m);
        Ok(())
    }

    pub fn clear_parts(&mut self) {
        self.left = None;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::input(format!("vertex {v} out of range (n = {})", self.n)))
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::input(format!("self-loop at {u}")));
        }
        if let Some(m) = self.left {
            if (u < m) == (v < m) {
                return Err(Error::input(format!("edge {u}-{v} lies inside a part")));
            }
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.set_bit(u, v);
        self.set_bit(v, u);
        self.edges += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.stride + u / 64] &= !(1 << (u % 64));
        self.edges -= 1;
        true
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize) {
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.stride + v / 64] & (1 << (v % 64)) != 0
    }

    /// Neighbour bit row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Iter<'_> {
        iter_words(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.n, self.neighbors(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        set.intersection_len(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree, or `None` for the empty graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Subgraph on the same index space keeping only edges with both ends in `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut g = Graph {
            n: self.n,
            stride: self.stride,
            adj: vec![0; self.adj.len()],
            left: self.left,
            edges: 0,
        };
        let mut twice = 0;
        for v in keep.iter().filter(|&v| v < self.n) {
            let dst = &mut g.adj[v * self.stride..(v + 1) * self.stride];
            for (i, (d, s)) in dst.iter_mut().zip(self.row(v)).enumerate() {
                *d = *s & keep.words().get(i).copied().unwrap_or(0);
            }
            twice += dst.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        }
        g.edges = twice / 2;
        g
    }

    /// Spanning subgraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph {
            n: self.n,
            stride: self.stride,
            adj: vec![0; self.adj.len()],
            left: self.left,
            edges: 0,
        };
        for (u, v) in self.edges() {
            if keep(u, v) {
                g.set_bit(u, v);
                g.set_bit(v, u);
                g.edges += 1;
            }
        }
        g
    }

    /// Vertices of non-zero degree.
    pub fn non_isolated(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.n, (0..self.n).filter(|&v| self.degree(v) > 0))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("parts", &self.left)
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<usize>,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            left: self.left,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        let mut g = Graph::from_edges(r.n, &r.edges).map_err(serde::de::Error::custom)?;
        if let Some(m) = r.left {
            g.set_parts(m).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).expect("complete");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("edge");
            }
        }
        g
    }

    /// `K_{a,b}` with bipartite metadata.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::bipartite(a, b).expect("kab");
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("edge");
            }
        }
        g
    }

    /// Star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_remove_and_degrees() {
        let mut g = Graph::new(5).unwrap();
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        g.add_edge(1, 4).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 4)]);
        assert!(g.remove_edge(4, 1));
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(g.add_edge(2, 2), Err(Error::Input(_))));
        assert!(g.add_edge(0, 9).is_err());
    }

    #[test]
    fn parts_are_enforced() {
        let mut g = Graph::bipartite(2, 2).unwrap();
        assert!(g.add_edge(0, 1).is_err());
        g.add_edge(0, 3).unwrap();
        assert_eq!(g.parts(), Some((0..2, 2..4)));
        let mut h = named::cycle(3);
        assert!(h.set_parts(1).is_err());
    }

    #[test]
    fn order_cap() {
        assert!(Graph::new(MAX_VERTICES).is_ok());
        assert!(Graph::new(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn induced_keeps_only_inner_edges() {
        let g = named::complete(5);
        let keep = VertexSet::from_iter_with_capacity(5, [0, 2, 3]);
        let h = g.induced(&keep);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.degree(1), 0);
    }

    #[test]
    fn serde_round_trip() {
        let g = named::complete_bipartite(2, 3);
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        let e: Extent = serde_json::from_str("\"infinite\"").unwrap();
        assert!(e.is_infinite());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = named::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }
}
