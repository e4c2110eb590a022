use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Extent, Graph};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Distance layers `N_0 = {root}, N_1, ...` of a breadth-first search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDecomposition {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    /// `ball_sizes[i] = |N_0 ∪ ... ∪ N_i|`.
    pub ball_sizes: Vec<usize>,
}

impl LayerDecomposition {
    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        self.layers.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn layer_len(&self, i: usize) -> usize {
        self.layers.get(i).map_or(0, Vec::len)
    }

    /// `|B_i|`; balls stop growing past the last layer.
    pub fn ball_size(&self, i: usize) -> usize {
        match self.ball_sizes.get(i) {
            Some(&s) => s,
            None => self.ball_sizes.last().copied().unwrap_or(0),
        }
    }

    pub fn ball(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().take(i + 1).flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Distance of each vertex from the root, `None` when unreachable.
    pub fn distances(&self, n: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                d[v] = Some(i);
            }
        }
        d
    }
}

pub fn bfs_layers(g: &Graph, u: usize) -> Result<LayerDecomposition> {
    bfs_layers_within(g, u, None, usize::MAX)
}

/// Layers from `u` in the subgraph induced by `allowed` (all vertices when `None`),
/// stopping after `max_depth` layers.
pub fn bfs_layers_within(
    g: &Graph,
    u: usize,
    allowed: Option<&VertexSet>,
    max_depth: usize,
) -> Result<LayerDecomposition> {
    if u >= g.n() {
        return Err(Error::input(format!("root {u} out of range (n = {})", g.n())));
    }
    if allowed.is_some_and(|a| !a.contains(u)) {
        return Err(Error::input(format!("root {u} is not in the allowed set")));
    }
    let mut seen = VertexSet::new(g.n());
    seen.insert(u);
    let mut layers = vec![vec![u]];
    let mut ball_sizes = vec![1];
    while layers.len() <= max_depth {
        let mut next = VertexSet::new(g.n());
        for &x in layers.last().unwrap() {
            next.union_with(g.row(x));
        }
        next.difference_with(seen.words());
        if let Some(a) = allowed {
            next.intersect_with(a.words());
        }
        if next.is_empty() {
            break;
        }
        seen.union_with(next.words());
        let layer = next.to_vec();
        ball_sizes.push(ball_sizes.last().unwrap() + layer.len());
        layers.push(layer);
    }
    Ok(LayerDecomposition {
        root: u,
        layers,
        ball_sizes,
    })
}

pub fn bfs_distances(g: &Graph, u: usize) -> Vec<Option<usize>> {
    bfs_distances_within(g, u, None)
}

pub fn bfs_distances_within(g: &Graph, u: usize, allowed: Option<&VertexSet>) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    if u >= g.n() || allowed.is_some_and(|a| !a.contains(u)) {
        return dist;
    }
    dist[u] = Some(0);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for y in g.neighbors(x) {
            if dist[y].is_none() && allowed.is_none_or(|a| a.contains(y)) {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Maximum distance over reachable pairs; `Infinite` iff the graph is disconnected.
pub fn diameter(g: &Graph) -> Extent {
    let mut best = 0;
    for u in 0..g.n() {
        let d = bfs_distances(g, u);
        for dv in d {
            match dv {
                None => return Extent::Infinite,
                Some(x) => best = best.max(x),
            }
        }
    }
    Extent::Finite(best)
}

/// Connected components, each sorted, listed by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || bfs_distances(g, 0).iter().all(Option::is_some)
}

/// A proper 2-colouring (`false`/`true` per vertex), or `None` if an odd cycle exists.
/// Each component's smallest vertex gets `false`.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for y in g.neighbors(x) {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Shortest path (as a vertex sequence) from `from` to any vertex of `targets`,
/// moving only through `allowed` when given. Ties go to the BFS-first target.
pub fn shortest_path_to_set(
    g: &Graph,
    from: usize,
    targets: &VertexSet,
    allowed: Option<&VertexSet>,
) -> Option<Vec<usize>> {
    if from >= g.n() {
        return None;
    }
    if targets.contains(from) {
        return Some(vec![from]);
    }
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if parent[y] != usize::MAX || allowed.is_some_and(|a| !a.contains(y)) {
                continue;
            }
            parent[y] = x;
            if targets.contains(y) {
                let mut path = vec![y];
                let mut cur = y;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn path_layers() {
        let g = named::path(3);
        let l = bfs_layers(&g, 0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(l.ball_sizes, vec![1, 2, 3]);
    }

    #[test]
    fn star_layers() {
        let g = named::star(4);
        let l = bfs_layers(&g, 0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn unreachable_vertices_are_absent() {
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let l = bfs_layers(&g, 0).unwrap();
        assert_eq!(l.ball_size(5), 2);
        assert!(bfs_layers(&g, 4).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&named::complete(5)), Extent::Finite(1));
        assert_eq!(diameter(&named::cycle(6)), Extent::Finite(3));
        assert_eq!(diameter(&Graph::new(3).unwrap()), Extent::Infinite);
        assert_eq!(diameter(&Graph::new(1).unwrap()), Extent::Finite(0));
    }

    #[test]
    fn coloring_detects_odd_cycles() {
        assert!(two_coloring(&named::cycle(5)).is_none());
        let c = two_coloring(&named::cycle(6)).unwrap();
        assert_eq!(c, vec![false, true, false, true, false, true]);
    }

    #[test]
    fn shortest_path_respects_allowed() {
        let g = named::cycle(6);
        let t = VertexSet::from_iter_with_capacity(6, [3]);
        assert_eq!(shortest_path_to_set(&g, 0, &t, None).unwrap().len(), 4);
        let allowed = VertexSet::from_iter_with_capacity(6, [0, 5, 4, 3]);
        assert_eq!(
            shortest_path_to_set(&g, 0, &t, Some(&allowed)).unwrap(),
            vec![0, 5, 4, 3]
        );
    }
}
