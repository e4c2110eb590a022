use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Paths from a common root, one per endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub root: usize,
    /// `paths[i]` runs from `root` to `endpoints[i]`.
    pub endpoints: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    /// Vertex to number of paths through it, root excluded, zero counts omitted.
    pub usage: BTreeMap<usize, usize>,
    /// Usage count to number of vertices with that count.
    pub usage_histogram: BTreeMap<usize, usize>,
    /// No endpoint occurs inside another path.
    pub endpoint_pure: bool,
    /// Set when construction stopped because no path could be added.
    pub maximal: bool,
}

impl PathFamily {
    pub fn new(root: usize, paths: Vec<Vec<usize>>, maximal: bool) -> Self {
        let endpoints = paths.iter().map(|p| *p.last().expect("paths are non-empty")).collect();
        let mut f = Self {
            root,
            endpoints,
            paths,
            usage: BTreeMap::new(),
            usage_histogram: BTreeMap::new(),
            endpoint_pure: false,
            maximal,
        };
        f.usage = f.recount_usage();
        f.usage_histogram = histogram(&f.usage);
        f.endpoint_pure = f.check_endpoint_purity();
        f
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path_to(&self, v: usize) -> Option<&[usize]> {
        self.endpoints.iter().position(|&e| e == v).map(|i| self.paths[i].as_slice())
    }

    pub fn max_usage(&self) -> usize {
        self.usage.values().copied().max().unwrap_or(0)
    }

    /// Keeps the paths whose index passes `keep`; the maximality flag is dropped.
    pub fn retain(&self, mut keep: impl FnMut(usize, &[usize]) -> bool) -> PathFamily {
        let paths = self
            .paths
            .iter()
            .enumerate()
            .filter(|(i, p)| keep(*i, p))
            .map(|(_, p)| p.clone())
            .collect();
        PathFamily::new(self.root, paths, false)
    }

    fn recount_usage(&self) -> BTreeMap<usize, usize> {
        let mut usage = BTreeMap::new();
        for p in &self.paths {
            for &x in p.iter().filter(|&&x| x != self.root) {
                *usage.entry(x).or_insert(0) += 1;
            }
        }
        usage
    }

    fn check_endpoint_purity(&self) -> bool {
        let ends: BTreeSet<usize> = self.endpoints.iter().copied().collect();
        self.paths
            .iter()
            .all(|p| p[..p.len() - 1].iter().all(|x| !ends.contains(x)))
    }

    /// Structural re-check: simple paths along edges of `g`, distinct endpoints, and
    /// bookkeeping that matches a recount.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.paths.len() != self.endpoints.len() {
            return Err("endpoint list and path list differ in length".into());
        }
        let mut seen_ends = BTreeSet::new();
        for (p, &e) in self.paths.iter().zip(&self.endpoints) {
            if p.first() != Some(&self.root) || p.last() != Some(&e) {
                return Err(format!("path to {e} does not run from the root to {e}"));
            }
            if !seen_ends.insert(e) {
                return Err(format!("endpoint {e} repeated"));
            }
            let distinct: BTreeSet<_> = p.iter().collect();
            if distinct.len() != p.len() {
                return Err(format!("path to {e} repeats a vertex"));
            }
            if let Some(w) = p.windows(2).find(|w| w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1])) {
                return Err(format!("path to {e} uses non-edge {}-{}", w[0], w[1]));
            }
        }
        if self.usage != self.recount_usage() {
            return Err("usage counts differ from recount".into());
        }
        if self.usage_histogram != histogram(&self.usage) {
            return Err("usage histogram differs from recount".into());
        }
        if self.endpoint_pure && !self.check_endpoint_purity() {
            return Err("an endpoint lies inside another path".into());
        }
        Ok(())
    }
}

fn histogram(usage: &BTreeMap<usize, usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in usage.values() {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReachMode {
    /// Adds every newly reachable vertex of one search before recomputing the blocked set.
    #[default]
    Batch,
    /// Adds one vertex per search.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachOptions {
    pub ell_max: usize,
    /// Most paths a non-root vertex may lie on; `None` means `ceil(n / ln n)`.
    pub cap: Option<usize>,
    /// Stop once this many endpoints are collected; `None` runs to exhaustion.
    pub target: Option<usize>,
    pub mode: ReachMode,
}

impl ReachOptions {
    pub fn new(ell_max: usize) -> Self {
        Self {
            ell_max,
            cap: None,
            target: None,
            mode: ReachMode::Batch,
        }
    }
}

/// `ceil(n / ln n)`, and `n` itself below 3 where the logarithm is too small.
pub fn default_cap(n: usize) -> usize {
    if n < 3 {
        n.max(1)
    } else {
        (n as f64 / (n as f64).ln()).ceil() as usize
    }
}

/// Breadth-first tree from `root` avoiding `blocked`, to depth `ell_max`. Returns the
/// visit order (root first) and parent pointers.
fn bfs_tree(g: &Graph, root: usize, blocked: &[bool], ell_max: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    let mut depth = vec![0; g.n()];
    parent[root] = root;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        if depth[x] == ell_max {
            continue;
        }
        for y in g.neighbors(x) {
            if parent[y] == usize::MAX && !blocked[y] {
                parent[y] = x;
                depth[y] = depth[x] + 1;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    (order, parent)
}

fn trace(parent: &[usize], root: usize, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while v != root {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Greedy family of short root paths in which no vertex but the root is overused.
///
/// Each round blocks the vertices already on `cap` paths, searches from `u` to depth
/// `ell_max`, and adds a shortest path to newly reached vertices while every vertex on
/// it stays under the cap.
pub fn robust_reach(g: &Graph, u: usize, opts: &ReachOptions) -> Result<PathFamily> {
    if u >= g.n() {
        return Err(Error::input(format!("root {u} out of range (n = {})", g.n())));
    }
    if opts.ell_max == 0 {
        return Err(Error::input("ell_max must be at least 1"));
    }
    let cap = opts.cap.unwrap_or_else(|| default_cap(g.n()));
    if cap == 0 {
        return Err(Error::input("cap must be at least 1"));
    }
    let target = opts.target.unwrap_or(usize::MAX);
    let n = g.n();
    let mut usage = vec![0usize; n];
    let mut in_s = vec![false; n];
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut maximal = false;
    while paths.len() < target {
        let blocked: Vec<bool> = (0..n).map(|v| v != u && usage[v] >= cap).collect();
        let (order, parent) = bfs_tree(g, u, &blocked, opts.ell_max);
        let mut added = 0;
        for &z in &order[1..] {
            if in_s[z] || paths.len() >= target {
                continue;
            }
            let path = trace(&parent, u, z);
            if path[1..].iter().any(|&x| usage[x] >= cap) {
                continue;
            }
            for &x in &path[1..] {
                usage[x] += 1;
            }
            in_s[z] = true;
            paths.push(path);
            added += 1;
            if opts.mode == ReachMode::Strict {
                break;
            }
        }
        if added == 0 {
            maximal = true;
            break;
        }
    }
    Ok(PathFamily::new(u, paths, maximal))
}

/// Independent confirmation of maximality: a plain BFS in `g` minus the saturated
/// vertices reaches no vertex outside the family within `ell_max` steps.
pub fn confirm_maximal(g: &Graph, family: &PathFamily, ell_max: usize, cap: usize) -> bool {
    let ends: BTreeSet<usize> = family.endpoints.iter().copied().collect();
    let full: BTreeSet<usize> = family.usage.iter().filter(|(_, &c)| c >= cap).map(|(&v, _)| v).collect();
    let mut dist = vec![usize::MAX; g.n()];
    dist[family.root] = 0;
    let mut queue = VecDeque::from([family.root]);
    while let Some(x) = queue.pop_front() {
        if x != family.root && !ends.contains(&x) {
            return false;
        }
        if dist[x] < ell_max {
            for y in g.neighbors(x) {
                if dist[y] == usize::MAX && !full.contains(&y) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{polarity_graph, PrimePower};
    use crate::graph::named;

    fn opts(ell_max: usize, cap: usize) -> ReachOptions {
        ReachOptions {
            cap: Some(cap),
            ..ReachOptions::new(ell_max)
        }
    }

    #[test]
    fn star_reaches_every_leaf() {
        let g = named::star(5);
        let f = robust_reach(&g, 0, &opts(1, 1)).unwrap();
        assert_eq!(f.endpoints, vec![1, 2, 3, 4, 5]);
        assert!(f.paths.iter().all(|p| p.len() == 2));
        assert!(f.maximal);
        f.validate(&g).unwrap();
    }

    #[test]
    fn short_path_respects_cap() {
        let g = named::path(3);
        let f = robust_reach(&g, 0, &opts(2, 1)).unwrap();
        assert_eq!(f.endpoints, vec![1]);
        assert!(f.maximal);
        assert!(confirm_maximal(&g, &f, 2, 1));
        let f = robust_reach(&g, 0, &opts(2, 2)).unwrap();
        assert_eq!(f.endpoints, vec![1, 2]);
        assert_eq!(f.usage[&1], 2);
    }

    #[test]
    fn strict_and_batch_agree_on_a_star() {
        let g = named::star(4);
        let mut o = opts(1, 1);
        let a = robust_reach(&g, 0, &o).unwrap();
        o.mode = ReachMode::Strict;
        let b = robust_reach(&g, 0, &o).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn target_stops_early() {
        let g = named::star(6);
        let f = robust_reach(&g, 0, &ReachOptions { target: Some(3), ..opts(1, 1) }).unwrap();
        assert_eq!(f.len(), 3);
        assert!(!f.maximal);
    }

    #[test]
    fn polarity_graph_regression() {
        let g = polarity_graph(PrimePower::new(3).unwrap()).unwrap();
        let cap = default_cap(g.n());
        assert_eq!(cap, 6);
        let f = robust_reach(&g, 0, &opts(3, cap)).unwrap();
        f.validate(&g).unwrap();
        assert!(f.max_usage() <= cap);
        assert!(2 * f.len() >= g.n());
        assert!(f.maximal && confirm_maximal(&g, &f, 3, cap));
        assert_eq!(f.len(), 12);
    }

    #[test]
    fn validate_catches_tampering() {
        let g = named::star(3);
        let mut f = robust_reach(&g, 0, &opts(1, 1)).unwrap();
        f.usage.insert(1, 5);
        assert!(f.validate(&g).is_err());
    }
}
