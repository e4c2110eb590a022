use std::collections::{BTreeSet, VecDeque};

use super::{Pattern, Witness, MAX_CYCLE};
use crate::bitset::{iter_words, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances_within, two_coloring, Extent, Graph};
use crate::par::{self, Exec};

/// A cycle on exactly `len` vertices, or `None` when there is none.
///
/// Each start vertex `s` is taken as the cycle's minimum; the search extends simple
/// paths through vertices `> s` in ascending order and prunes any branch whose
/// remaining budget cannot reach back to `s`. The orientation with the smaller second
/// vertex is reported, so the witness is the lexicographically first.
pub fn find_cycle_exact(g: &Graph, len: usize) -> Result<Option<Witness>> {
    find_cycle_exact_with(g, len, Exec::default())
}

pub fn find_cycle_exact_with(g: &Graph, len: usize, exec: Exec) -> Result<Option<Witness>> {
    if !(3..=MAX_CYCLE).contains(&len) {
        return Err(Error::input(format!("cycle length {len} outside 3..={MAX_CYCLE}")));
    }
    let bipartite = two_coloring(g).is_some();
    Ok(search(g, len, bipartite, exec))
}

fn search(g: &Graph, len: usize, bipartite: bool, exec: Exec) -> Option<Witness> {
    let n = g.n();
    if len > n || (bipartite && len % 2 == 1) {
        return None;
    }
    par::find_map_first(exec, 0..n, |s| {
        if g.degree(s) < 2 {
            return None;
        }
        let allowed = VertexSet::from_iter_with_capacity(n, (s..n).filter(|&v| g.degree(v) >= 2));
        let dist = bfs_distances_within(g, s, Some(&allowed));
        let mut searcher = CycleSearch {
            g,
            len,
            start: s,
            allowed: &allowed,
            dist: &dist,
            bipartite,
            path: vec![s],
            on_path: VertexSet::from_iter_with_capacity(n, [s]),
        };
        searcher.extend().then(|| Witness {
            pattern: Pattern::cycle(len),
            vertices: searcher.path,
        })
    })
}

struct CycleSearch<'a> {
    g: &'a Graph,
    len: usize,
    start: usize,
    allowed: &'a VertexSet,
    dist: &'a [Option<usize>],
    bipartite: bool,
    path: Vec<usize>,
    on_path: VertexSet,
}

impl CycleSearch<'_> {
    fn extend(&mut self) -> bool {
        let x = *self.path.last().unwrap();
        if self.path.len() == self.len {
            return self.g.has_edge(x, self.start) && self.path[1] < x;
        }
        let remaining = self.len - self.path.len();
        let next: Vec<u64> = self
            .g
            .row(x)
            .iter()
            .zip(self.allowed.words())
            .zip(self.on_path.words())
            .map(|((r, a), p)| r & a & !p)
            .collect();
        for y in iter_words(&next) {
            let Some(d) = self.dist[y] else { continue };
            if d > remaining || (self.bipartite && (remaining - d) % 2 == 1) {
                continue;
            }
            self.path.push(y);
            self.on_path.insert(y);
            if self.extend() {
                return true;
            }
            self.on_path.remove(y);
            self.path.pop();
        }
        false
    }
}

/// Set of cycle lengths `<= max_len` occurring in `g`.
pub fn cycle_spectrum(g: &Graph, max_len: usize) -> Result<BTreeSet<usize>> {
    if max_len > MAX_CYCLE {
        return Err(Error::input(format!("spectrum bound {max_len} exceeds {MAX_CYCLE}")));
    }
    let bipartite = two_coloring(g).is_some();
    let Extent::Finite(gi) = girth(g) else {
        return Ok(BTreeSet::new());
    };
    let exec = Exec::default();
    Ok((gi..=max_len.min(g.n()))
        .filter(|&len| search(g, len, bipartite, exec).is_some())
        .collect())
}

/// Length of a shortest cycle; `Infinite` for forests.
pub fn girth(g: &Graph) -> Extent {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = root;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Extent::Infinite
    } else {
        Extent::Finite(best)
    }
}
