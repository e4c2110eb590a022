//! Backtracking over edge slots in lexicographic order.
//!
//! Pruning: a slot is only filled when the new edge completes no forbidden copy;
//! row weights are kept non-increasing (and, for bipartite hosts, column weights too,
//! since rows and columns permute independently, with equal-weight rows further sorted
//! lexicographically); a branch is cut when an upper bound
//! on its reachable edge count cannot beat the best value found so far.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;

use super::small::Small;
use crate::forbidden::Pattern;
use crate::par::{self, Exec};
use crate::rng;

/// Slots decided before the search is split into independent branches.
const FRONTIER_DEPTH: usize = 10;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Layout {
    /// Parts `0..m` and `m..n`; rows are the left vertices.
    Bipartite { m: usize },
    /// Row `r` holds slots `(r, j)` for `j > r`.
    General,
}

pub(crate) struct Problem<'a> {
    n: usize,
    layout: Layout,
    family: &'a [Pattern],
    slots: Vec<(usize, usize)>,
    row_of: Vec<usize>,
    row_end: Vec<usize>,
    /// `tail[k]`: exact optimum for the last `k` rows taken on their own.
    tail: Vec<usize>,
}

struct Branch {
    slot: usize,
    graph: Small,
    edges: usize,
}

impl<'a> Problem<'a> {
    pub fn new(n: usize, layout: Layout, family: &'a [Pattern]) -> Self {
        Self::with_tail(n, layout, family, Vec::new())
    }

    fn with_tail(n: usize, layout: Layout, family: &'a [Pattern], tail: Vec<usize>) -> Self {
        let mut slots = Vec::new();
        let mut row_of = Vec::new();
        match layout {
            Layout::Bipartite { m } => {
                for r in 0..m {
                    for c in m..n {
                        slots.push((r, c));
                        row_of.push(r);
                    }
                }
            }
            Layout::General => {
                for r in 0..n {
                    for j in r + 1..n {
                        slots.push((r, j));
                        row_of.push(r);
                    }
                }
            }
        }
        let mut row_end = vec![0; n];
        for (k, &r) in row_of.iter().enumerate() {
            row_end[r] = k + 1;
        }
        Self {
            n,
            layout,
            family,
            slots,
            row_of,
            row_end,
            tail,
        }
    }

    /// Same problem with the tail bounds filled in by solving every smaller row count
    /// first; the rows after any point form a smaller instance of the same problem.
    fn layered(n: usize, layout: Layout, family: &'a [Pattern], exec: Exec) -> Self {
        let rows = match layout {
            Layout::Bipartite { m } => m,
            Layout::General => n,
        };
        let mut tail = vec![0];
        for k in 1..rows {
            let sub = match layout {
                Layout::Bipartite { m } => Self::with_tail(n - m + k, Layout::Bipartite { m: k }, family, tail.clone()),
                Layout::General => Self::with_tail(k, Layout::General, family, tail.clone()),
            };
            tail.push(sub.solve_here(exec).0);
        }
        Self::with_tail(n, layout, family, tail)
    }

    fn max_row_weight(&self) -> usize {
        match self.layout {
            Layout::Bipartite { m } => self.n - m,
            Layout::General => self.n.saturating_sub(1),
        }
    }

    /// Largest final weight row `r` may take: that of row `r - 1`.
    fn cap(&self, g: &Small, r: usize) -> usize {
        if r == 0 {
            self.max_row_weight()
        } else {
            g.deg(r - 1)
        }
    }

    fn can_add(&self, g: &Small, k: usize) -> bool {
        let (u, v) = self.slots[k];
        let cap = self.cap(g, self.row_of[k]);
        if g.deg(u) + 1 > cap {
            return false;
        }
        // later vertices end with degree at most this row's
        if let Layout::General = self.layout {
            if g.deg(v) + 1 > cap {
                return false;
            }
        }
        true
    }

    /// Checks run once the last slot of a row has been decided.
    fn row_closed_ok(&self, g: &Small, k: usize) -> bool {
        let r = self.row_of[k];
        if self.row_end[r] != k + 1 {
            return true;
        }
        match self.layout {
            Layout::Bipartite { m } => {
                // equal-weight rows appear in non-increasing lexicographic order
                if r > 0 && g.deg(r) == g.deg(r - 1) {
                    let diff = g.adj[r] ^ g.adj[r - 1];
                    if diff & diff.wrapping_neg() & g.adj[r] != 0 {
                        return false;
                    }
                }
                let rows_left = m - 1 - r;
                (m..self.n - 1).all(|c| g.deg(c + 1) <= g.deg(c) + rows_left)
            }
            Layout::General => true,
        }
    }

    fn leaf_ok(&self, g: &Small) -> bool {
        let range = match self.layout {
            Layout::Bipartite { m } => m..self.n,
            Layout::General => 0..self.n,
        };
        range.clone().zip(range.skip(1)).all(|(a, b)| g.deg(b) <= g.deg(a))
    }

    fn bound(&self, g: &Small, k: usize, edges: usize) -> usize {
        let r = self.row_of[k];
        let (u, _) = self.slots[k];
        let w = g.deg(u);
        let in_row = self.row_end[r] - k;
        let x = in_row.min(self.cap(g, r).saturating_sub(w));
        let top = w + x;
        match self.layout {
            Layout::Bipartite { m } => {
                let rest = x + (m - r - 1) * top;
                let rest = self.tail.get(m - r).map_or(rest, |&t| rest.min(t.saturating_sub(w)));
                edges + rest
            }
            Layout::General => {
                let done: usize = (0..r).map(|i| g.deg(i)).sum();
                let by_degree = (done + (self.n - r) * top) / 2;
                let mut b = by_degree.min(edges + self.slots.len() - k);
                if let Some(&t) = self.tail.get(self.n - r) {
                    let in_row = (g.adj[r] >> r >> 1).count_ones() as usize;
                    b = b.min(edges - in_row + t);
                }
                b
            }
        }
    }

    /// Tries `present` at slot `k`; on success the edge (if any) is left in place.
    fn decide(&self, g: &mut Small, k: usize, present: bool) -> bool {
        let (u, v) = self.slots[k];
        if present {
            if !self.can_add(g, k) {
                return false;
            }
            g.add(u, v);
            if g.completes_any(u, v, self.family) || !self.row_closed_ok(g, k) {
                g.remove(u, v);
                return false;
            }
            true
        } else {
            self.row_closed_ok(g, k)
        }
    }

    fn collect(&self, k: usize, g: &mut Small, edges: usize, depth: usize, out: &mut Vec<Branch>) {
        if k == self.slots.len() || depth == 0 {
            if k < self.slots.len() || self.leaf_ok(g) {
                out.push(Branch {
                    slot: k,
                    graph: g.clone(),
                    edges,
                });
            }
            return;
        }
        let (u, v) = self.slots[k];
        if self.decide(g, k, true) {
            self.collect(k + 1, g, edges + 1, depth - 1, out);
            g.remove(u, v);
        }
        if self.decide(g, k, false) {
            self.collect(k + 1, g, edges, depth - 1, out);
        }
    }

    fn search(&self, k: usize, g: &mut Small, edges: usize, global: &AtomicUsize, local: &mut Option<(usize, Small)>) {
        if k == self.slots.len() {
            if self.leaf_ok(g) && local.as_ref().map_or(true, |(b, _)| edges > *b) {
                *local = Some((edges, g.clone()));
                global.fetch_max(edges, Ordering::Relaxed);
            }
            return;
        }
        let beats = |bound: usize, local: &Option<(usize, Small)>| {
            bound >= global.load(Ordering::Relaxed) && local.as_ref().map_or(true, |(b, _)| bound > *b)
        };
        if !beats(self.bound(g, k, edges), local) {
            return;
        }
        let (u, v) = self.slots[k];
        if self.decide(g, k, true) {
            self.search(k + 1, g, edges + 1, global, local);
            g.remove(u, v);
        }
        if beats(self.bound(g, k, edges).min(edges + self.slots.len() - k - 1), local) && self.decide(g, k, false) {
            self.search(k + 1, g, edges, global, local);
        }
    }

    /// Exact maximum and the first optimal graph in search order.
    pub fn solve(n: usize, layout: Layout, family: &'a [Pattern], exec: Exec) -> (usize, Small) {
        Self::layered(n, layout, family, exec).solve_here(exec)
    }

    fn solve_here(&self, exec: Exec) -> (usize, Small) {
        let mut frontier = Vec::new();
        self.collect(0, &mut Small::new(self.n), 0, FRONTIER_DEPTH, &mut frontier);
        let global = AtomicUsize::new(0);
        let results = par::map_slice(exec, &frontier, |b| {
            let mut g = b.graph.clone();
            let mut local = None;
            self.search(b.slot, &mut g, b.edges, &global, &mut local);
            local
        });
        let mut best: Option<(usize, Small)> = None;
        for r in results.into_iter().flatten() {
            if best.as_ref().map_or(true, |(b, _)| r.0 > *b) {
                best = Some(r);
            }
        }
        // the empty graph always qualifies, so some branch reports
        best.expect("search space contains the empty graph")
    }

    /// Seeded greedy insertion over shuffled slots, best of `restarts` runs.
    pub fn greedy(&self, seed: u64, restarts: usize, exec: Exec) -> (usize, Small) {
        let runs = par::map_collect(exec, 0..restarts.max(1), |i| {
            let mut order = self.slots.clone();
            order.shuffle(&mut rng::stream(seed, i as u64));
            let mut g = Small::new(self.n);
            let mut edges = 0;
            for (u, v) in order {
                g.add(u, v);
                if g.completes_any(u, v, self.family) {
                    g.remove(u, v);
                } else {
                    edges += 1;
                }
            }
            (edges, g)
        });
        let mut best = None::<(usize, Small)>;
        for r in runs {
            if best.as_ref().map_or(true, |(b, _)| r.0 > *b) {
                best = Some(r);
            }
        }
        best.unwrap()
    }

    #[cfg(test)]
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }
}
