//! Dense graphs on at most 64 vertices as `u64` neighbourhood masks, with checks for
//! whether a just-inserted edge completes a copy of a pattern.

use crate::forbidden::Pattern;
use crate::graph::Graph;

pub const SMALL_MAX: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Small {
    pub n: usize,
    pub adj: [u64; SMALL_MAX],
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

impl Small {
    pub fn new(n: usize) -> Self {
        assert!(n <= SMALL_MAX);
        Self {
            n,
            adj: [0; SMALL_MAX],
        }
    }

    #[inline]
    pub fn add(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn remove(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    #[inline]
    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn to_graph(&self, left: Option<usize>) -> Graph {
        let mut g = match left {
            Some(m) => Graph::bipartite(m, self.n - m),
            None => Graph::new(self.n),
        }
        .expect("small graphs are within the vertex cap");
        for u in 0..self.n {
            for v in bits(self.adj[u] >> u >> 1) {
                g.add_edge(u, u + 1 + v).expect("search respects parts");
            }
        }
        g
    }

    /// Relabels a bipartite graph with parts `0..m` and `m..n` so the second part comes first.
    pub fn swap_sides(&self, m: usize) -> Small {
        let k = self.n - m;
        let mut out = Small::new(self.n);
        for r in 0..m {
            for c in bits(self.adj[r] >> m) {
                out.add(c, k + r);
            }
        }
        out
    }

    /// True iff some copy of `p` uses the edge `uv`, which must be present.
    pub fn completes(&self, u: usize, v: usize, p: &Pattern) -> bool {
        match *p {
            Pattern::CompleteBipartite { s, t } => self.kst_through(u, v, s, t) || self.kst_through(v, u, s, t),
            Pattern::EvenCycle { ell } => self.path_exists(v, u, 2 * ell - 1, bit(u) | bit(v)),
            Pattern::OddCycle { k } => self.path_exists(v, u, k - 1, bit(u) | bit(v)),
            Pattern::Theta { t, ell } => self.theta_through(u, v, t, ell) || self.theta_through(v, u, t, ell),
        }
    }

    /// `x` on the `s`-side, `y` on the `t`-side.
    fn kst_through(&self, x: usize, y: usize, s: usize, t: usize) -> bool {
        fn grow(g: &Small, pool: u64, common: u64, need: usize, t: usize) -> bool {
            if (common.count_ones() as usize) < t {
                return false;
            }
            if need == 0 {
                return true;
            }
            for a in bits(pool) {
                let rest = pool & !(u64::MAX >> (63 - a));
                if grow(g, rest, common & g.adj[a], need - 1, t) {
                    return true;
                }
            }
            false
        }
        // the rest of the s-side lies in N(y); the common neighbourhood always contains y
        grow(self, self.adj[y] & !bit(x), self.adj[x], s - 1, t)
    }

    /// Simple path of exactly `len` edges from `from` to `to` whose interior avoids `avoid`.
    fn path_exists(&self, from: usize, to: usize, len: usize, avoid: u64) -> bool {
        if len == 1 {
            return self.adj[from] & bit(to) != 0;
        }
        for y in bits(self.adj[from] & !avoid) {
            if self.path_exists(y, to, len - 1, avoid | bit(y)) {
                return true;
            }
        }
        false
    }

    /// Every simple walk of `len` edges from `from` avoiding `avoid`; yields (end, mask of
    /// all visited vertices including `from`).
    fn walks(&self, from: usize, len: usize, avoid: u64, visit: &mut impl FnMut(usize, u64) -> bool) -> bool {
        fn go(g: &Small, x: usize, len: usize, seen: u64, visit: &mut impl FnMut(usize, u64) -> bool) -> bool {
            if len == 0 {
                return visit(x, seen);
            }
            for y in bits(g.adj[x] & !seen) {
                if go(g, y, len - 1, seen | bit(y), visit) {
                    return true;
                }
            }
            false
        }
        go(self, from, len, avoid | bit(from), visit)
    }

    /// Theta copies where `x` immediately precedes `y` on the first branch.
    fn theta_through(&self, x: usize, y: usize, t: usize, ell: usize) -> bool {
        for before in 0..ell {
            let after = ell - 1 - before;
            let found = self.walks(x, before, bit(y), &mut |a, back| {
                self.walks(y, after, back, &mut |b, whole| {
                    self.more_branches(a, b, ell, whole, t - 1)
                })
            });
            if found {
                return true;
            }
        }
        false
    }

    /// `need` further `a`-`b` paths of length `ell`, pairwise disjoint and avoiding `used`.
    fn more_branches(&self, a: usize, b: usize, ell: usize, used: u64, need: usize) -> bool {
        let mut masks = Vec::new();
        self.walks(a, ell - 1, used, &mut |end, seen| {
            if self.adj[end] & bit(b) != 0 {
                masks.push(seen & !used);
            }
            false
        });
        fn pick(masks: &[u64], from: usize, need: usize, used: u64) -> bool {
            if need == 0 {
                return true;
            }
            for i in from..masks.len() {
                if masks[i] & used == 0 && pick(masks, i + 1, need - 1, used | masks[i]) {
                    return true;
                }
            }
            false
        }
        pick(&masks, 0, need, 0)
    }

    pub fn completes_any(&self, u: usize, v: usize, family: &[Pattern]) -> bool {
        family.iter().any(|p| self.completes(u, v, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::find_pattern;
    use crate::generators::random_gnp;
    use crate::rng;

    fn from_graph(g: &Graph) -> Small {
        let mut s = Small::new(g.n());
        for (u, v) in g.edges() {
            s.add(u, v);
        }
        s
    }

    /// Inserting edges one at a time, the first edge that completes a copy must be
    /// exactly where the full detector first reports one.
    #[test]
    fn through_edge_checks_agree_with_detectors() {
        let patterns = [
            Pattern::CompleteBipartite { s: 2, t: 2 },
            Pattern::CompleteBipartite { s: 1, t: 3 },
            Pattern::CompleteBipartite { s: 2, t: 3 },
            Pattern::EvenCycle { ell: 3 },
            Pattern::OddCycle { k: 3 },
            Pattern::OddCycle { k: 5 },
            Pattern::Theta { t: 3, ell: 2 },
            Pattern::Theta { t: 2, ell: 3 },
            Pattern::Theta { t: 3, ell: 3 },
        ];
        for seed in 0..30 {
            let full = random_gnp(9, 0.45, &mut rng::seeded(seed)).unwrap();
            for p in &patterns {
                let mut g = Graph::new(9).unwrap();
                let mut s = Small::new(9);
                for (u, v) in full.edges() {
                    g.add_edge(u, v).unwrap();
                    s.add(u, v);
                    let hit = s.completes(u, v, p);
                    let present = find_pattern(&g, p).unwrap().is_some();
                    assert_eq!(hit, present, "{p} seed {seed} edge {u}-{v}");
                    if hit {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_to_graph() {
        let g = crate::graph::named::petersen();
        assert_eq!(from_graph(&g).to_graph(None), g);
    }
}
