//! Ball growth and layered reachability in bipartite graphs without `C_{2 ell}`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::reach::PathFamily;
use crate::error::{Error, Result};
use crate::forbidden::find_cycle_exact;
use crate::graph::{bfs_layers_within, two_coloring, Graph};
use crate::rng;

fn check_host(g: &Graph, u: usize, ell: usize, d: usize, verify_free: bool) -> Result<()> {
    if u >= g.n() {
        return Err(Error::input(format!("root {u} out of range (n = {})", g.n())));
    }
    if ell < 2 {
        return Err(Error::input(format!("need ell >= 2, got {ell}")));
    }
    if two_coloring(g).is_none() {
        return Err(Error::precondition("graph is not bipartite", Vec::new()));
    }
    let low: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < d).collect();
    if !low.is_empty() {
        return Err(Error::precondition(format!("{} vertices have degree below {d}", low.len()), low));
    }
    if verify_free {
        if let Some(w) = find_cycle_exact(g, 2 * ell)? {
            return Err(Error::forbidden_copy(format!("graph contains a cycle of length {}", 2 * ell), w));
        }
    }
    Ok(())
}

/// `ceil(d^ell / (4 ell)^ell)`, saturating at `usize::MAX`.
pub fn ball_lower_bound(d: usize, ell: usize) -> usize {
    let num = BigUint::from(d).pow(ell as u32);
    let den = BigUint::from(4 * ell).pow(ell as u32);
    num.div_ceil(&den).to_usize().unwrap_or(usize::MAX)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallReport {
    pub root: usize,
    pub ell: usize,
    pub d: usize,
    /// `|B_ell(root)|`.
    pub size: usize,
    /// `(d / 4 ell)^ell`.
    pub bound: f64,
    /// `ceil(bound)`, the integer size compared against.
    pub needed: usize,
}

/// Size of the radius-`ell` ball around `u`, checked against `(d / 4 ell)^ell`.
///
/// The host must be bipartite with minimum degree `d` and no `C_{2 ell}`; a located copy
/// is returned inside the precondition error.
pub fn c2l_ball(g: &Graph, u: usize, ell: usize, d: usize) -> Result<BallReport> {
    check_host(g, u, ell, d, true)?;
    let layers = bfs_layers_within(g, u, None, ell)?;
    let size = layers.ball_size(ell.min(layers.depth()));
    let needed = ball_lower_bound(d, ell);
    if size < needed {
        return Err(Error::Invariant(format!(
            "ball of radius {ell} has {size} < {needed} vertices in a graph without C_{}",
            2 * ell
        )));
    }
    Ok(BallReport {
        root: u,
        ell,
        d,
        size,
        bound: (d as f64 / (4 * ell) as f64).powi(ell as i32),
        needed,
    })
}

/// Which vertices must see enough neighbours in each part before a split is accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitScope {
    /// Every vertex, in every part.
    All,
    /// Each vertex the tree expands, in the part it expands into.
    #[default]
    Expanded,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2lOptions {
    pub retries: usize,
    /// `d` is expected to reach `log_factor * ell * ln n`.
    pub log_factor: f64,
    pub scope: SplitScope,
    /// Search for a `C_{2 ell}` before building. The tree and its usage bound do not
    /// depend on it; only the size guarantee does.
    pub verify_free: bool,
}

impl Default for C2lOptions {
    fn default() -> Self {
        Self {
            retries: 100,
            log_factor: 15.0,
            scope: SplitScope::Expanded,
            verify_free: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2lReach {
    pub family: PathFamily,
    pub ell: usize,
    pub d: usize,
    /// `parts[v]` in `0..ell`; tree layer `i + 1` lies in part `i`.
    pub parts: Vec<usize>,
    /// Children drawn per expanded vertex, `floor(d / 2 ell)`.
    pub children: usize,
    pub attempts: usize,
    pub log_threshold: f64,
    pub log_threshold_met: bool,
    /// `(d / 2 ell)^{ell - 1}`.
    pub usage_bound: f64,
    /// `(1/2) (d / 8 ell^2)^ell`.
    pub size_bound: f64,
    pub size_bound_met: bool,
}

impl C2lReach {
    /// Tree shape, endpoint depth, and the usage bound, all by recount.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        self.family.validate(g)?;
        let root = self.family.root;
        let mut parent = std::collections::BTreeMap::new();
        for p in &self.family.paths {
            if p.len() != self.ell + 1 {
                return Err(format!("path to {} has length {}", p.last().unwrap(), p.len() - 1));
            }
            for w in p.windows(2) {
                if *parent.entry(w[1]).or_insert(w[0]) != w[0] {
                    return Err(format!("vertex {} has two parents", w[1]));
                }
            }
            if p[1..].contains(&root) {
                return Err("root reappears inside a path".into());
            }
        }
        if !self.family.endpoint_pure {
            return Err("an endpoint lies on another path".into());
        }
        // usage * (2 ell)^{ell-1} <= d^{ell-1}
        let lhs = BigUint::from(self.family.max_usage()) * BigUint::from(2 * self.ell).pow(self.ell as u32 - 1);
        if lhs > BigUint::from(self.d).pow(self.ell as u32 - 1) {
            return Err(format!("usage {} exceeds the bound", self.family.max_usage()));
        }
        Ok(())
    }
}

/// Paths of length exactly `ell` from `u` forming a tree, built over a seeded random
/// split into `ell` parts: each vertex of layer `i` draws `floor(d / 2 ell)` neighbours
/// in part `i` as candidate children.
pub fn c2l_reach(g: &Graph, u: usize, ell: usize, d: usize, seed: u64, opts: &C2lOptions) -> Result<C2lReach> {
    check_host(g, u, ell, d, opts.verify_free)?;
    if d < 2 * ell {
        return Err(Error::input(format!("need d >= 2 ell = {} to draw a child", 2 * ell)));
    }
    let n = g.n();
    let k = d / (2 * ell);
    // enough in part i: 2 ell * count >= deg(x)
    let enough = |x: usize, count: usize| 2 * ell * count >= g.degree(x);
    let mut worst = (0usize, 0usize, 0usize);
    for attempt in 0..opts.retries.max(1) {
        let mut r = rng::stream(seed, attempt as u64);
        let parts: Vec<usize> = (0..n).map(|_| r.gen_range(0..ell)).collect();
        let count_in = |x: usize, part: usize| g.neighbors(x).filter(|&y| parts[y] == part).count();
        if opts.scope == SplitScope::All {
            let bad = (0..n)
                .flat_map(|x| (0..ell).map(move |i| (x, i)))
                .find(|&(x, i)| !enough(x, count_in(x, i)));
            if let Some((x, i)) = bad {
                worst = (x, i, count_in(x, i));
                continue;
            }
        }
        let mut parent = vec![usize::MAX; n];
        parent[u] = u;
        let mut layer = vec![u];
        let mut failed = None;
        for i in 0..ell {
            let mut next = Vec::new();
            for &x in &layer {
                let cands: Vec<usize> = g.neighbors(x).filter(|&y| parts[y] == i).collect();
                if !enough(x, cands.len()) {
                    failed = Some((x, i, cands.len()));
                    break;
                }
                let pool: Vec<usize> = cands.into_iter().filter(|&y| y != u).collect();
                for &y in pool.choose_multiple(&mut r, k.min(pool.len())) {
                    if parent[y] == usize::MAX {
                        parent[y] = x;
                        next.push(y);
                    }
                }
            }
            if failed.is_some() {
                break;
            }
            layer = next;
        }
        if let Some(f) = failed {
            worst = f;
            continue;
        }
        let paths = layer
            .iter()
            .map(|&z| {
                let mut p = vec![z];
                while *p.last().unwrap() != u {
                    p.push(parent[*p.last().unwrap()]);
                }
                p.reverse();
                p
            })
            .collect();
        let family = PathFamily::new(u, paths, false);
        let (l, df) = (ell as f64, d as f64);
        let log_threshold = opts.log_factor * l * (n as f64).ln();
        let size_bound = 0.5 * (df / (8.0 * l * l)).powf(l);
        return Ok(C2lReach {
            size_bound_met: family.len() as f64 >= size_bound,
            family,
            ell,
            d,
            parts,
            children: k,
            attempts: attempt + 1,
            log_threshold,
            log_threshold_met: df >= log_threshold,
            usage_bound: (df / (2.0 * l)).powf(l - 1.0),
            size_bound,
        });
    }
    let (x, i, c) = worst;
    Err(Error::Budget {
        attempts: opts.retries.max(1),
        message: format!(
            "vertex {x} has {c} neighbours in part {i}, needs {}",
            g.degree(x).div_ceil(2 * ell)
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{incidence_graph, PrimePower};
    use crate::graph::named;

    /// Layers of `w` vertices with complete bipartite joins between neighbours.
    fn layered(layers: usize, w: usize) -> Graph {
        let mut g = Graph::new(layers * w).unwrap();
        for l in 0..layers - 1 {
            for a in 0..w {
                for b in 0..w {
                    g.add_edge(l * w + a, (l + 1) * w + b).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn incidence_ball() {
        let g = incidence_graph(PrimePower::new(3).unwrap()).unwrap();
        let r = c2l_ball(&g, 0, 2, 4).unwrap();
        assert_eq!(r.size, 1 + 4 + 12);
        assert_eq!(r.needed, 1);
    }

    #[test]
    fn lower_bound_is_exact_ceiling() {
        assert_eq!(ball_lower_bound(4, 2), 1);
        assert_eq!(ball_lower_bound(16, 2), 4);
        assert_eq!(ball_lower_bound(17, 2), 5);
        assert_eq!(ball_lower_bound(24, 3), 8);
    }

    #[test]
    fn cycle_is_reported_with_witness() {
        let g = named::complete_bipartite(3, 3);
        match c2l_ball(&g, 0, 2, 3) {
            Err(Error::Precondition { witness: Some(w), .. }) => w.validate(&g).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incidence_reach_tree() {
        for q in [3, 4, 5, 7] {
            let g = incidence_graph(PrimePower::new(q).unwrap()).unwrap();
            let r = c2l_reach(&g, 0, 2, q + 1, 9, &C2lOptions::default()).unwrap();
            r.validate(&g).unwrap();
            assert!(!r.family.is_empty());
        }
    }

    #[test]
    fn layered_reach_tree() {
        let g = layered(4, 12);
        let opts = C2lOptions {
            verify_free: false,
            ..C2lOptions::default()
        };
        let r = c2l_reach(&g, 0, 3, 12, 5, &opts).unwrap();
        r.validate(&g).unwrap();
        assert_eq!(r.children, 2);
    }

    #[test]
    fn seeded_runs_repeat() {
        let g = incidence_graph(PrimePower::new(4).unwrap()).unwrap();
        let a = c2l_reach(&g, 3, 2, 5, 77, &C2lOptions::default()).unwrap();
        let b = c2l_reach(&g, 3, 2, 5, 77, &C2lOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_degree_rejected() {
        let g = incidence_graph(PrimePower::new(2).unwrap()).unwrap();
        assert!(matches!(c2l_reach(&g, 0, 2, 3, 1, &C2lOptions::default()), Err(Error::Input(_))));
    }
}
