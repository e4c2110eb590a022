use std::collections::BTreeSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};
use crate::lemmas::PathFamily;
use crate::rng;

/// A vertex partition `(A, B)` with `in_a[v]` marking `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub in_a: Vec<bool>,
    /// Neighbours each vertex needed on both sides.
    pub required: Vec<usize>,
    pub attempts: usize,
}

impl Split {
    pub fn a(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.in_a.len(), (0..self.in_a.len()).filter(|&v| self.in_a[v]))
    }

    pub fn b(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.in_a.len(), (0..self.in_a.len()).filter(|&v| !self.in_a[v]))
    }

    /// Exchanges the roles of the two sides.
    pub fn swapped(mut self) -> Self {
        for x in &mut self.in_a {
            *x = !*x;
        }
        self
    }

    pub fn validate(&self, h: &Graph) -> std::result::Result<(), String> {
        for v in 0..h.n() {
            let in_a = h.neighbors(v).filter(|&x| self.in_a[x]).count();
            let in_b = h.degree(v) - in_a;
            if in_a.min(in_b) < self.required[v] {
                return Err(format!("vertex {v} has {in_a}/{in_b} neighbours, needs {}", self.required[v]));
            }
        }
        Ok(())
    }
}

/// `ceil(fraction * d)` with a tolerance for products that land on an integer.
fn required_for(d: usize, fraction: f64) -> usize {
    let x = fraction * d as f64;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Uniform random partition in which every vertex has at least `fraction * deg` neighbours
/// on each side, resampled until it holds.
pub fn balanced_split(h: &Graph, fraction: f64, seed: u64, retries: usize) -> Result<Split> {
    if !(0.0..=0.5).contains(&fraction) {
        return Err(Error::input(format!("split fraction {fraction} outside [0, 1/2]")));
    }
    if !is_connected(h) {
        return Err(Error::precondition("graph must be connected", Vec::new()));
    }
    let n = h.n();
    let required: Vec<usize> = (0..n).map(|v| required_for(h.degree(v), fraction)).collect();
    let hopeless: Vec<usize> = (0..n).filter(|&v| 2 * required[v] > h.degree(v)).collect();
    if !hopeless.is_empty() {
        return Err(Error::precondition(
            format!("{} vertices cannot meet the requirement on both sides", hopeless.len()),
            hopeless,
        ));
    }
    // (vertex, missing neighbours) of the worst attempt so far
    let mut worst: Option<(usize, usize)> = None;
    for attempt in 0..retries {
        let mut r = rng::stream(seed, attempt as u64);
        let in_a: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
        let mut bad = None;
        for v in 0..n {
            let a = h.neighbors(v).filter(|&x| in_a[x]).count();
            let low = a.min(h.degree(v) - a);
            if low < required[v] {
                let gap = required[v] - low;
                if bad.map_or(true, |(_, g)| gap > g) {
                    bad = Some((v, gap));
                }
            }
        }
        match bad {
            None => {
                return Ok(Split {
                    in_a,
                    required,
                    attempts: attempt + 1,
                })
            }
            Some(b) => {
                if worst.map_or(true, |w| b.1 > w.1) {
                    worst = Some(b);
                }
            }
        }
    }
    let detail = match worst {
        Some((v, gap)) => format!("worst offender {v} is {gap} short on one side"),
        None => "no attempts made".into(),
    };
    Err(Error::Budget {
        attempts: retries,
        message: detail,
    })
}

/// Paths kept by a good colouring together with the work it took.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPaths {
    pub family: PathFamily,
    pub needed: usize,
    pub attempts: usize,
}

/// `ceil(len / 2^{p+1})`.
pub fn good_threshold(len: usize, p: usize) -> usize {
    if p + 1 >= usize::BITS as usize {
        return usize::from(len > 0);
    }
    len.div_ceil(1 << (p + 1))
}

/// Keeps the paths whose endpoint is coloured 2 and whose other vertices are coloured 1,
/// recolouring until at least `ceil(|S| / 2^{p+1})` survive.
pub fn good_coloring_filter(pf: &PathFamily, p: usize, seed: u64, retries: usize) -> Result<GoodPaths> {
    good_coloring_filter_with(pf, p, good_threshold(pf.len(), p), seed, retries)
}

/// As [`good_coloring_filter`] with an explicit survivor count.
pub fn good_coloring_filter_with(
    pf: &PathFamily,
    p: usize,
    needed: usize,
    seed: u64,
    retries: usize,
) -> Result<GoodPaths> {
    if let Some(bad) = pf.paths.iter().find(|q| q.len() != p + 1) {
        return Err(Error::input(format!(
            "path to {} has length {}, expected {p}",
            bad.last().expect("non-empty"),
            bad.len() - 1
        )));
    }
    if pf.is_empty() || needed == 0 {
        return Ok(GoodPaths {
            family: pf.retain(|_, _| needed == 0),
            needed,
            attempts: 0,
        });
    }
    let vertices: BTreeSet<usize> = pf.paths.iter().flatten().copied().collect();
    let top = *vertices.last().expect("non-empty") + 1;
    let mut best = 0;
    for attempt in 0..retries {
        let mut r = rng::stream(seed, attempt as u64);
        let mut two = vec![false; top];
        for &v in &vertices {
            two[v] = r.gen_bool(0.5);
        }
        let good = |q: &[usize]| two[q[p]] && q[..p].iter().all(|&x| !two[x]);
        let count = pf.paths.iter().filter(|q| good(q)).count();
        if count >= needed {
            return Ok(GoodPaths {
                family: pf.retain(|_, q| good(q)),
                needed,
                attempts: attempt + 1,
            });
        }
        best = best.max(count);
    }
    Err(Error::Budget {
        attempts: retries,
        message: format!("best colouring kept {best} of {} paths, needed {needed}", pf.len()),
    })
}

/// Depth-first extension of a path of exactly `t` edges from `w` that stays off `avoid`
/// (except at `w`). Neighbours of larger degree are tried first. `budget` bounds the
/// number of vertices pushed onto the path.
pub fn greedy_even_path(h: &Graph, w: usize, t: usize, avoid: &VertexSet, budget: usize) -> Result<Vec<usize>> {
    if t % 2 != 0 {
        return Err(Error::input(format!("path length {t} must be even")));
    }
    if w >= h.n() {
        return Err(Error::input(format!("start {w} out of range (n = {})", h.n())));
    }
    let mut on_path = vec![false; h.n()];
    on_path[w] = true;
    let mut path = vec![w];
    let mut stack: Vec<Vec<usize>> = Vec::new();
    let mut expansions = 0;
    let candidates = |x: usize, on_path: &[bool]| {
        let mut c: Vec<usize> = h
            .neighbors(x)
            .filter(|&y| !on_path[y] && !avoid.contains(y))
            .collect();
        // popped from the back: highest degree, then lowest index, comes first
        c.sort_by(|&a, &b| h.degree(a).cmp(&h.degree(b)).then(b.cmp(&a)));
        c
    };
    if t > 0 {
        stack.push(candidates(w, &on_path));
    }
    while path.len() < t + 1 {
        let Some(frame) = stack.last_mut() else {
            return Err(Error::Budget {
                attempts: expansions,
                message: format!("no path of length {t} from {w} outside the avoided set"),
            });
        };
        match frame.pop() {
            Some(y) => {
                if expansions == budget {
                    return Err(Error::Budget {
                        attempts: expansions,
                        message: format!("dead end at depth {} of {t}", path.len() - 1),
                    });
                }
                expansions += 1;
                on_path[y] = true;
                path.push(y);
                if path.len() < t + 1 {
                    stack.push(candidates(y, &on_path));
                }
            }
            None => {
                stack.pop();
                let x = path.pop().expect("root stays");
                on_path[x] = false;
            }
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn balanced_split_on_k88() {
        let g = named::complete_bipartite(8, 8);
        let s = balanced_split(&g, 0.25, 1, 100).unwrap();
        s.validate(&g).unwrap();
        assert_eq!(s, balanced_split(&g, 0.25, 1, 100).unwrap());
    }

    #[test]
    fn path_cannot_be_split() {
        let e = balanced_split(&named::path(5), 0.25, 0, 100).unwrap_err();
        assert!(matches!(e, Error::Precondition { ref offenders, .. } if offenders == &vec![0, 4]));
    }

    #[test]
    fn required_counts_round_up() {
        assert_eq!(required_for(4, 0.25), 1);
        assert_eq!(required_for(5, 0.25), 2);
        assert_eq!(required_for(8, 0.25), 2);
        assert_eq!(required_for(6, 0.15), 1);
    }

    #[test]
    fn coloring_thresholds() {
        assert_eq!(good_threshold(1, 1), 1);
        assert_eq!(good_threshold(9, 1), 3);
        assert_eq!(good_threshold(0, 3), 0);
    }

    #[test]
    fn empty_family_is_kept_empty() {
        let f = PathFamily::new(0, Vec::new(), true);
        let r = good_coloring_filter(&f, 2, 0, 10).unwrap();
        assert!(r.family.is_empty());
        assert_eq!(r.attempts, 0);
    }

    #[test]
    fn single_edge_path_is_eventually_good() {
        let f = PathFamily::new(0, vec![vec![0, 1]], true);
        let r = good_coloring_filter(&f, 1, 5, 100).unwrap();
        assert_eq!(r.family.endpoints, vec![1]);
        assert!(r.family.endpoint_pure);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let f = PathFamily::new(0, vec![vec![0, 1, 2]], true);
        assert!(good_coloring_filter(&f, 1, 0, 10).is_err());
    }

    #[test]
    fn even_path_in_complete_bipartite() {
        let g = named::complete_bipartite(5, 5);
        let none = VertexSet::new(10);
        assert_eq!(greedy_even_path(&g, 0, 0, &none, 10).unwrap(), vec![0]);
        let p = greedy_even_path(&g, 0, 8, &none, 80).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p[8] < 5);
        assert!(p.windows(2).all(|e| g.has_edge(e[0], e[1])));
        assert!(greedy_even_path(&g, 0, 3, &none, 10).is_err());
    }

    #[test]
    fn even_path_respects_avoid_and_budget() {
        let g = named::complete_bipartite(2, 2);
        let avoid = VertexSet::from_iter_with_capacity(4, [2]);
        // 0 - 3 - 1 is the only path of length 2 avoiding 2
        assert_eq!(greedy_even_path(&g, 0, 2, &avoid, 10).unwrap(), vec![0, 3, 1]);
        assert!(greedy_even_path(&g, 0, 4, &avoid, 10).is_err());
        assert!(matches!(
            greedy_even_path(&named::cycle(8), 0, 6, &VertexSet::new(8), 3),
            Err(Error::Budget { attempts: 3, .. })
        ));
    }
}
