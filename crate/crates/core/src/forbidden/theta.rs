use super::{Pattern, Witness};
use crate::bitset::{iter_words, VertexSet};
use crate::error::Result;
use crate::graph::{bfs_distances_within, two_coloring, Graph};
use crate::par::{self, Exec};

/// Locates `t` internally disjoint paths of length `ell` joining two vertices.
///
/// Branch pairs `(a, b)` are tried in lexicographic order. For each pair every
/// `a`-`b` path of length `ell` is listed (ascending by interior sequence) and `t`
/// pairwise disjoint ones are chosen by backtracking in list order.
pub fn find_theta(g: &Graph, t: usize, ell: usize) -> Result<Option<Witness>> {
    find_theta_with(g, t, ell, Exec::default())
}

pub fn find_theta_with(g: &Graph, t: usize, ell: usize, exec: Exec) -> Result<Option<Witness>> {
    Pattern::Theta { t, ell }.validate()?;
    let n = g.n();
    let bipartite = two_coloring(g).is_some();
    let found = par::find_map_first(exec, 0..n, |a| {
        if g.degree(a) < t {
            return None;
        }
        let mut without_a = VertexSet::full(n);
        without_a.remove(a);
        for b in a + 1..n {
            if g.degree(b) < t {
                continue;
            }
            let dist_b = bfs_distances_within(g, b, Some(&without_a));
            let Some(d_ab) = min_via_neighbors(g, a, &dist_b) else { continue };
            if d_ab > ell || (bipartite && (ell - d_ab) % 2 == 1) {
                continue;
            }
            let paths = paths_between(g, a, b, ell, &dist_b, bipartite);
            if paths.len() < t {
                continue;
            }
            let mut chosen = Vec::with_capacity(t);
            if pick_disjoint(&paths, 0, t, &mut chosen, &mut VertexSet::new(n)) {
                let mut vertices = vec![a, b];
                for &i in &chosen {
                    vertices.extend_from_slice(&paths[i].0);
                }
                return Some(Witness {
                    pattern: Pattern::Theta { t, ell },
                    vertices,
                });
            }
        }
        None
    });
    Ok(found)
}

/// Length of a shortest `a`-`b` path whose interior avoids `a`.
fn min_via_neighbors(g: &Graph, a: usize, dist_b: &[Option<usize>]) -> Option<usize> {
    g.neighbors(a).filter_map(|x| dist_b[x]).min().map(|d| d + 1)
}

/// All `a`-`b` paths of length `ell` as (interior, interior mask).
fn paths_between(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    dist_b: &[Option<usize>],
    bipartite: bool,
) -> Vec<(Vec<usize>, VertexSet)> {
    let n = g.n();
    let mut out = Vec::new();
    let mut interior = Vec::with_capacity(ell - 1);
    let mut used = VertexSet::from_iter_with_capacity(n, [a, b]);
    walk(g, a, b, ell, dist_b, bipartite, &mut interior, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &Graph,
    x: usize,
    b: usize,
    ell: usize,
    dist_b: &[Option<usize>],
    bipartite: bool,
    interior: &mut Vec<usize>,
    used: &mut VertexSet,
    out: &mut Vec<(Vec<usize>, VertexSet)>,
) {
    if interior.len() == ell - 1 {
        if g.has_edge(x, b) {
            let mask = VertexSet::from_iter_with_capacity(g.n(), interior.iter().copied());
            out.push((interior.clone(), mask));
        }
        return;
    }
    // edges still needed after stepping to the next interior vertex
    let remaining = ell - interior.len() - 1;
    let next: Vec<u64> = g
        .row(x)
        .iter()
        .zip(used.words())
        .map(|(r, u)| r & !u)
        .collect();
    for y in iter_words(&next) {
        let Some(d) = dist_b[y] else { continue };
        if d > remaining || (bipartite && (remaining - d) % 2 == 1) {
            continue;
        }
        interior.push(y);
        used.insert(y);
        walk(g, y, b, ell, dist_b, bipartite, interior, used, out);
        used.remove(y);
        interior.pop();
    }
}

fn pick_disjoint(
    paths: &[(Vec<usize>, VertexSet)],
    from: usize,
    t: usize,
    chosen: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    if chosen.len() == t {
        return true;
    }
    for i in from..paths.len() {
        if paths.len() - i < t - chosen.len() {
            break;
        }
        let mask = &paths[i].1;
        if used.intersection_len(mask.words()) > 0 {
            continue;
        }
        used.union_with(mask.words());
        chosen.push(i);
        if pick_disjoint(paths, i + 1, t, chosen, used) {
            return true;
        }
        chosen.pop();
        used.difference_with(mask.words());
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::find_cycle_exact;
    use crate::graph::named;

    #[test]
    fn c4_is_theta22() {
        let g = named::cycle(4);
        let w = find_theta(&g, 2, 2).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 2, 1, 3]);
        w.validate(&g).unwrap();
    }

    #[test]
    fn k23_is_theta32() {
        let g = named::complete_bipartite(2, 3);
        let w = find_theta(&g, 3, 2).unwrap().unwrap();
        w.validate(&g).unwrap();
        assert!(find_theta(&g, 4, 2).unwrap().is_none());
    }

    #[test]
    fn theta_two_matches_even_cycle() {
        let p = named::petersen();
        for ell in 2..=5 {
            assert_eq!(
                find_theta(&p, 2, ell).unwrap().is_some(),
                find_cycle_exact(&p, 2 * ell).unwrap().is_some(),
                "ell = {ell}"
            );
        }
    }

    #[test]
    fn longer_branches() {
        // two vertices joined by three disjoint paths of length 3
        let edges = [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)];
        let g = Graph::from_edges(8, &edges).unwrap();
        let w = find_theta(&g, 3, 3).unwrap().unwrap();
        w.validate(&g).unwrap();
        assert_eq!(&w.vertices[..2], &[0, 1]);
        assert!(find_theta(&g, 3, 2).unwrap().is_none());
    }
}
