use super::{Pattern, Witness};
use crate::bitset::VertexSet;
use crate::error::Result;
use crate::graph::Graph;
use crate::par::{self, Exec};

/// Locates a `K_{s,t}`: an `s`-set whose common neighbourhood has at least `t`
/// vertices. Returns the lexicographically first `s`-set.
pub fn find_kst(g: &Graph, s: usize, t: usize) -> Result<Option<Witness>> {
    find_kst_with(g, s, t, Exec::default())
}

pub fn find_kst_with(g: &Graph, s: usize, t: usize, exec: Exec) -> Result<Option<Witness>> {
    Pattern::CompleteBipartite { s, t }.validate()?;
    let n = g.n();
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= t).collect();
    let found = par::find_map_first(exec, 0..candidates.len(), |i| {
        let first = candidates[i];
        let mut common = g.neighbor_set(first);
        let mut chosen = vec![first];
        extend(g, &candidates[i + 1..], s, t, &mut chosen, &mut common)
    });
    Ok(found.map(|(side, common)| Witness {
        pattern: Pattern::CompleteBipartite { s, t },
        vertices: side.into_iter().chain(common.iter().take(t)).collect(),
    }))
}

fn extend(
    g: &Graph,
    rest: &[usize],
    s: usize,
    t: usize,
    chosen: &mut Vec<usize>,
    common: &mut VertexSet,
) -> Option<(Vec<usize>, VertexSet)> {
    if common.len() < t {
        return None;
    }
    if chosen.len() == s {
        return Some((chosen.clone(), common.clone()));
    }
    let need = s - chosen.len();
    for (i, &v) in rest.iter().enumerate() {
        if rest.len() - i < need {
            break;
        }
        // rows are irreflexive, so the common neighbourhood never meets the chosen side
        if common.intersection_len(g.row(v)) < t {
            continue;
        }
        let mut next = common.clone();
        next.intersect_with(g.row(v));
        chosen.push(v);
        if let Some(hit) = extend(g, &rest[i + 1..], s, t, chosen, &mut next) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn c4_is_k22() {
        let g = named::cycle(4);
        let w = find_kst(&g, 2, 2).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 2, 1, 3]);
        w.validate(&g).unwrap();
    }

    #[test]
    fn k33_contains_k23() {
        let g = named::complete_bipartite(3, 3);
        let w = find_kst(&g, 2, 3).unwrap().unwrap();
        w.validate(&g).unwrap();
        assert!(find_kst(&g, 3, 4).unwrap().is_none());
    }

    #[test]
    fn stars_and_edges() {
        let g = named::star(3);
        assert!(find_kst(&g, 1, 3).unwrap().is_some());
        assert!(find_kst(&g, 1, 4).unwrap().is_none());
        assert!(find_kst(&g, 1, 1).unwrap().is_some());
        assert!(find_kst(&Graph::new(3).unwrap(), 1, 1).unwrap().is_none());
    }

    #[test]
    fn sides_are_disjoint_in_dense_hosts() {
        let g = named::complete(5);
        let w = find_kst(&g, 2, 3).unwrap().unwrap();
        w.validate(&g).unwrap();
        assert!(find_kst(&g, 3, 3).unwrap().is_none());
    }

    #[test]
    fn modes_agree_on_petersen() {
        let g = named::petersen();
        for (s, t) in [(1, 3), (2, 2), (1, 4)] {
            assert_eq!(
                find_kst_with(&g, s, t, Exec::Sequential).unwrap(),
                find_kst_with(&g, s, t, Exec::Parallel).unwrap()
            );
        }
        assert!(find_kst(&g, 2, 2).unwrap().is_none());
    }
}
