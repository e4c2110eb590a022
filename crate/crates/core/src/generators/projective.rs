use super::gf::{GaloisField, PrimePower};
use crate::error::Result;
use crate::graph::Graph;

/// Normalized homogeneous coordinates of the points of PG(2,q): first nonzero entry is 1.
///
/// Order: `(1,a,b)` for `a,b` ascending, then `(0,1,b)`, then `(0,0,1)`.
pub fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point-line incidence graph of PG(2,q). Points are `0..N`, lines `N..2N` with
/// `N = q^2+q+1`; line `j` is the set of points orthogonal to point vector `j`.
pub fn incidence_graph(q: PrimePower) -> Result<Graph> {
    let f = GaloisField::new(q)?;
    let pts = projective_points(q.q);
    let n = pts.len();
    let mut g = Graph::bipartite(n, n)?;
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if f.dot3(x, y) == 0 {
                g.add_edge(i, n + j)?;
            }
        }
    }
    Ok(g)
}

/// Erdos-Renyi orthogonal polarity graph: points adjacent iff orthogonal, loops dropped.
pub fn polarity_graph(q: PrimePower) -> Result<Graph> {
    let f = GaloisField::new(q)?;
    let pts = projective_points(q.q);
    let n = pts.len();
    let mut g = Graph::new(n)?;
    for i in 0..n {
        for j in i + 1..n {
            if f.dot3(&pts[i], &pts[j]) == 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Self-orthogonal points; these have degree `q` in the polarity graph.
pub fn absolute_points(q: PrimePower) -> Result<Vec<usize>> {
    let f = GaloisField::new(q)?;
    Ok(projective_points(q.q)
        .iter()
        .enumerate()
        .filter(|(_, x)| f.dot3(x, x) == 0)
        .map(|(i, _)| i)
        .collect())
}
