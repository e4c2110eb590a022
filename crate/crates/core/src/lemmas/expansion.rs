use serde::{Deserialize, Serialize};

use super::constants::{ell0, mu};
use crate::bitset::VertexSet;
use crate::cert::{FailureReport, Outcome};
use crate::error::{Error, Result};
use crate::extremal::SmoothnessParams;
use crate::graph::{bfs_layers_within, two_coloring, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCert {
    pub root: usize,
    pub j0: usize,
    /// `|N_{j0}|` and `|N_{j0+1}|`.
    pub sizes: [usize; 2],
    /// `mu * n`.
    pub threshold: f64,
    /// Integer size actually required, `ceil(threshold)`.
    pub needed: usize,
    /// `min(sizes) - threshold`.
    pub slack: f64,
    pub ell0: usize,
    pub mu: f64,
    pub min_degree_floor: f64,
    /// Size from which `C b^beta <= rho b^alpha`.
    pub absorption_size: f64,
    /// Whether `needed` is at least `absorption_size`, so the `C` term is dominated at
    /// this order.
    pub absorption_holds: bool,
}

/// Smallest `j <= max_j` with `|N_j|` and `|N_{j+1}|` both at least `needed`, searching
/// inside `allowed`. On failure the report carries the layer sizes.
pub(crate) fn consecutive_layers(
    g: &Graph,
    u: usize,
    allowed: Option<&VertexSet>,
    max_j: usize,
    needed: usize,
) -> Result<std::result::Result<(usize, [usize; 2]), FailureReport>> {
    let layers = bfs_layers_within(g, u, allowed, max_j + 1)?;
    let size = |i: usize| layers.layers.get(i).map_or(0, Vec::len);
    if let Some(j) = (0..=max_j).find(|&j| size(j) >= needed && size(j + 1) >= needed) {
        return Ok(Ok((j, [size(j), size(j + 1)])));
    }
    let sizes: Vec<usize> = (0..=max_j + 1).map(size).collect();
    let best = (0..=max_j).map(|j| size(j).min(size(j + 1))).max().unwrap_or(0);
    let stalled = (1..=max_j + 1).find(|&i| size(i) < needed).unwrap_or(max_j + 1);
    Ok(Err(FailureReport::new(
        "expansion",
        format!("layer {stalled} stalls below {needed}; layer sizes {sizes:?}"),
    )
    .shortfall(needed as f64, best as f64)))
}

/// Certifies two consecutive large BFS layers from `u` within `ell0` steps.
///
/// `g` must be bipartite with minimum degree at least `delta n^{alpha-1}`, `n = g.n()`;
/// the sizes must reach `mu(alpha, beta, rho, delta) n`.
pub fn expansion_cert(g: &Graph, u: usize, delta: f64, params: &SmoothnessParams) -> Result<Outcome<ExpansionCert>> {
    params.validate()?;
    if u >= g.n() {
        return Err(Error::input(format!("root {u} out of range (n = {})", g.n())));
    }
    if two_coloring(g).is_none() {
        return Err(Error::precondition("graph is not bipartite", Vec::new()));
    }
    let (alpha, beta, rho) = (params.alpha, params.beta, params.rho);
    let l0 = ell0(alpha, beta)?;
    let m = mu(alpha, beta, rho, delta)?;
    let n = g.n() as f64;
    let floor = delta * n.powf(alpha - 1.0);
    let low: Vec<usize> = (0..g.n()).filter(|&v| (g.degree(v) as f64) < floor).collect();
    if !low.is_empty() {
        return Err(Error::precondition(
            format!("{} vertices have degree below {floor:.4}", low.len()),
            low,
        ));
    }
    let threshold = m * n;
    let needed = (threshold.ceil() as usize).max(1);
    Ok(match consecutive_layers(g, u, None, l0, needed)? {
        Ok((j0, sizes)) => {
            let absorption_size = (params.big_c / rho).powf(1.0 / (alpha - beta));
            Outcome::Success(ExpansionCert {
                root: u,
                j0,
                sizes,
                threshold,
                needed,
                slack: sizes[0].min(sizes[1]) as f64 - threshold,
                ell0: l0,
                mu: m,
                min_degree_floor: floor,
                absorption_size,
                absorption_holds: needed as f64 >= absorption_size,
            })
        }
        Err(report) => Outcome::Failure(report),
    })
}

impl ExpansionCert {
    /// Recomputes the layer sizes in `g`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let layers = crate::graph::bfs_layers(g, self.root).map_err(|e| e.to_string())?;
        let size = |i: usize| layers.layers.get(i).map_or(0, Vec::len);
        if [size(self.j0), size(self.j0 + 1)] != self.sizes {
            return Err("layer sizes differ from recomputation".into());
        }
        if self.j0 > self.ell0 || self.sizes.iter().any(|&s| s < self.needed) {
            return Err("certificate does not meet its own threshold".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{incidence_graph, PrimePower};
    use crate::graph::named;

    fn params() -> SmoothnessParams {
        SmoothnessParams::new(1.5, 1.0, 1.0, 1.0, 0.1).unwrap()
    }

    #[test]
    fn complete_bipartite_expands_at_once() {
        let g = named::complete_bipartite(6, 6);
        match expansion_cert(&g, 0, 1.0, &params()).unwrap() {
            Outcome::Success(c) => {
                assert!(c.j0 <= 1);
                assert!(c.sizes.iter().all(|&s| s >= 1));
                c.validate(&g).unwrap();
            }
            Outcome::Failure(f) => panic!("{f:?}"),
        }
    }

    #[test]
    fn incidence_graph_certifies_within_two_steps() {
        for q in [2, 3, 4] {
            let g = incidence_graph(PrimePower::new(q).unwrap()).unwrap();
            // degree q+1 must exceed delta * sqrt(n)
            let delta = 0.99 * (q + 1) as f64 / (g.n() as f64).sqrt();
            let c = expansion_cert(&g, 0, delta, &params()).unwrap().success().unwrap();
            assert!(c.j0 <= 2, "q = {q}");
            c.validate(&g).unwrap();
        }
    }

    #[test]
    fn long_path_fails_with_high_threshold() {
        let g = named::path(40);
        // delta / rho far above 12 with alpha near 1 pushes mu * n past the order
        let p = SmoothnessParams::new(1.05, 1.0, 0.01, 1.0, 0.1).unwrap();
        match expansion_cert(&g, 0, 0.5, &p).unwrap() {
            Outcome::Failure(f) => assert_eq!(f.stage, "expansion"),
            Outcome::Success(c) => panic!("{c:?}"),
        }
    }

    #[test]
    fn low_degree_vertices_are_listed() {
        let g = named::path(5);
        match expansion_cert(&g, 0, 1.0, &params()) {
            Err(Error::Precondition { offenders, .. }) => assert_eq!(offenders, vec![0, 1, 2, 3, 4]),
            other => panic!("{other:?}"),
        }
    }
}
