use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forbidden::{find_theta, Pattern};
use crate::graph::{components, Graph};
use crate::rng::{self, Rng};

/// Largest `m + n` accepted by the delete-and-rescan step.
pub const THETA_HOST_CAP: usize = 48;

/// Bipartite `G(m, n, p)` with parts `0..m`, `m..m+n`.
pub fn random_bipartite(m: usize, n: usize, p: f64, rng: &mut Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0,1]")));
    }
    let mut g = Graph::bipartite(m, n)?;
    for u in 0..m {
        for v in m..m + n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, rng: &mut Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0,1]")));
    }
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// How the edge probability of the theta-free construction was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbabilityRule {
    /// `p = (mn)^{-tq/(2tq+t-1)}`.
    ClosedFormOdd,
    /// Largest `p` meeting the even-length expectation inequality, by bisection.
    NumericEven,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaFreeReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub seed: u64,
    pub p: f64,
    pub p_rule: ProbabilityRule,
    /// Upper bound on expected copies divided by half the expected edge count; `<= 1`.
    pub expectation_ratio: f64,
    pub edges_before: usize,
    pub edges_after: usize,
    pub copies_destroyed: usize,
    /// `(1/2)(mn)^{(tq+t-1)/(2tq+t-1)}`, odd `ell` only.
    pub analytic_floor: Option<f64>,
    /// `edges_after` fell below the analytic floor.
    pub floor_shortfall: Option<bool>,
}

/// Edge probability for the first-moment theta-free construction, with its rule and
/// the achieved ratio `bound(E[Y]) / (E[X]/2)`.
pub fn theta_free_probability(m: usize, n: usize, t: usize, ell: usize) -> (f64, ProbabilityRule, f64) {
    let (mf, nf, tf) = (m as f64, n as f64, t as f64);
    let q = (ell / 2) as f64;
    if ell % 2 == 1 {
        let p = (mf * nf).powf(-tf * q / (2.0 * tf * q + tf - 1.0));
        // E[Y] < (1/2) m^{tq+1} n^{tq+1} p^{t(2q+1)}
        let bound_ln = (tf * q + 1.0) * (mf.ln() + nf.ln()) + tf * (2.0 * q + 1.0) * p.ln();
        let ratio = (bound_ln - (mf * nf * p).ln()).exp();
        (p, ProbabilityRule::ClosedFormOdd, ratio)
    } else {
        // log of (1/2)m^{t(q-1)+1} n^{tq+1} p^{2tq} / ((1/2) m n p), increasing in p
        let excess = |ln_p: f64| tf * (q - 1.0) * mf.ln() + tf * q * nf.ln() + (2.0 * tf * q - 1.0) * ln_p;
        if excess(0.0) <= 0.0 {
            return (1.0, ProbabilityRule::NumericEven, excess(0.0).exp());
        }
        let (mut lo, mut hi) = (-745.0_f64, 0.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if excess(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo.exp(), ProbabilityRule::NumericEven, excess(lo).exp())
    }
}

/// Samples bipartite `G(m, n, p)` and deletes one edge from each remaining copy of
/// `theta_{t,ell}` until none is left.
pub fn random_theta_free(m: usize, n: usize, t: usize, ell: usize, seed: u64) -> Result<(Graph, ThetaFreeReport)> {
    Pattern::Theta { t, ell }.validate()?;
    if m == 0 || n == 0 {
        return Err(Error::input("both parts must be nonempty"));
    }
    if m + n > THETA_HOST_CAP {
        return Err(Error::input(format!(
            "m + n = {} exceeds the copy-deletion cap {THETA_HOST_CAP}; use a smaller instance",
            m + n
        )));
    }
    let (p, p_rule, expectation_ratio) = theta_free_probability(m, n, t, ell);
    let mut g = random_bipartite(m, n, p, &mut rng::seeded(seed))?;
    let edges_before = g.edge_count();
    let mut copies_destroyed = 0;
    while let Some(w) = find_theta(&g, t, ell)? {
        let (a, b) = w.edges()[0];
        g.remove_edge(a, b);
        copies_destroyed += 1;
    }
    let edges_after = g.edge_count();
    let analytic_floor = (ell % 2 == 1).then(|| {
        let (tf, q) = (t as f64, (ell / 2) as f64);
        0.5 * ((m * n) as f64).powf((tf * q + tf - 1.0) / (2.0 * tf * q + tf - 1.0))
    });
    let report = ThetaFreeReport {
        m,
        n,
        t,
        ell,
        seed,
        p,
        p_rule,
        expectation_ratio,
        edges_before,
        edges_after,
        copies_destroyed,
        analytic_floor,
        floor_shortfall: analytic_floor.map(|f| (edges_after as f64) < f),
    };
    Ok((g, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinDegreeModel {
    /// Union of `d` edge-disjoint random perfect matchings; `d`-regular, `n` even.
    Matchings,
    /// `G(n, 2d/n)` topped up with random edges at deficient vertices.
    RepairedGnp,
}

/// Random graph with minimum degree at least `d`.
pub fn random_mindeg_graph(n: usize, d: usize, seed: u64, model: MinDegreeModel) -> Result<Graph> {
    if d >= n {
        return Err(Error::input(format!("minimum degree {d} needs more than {n} vertices")));
    }
    let mut rng = rng::seeded(seed);
    match model {
        MinDegreeModel::Matchings => matchings(n, d, &mut rng),
        MinDegreeModel::RepairedGnp => {
            let p = (2.0 * d as f64 / n as f64).min(1.0);
            let mut g = random_gnp(n, p, &mut rng)?;
            repair_min_degree(&mut g, d, &mut rng)?;
            Ok(g)
        }
    }
}

fn matchings(n: usize, d: usize, rng: &mut Rng) -> Result<Graph> {
    if n % 2 == 1 && d > 0 {
        return Err(Error::input(format!("perfect matchings need an even vertex count, got {n}")));
    }
    const ATTEMPTS: usize = 1000;
    let mut g = Graph::new(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    for round in 0..d {
        let mut placed = false;
        for _ in 0..ATTEMPTS {
            order.shuffle(rng);
            if let Some(pairs) = greedy_matching(&g, &order) {
                for (u, v) in pairs {
                    g.add_edge(u, v)?;
                }
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Budget {
                attempts: ATTEMPTS,
                message: format!("no fresh perfect matching found in round {}", round + 1),
            });
        }
    }
    Ok(g)
}

/// Pairs vertices in `order`, each with the first later unmatched non-neighbour.
fn greedy_matching(g: &Graph, order: &[usize]) -> Option<Vec<(usize, usize)>> {
    let n = order.len();
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::with_capacity(n / 2);
    for (i, &u) in order.iter().enumerate() {
        if used[u] {
            continue;
        }
        let &v = order[i + 1..].iter().find(|&&v| !used[v] && !g.has_edge(u, v))?;
        used[u] = true;
        used[v] = true;
        pairs.push((u, v));
    }
    Some(pairs)
}

/// Adds random edges at every vertex of degree `< d` until none remains.
pub fn repair_min_degree(g: &mut Graph, d: usize, rng: &mut Rng) -> Result<()> {
    let n = g.n();
    if d >= n && n > 0 {
        return Err(Error::input(format!("minimum degree {d} needs more than {n} vertices")));
    }
    for v in 0..n {
        let deficit = d.saturating_sub(g.degree(v));
        if deficit == 0 {
            continue;
        }
        let mut cands: Vec<usize> = (0..n).filter(|&x| x != v && !g.has_edge(v, x)).collect();
        cands.shuffle(rng);
        for &x in cands.iter().take(deficit) {
            g.add_edge(v, x)?;
        }
    }
    Ok(())
}

/// Joins consecutive components by one random edge each; degrees never decrease.
pub fn connect_components(g: &mut Graph, rng: &mut Rng) -> Result<()> {
    let comps = components(g);
    for pair in comps.windows(2) {
        let u = *pair[0].choose(rng).unwrap();
        let v = *pair[1].choose(rng).unwrap();
        g.add_edge(u, v)?;
    }
    Ok(())
}

/// Connected random graph with minimum degree at least `d`.
pub fn random_connected_mindeg(n: usize, d: usize, seed: u64) -> Result<Graph> {
    let mut g = random_mindeg_graph(n, d, seed, MinDegreeModel::RepairedGnp)?;
    connect_components(&mut g, &mut rng::stream(seed, 1))?;
    Ok(g)
}
