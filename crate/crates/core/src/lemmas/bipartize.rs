use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, is_connected, Graph};

/// A spanning bipartite subgraph together with the colouring that defines it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartization {
    /// Every edge of the input whose ends got different colours.
    pub graph: Graph,
    /// `side[v]` is `true` for the second colour class.
    pub side: Vec<bool>,
    /// Cut size after each improving step, starting with the initial colouring.
    pub cut_history: Vec<usize>,
    pub flips: usize,
    pub merges: usize,
}

impl Bipartization {
    pub fn same_side_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges().into_iter().filter(|&(u, v)| self.side[u] == self.side[v]).collect()
    }
}

fn cut_graph(g: &Graph, side: &[bool]) -> Graph {
    g.filter_edges(|u, v| side[u] != side[v])
}

/// Max-cut local search. Starts from BFS parity, flips the vertex of largest positive
/// gain (lowest index on ties) until none remains, and joins components of the cut
/// graph by recolouring the smaller one across a same-side edge.
pub fn bipartize(g: &Graph) -> Result<Bipartization> {
    if !is_connected(g) {
        let comps = components(g);
        let stray = comps.iter().skip(1).flatten().copied().collect();
        return Err(Error::precondition(
            format!("graph has {} components; bipartize each component separately", comps.len()),
            stray,
        ));
    }
    let n = g.n();
    let mut side = vec![false; n];
    if n > 0 {
        let dist = crate::graph::bfs_distances(g, 0);
        for v in 0..n {
            side[v] = dist[v].is_some_and(|d| d % 2 == 1);
        }
    }
    // gain[v] = same-side neighbours minus cross neighbours
    let gain_of = |side: &[bool], v: usize| -> i64 {
        g.neighbors(v).map(|x| if side[x] == side[v] { 1 } else { -1 }).sum()
    };
    let mut gain: Vec<i64> = (0..n).map(|v| gain_of(&side, v)).collect();
    let mut cut = g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count();
    let mut out = Bipartization {
        graph: Graph::new(0)?,
        side: Vec::new(),
        cut_history: vec![cut],
        flips: 0,
        merges: 0,
    };
    loop {
        let best = (0..n).filter(|&v| gain[v] > 0).max_by_key(|&v| (gain[v], std::cmp::Reverse(v)));
        if let Some(v) = best {
            cut = (cut as i64 + gain[v]) as usize;
            side[v] = !side[v];
            gain[v] = -gain[v];
            for x in g.neighbors(v) {
                gain[x] += if side[x] == side[v] { 2 } else { -2 };
            }
            out.flips += 1;
            out.cut_history.push(cut);
            continue;
        }
        let h = cut_graph(g, &side);
        let comps = components(&h);
        if comps.len() <= 1 {
            out.graph = h;
            break;
        }
        let mut comp_of = vec![0; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let (a, b) = g
            .edges()
            .into_iter()
            .find(|&(a, b)| comp_of[a] != comp_of[b])
            .expect("a connected graph links its cut components");
        let (ca, cb) = (&comps[comp_of[a]], &comps[comp_of[b]]);
        let smaller = if cb.len() <= ca.len() { cb } else { ca };
        // every edge leaving a cut component is same-side, so this only adds cut edges
        for &v in smaller {
            side[v] = !side[v];
        }
        for v in 0..n {
            gain[v] = gain_of(&side, v);
        }
        cut = g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count();
        out.merges += 1;
        out.cut_history.push(cut);
    }
    out.side = side;
    Ok(out)
}

/// Checks the properties promised by [`bipartize`]; `Err` names the first failure.
pub fn check_bipartization(g: &Graph, b: &Bipartization) -> std::result::Result<(), String> {
    if b.side.len() != g.n() || b.graph.n() != g.n() {
        return Err("order mismatch".into());
    }
    if b.graph != cut_graph(g, &b.side) {
        return Err("subgraph is not the cut of its colouring".into());
    }
    if g.n() > 0 && !is_connected(&b.graph) {
        return Err("subgraph is disconnected".into());
    }
    if let Some(v) = (0..g.n()).find(|&v| 2 * b.graph.degree(v) < g.degree(v)) {
        return Err(format!(
            "vertex {v} keeps {} of {} edges",
            b.graph.degree(v),
            g.degree(v)
        ));
    }
    if b.cut_history.windows(2).any(|w| w[1] <= w[0]) {
        return Err("cut size did not increase at every step".into());
    }
    if b.cut_history.last() != Some(&b.graph.edge_count()) {
        return Err("cut history does not end at the final cut".into());
    }
    Ok(())
}
