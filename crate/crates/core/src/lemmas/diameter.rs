use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_layers_within, diameter, is_connected, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub n: usize,
    /// Degree floor the bound is computed from.
    pub min_degree: usize,
    pub diameter: usize,
    /// `3n / D`.
    pub bound: f64,
    pub holds: bool,
}

/// Compares the diameter of a connected graph with `3n / D`, where `D` is its minimum
/// degree (or the supplied floor, which must not exceed it).
pub fn diameter_check(g: &Graph, floor: Option<usize>) -> Result<DiameterReport> {
    if g.n() == 0 || !is_connected(g) {
        return Err(Error::precondition("graph must be non-empty and connected", Vec::new()));
    }
    let actual_min = g.min_degree().unwrap_or(0);
    let d = floor.unwrap_or(actual_min);
    if d == 0 || d > actual_min {
        return Err(Error::input(format!(
            "degree floor {d} must lie in 1..={actual_min}"
        )));
    }
    let diam = diameter(g).finite().expect("connected");
    // diam <= 3n/D  <=>  diam * D <= 3n
    Ok(DiameterReport {
        n: g.n(),
        min_degree: d,
        diameter: diam,
        bound: 3.0 * g.n() as f64 / d as f64,
        holds: diam * d <= 3 * g.n(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallDiameterReport {
    pub radius: usize,
    /// Smallest ball of this radius over all vertices.
    pub min_ball: usize,
    pub diameter: usize,
    /// `radius * floor(3n / (min_ball - 1))`.
    pub bound: usize,
    pub holds: bool,
}

/// The diameter bound applied to the `radius`-th power: every ball of that radius
/// holding `b` vertices gives the power minimum degree `b - 1`, hence
/// `diam <= radius * floor(3n / (b - 1))`.
pub fn ball_diameter_check(g: &Graph, radius: usize) -> Result<BallDiameterReport> {
    if g.n() < 2 || !is_connected(g) || radius == 0 {
        return Err(Error::input("need a connected graph on at least two vertices and radius >= 1"));
    }
    let mut min_ball = usize::MAX;
    for v in 0..g.n() {
        let l = bfs_layers_within(g, v, None, radius)?;
        min_ball = min_ball.min(l.ball_size(l.depth()));
    }
    let diam = diameter(g).finite().expect("connected");
    let bound = radius * (3 * g.n() / (min_ball - 1));
    Ok(BallDiameterReport {
        radius,
        min_ball,
        diameter: diam,
        bound,
        holds: diam <= bound,
    })
}
