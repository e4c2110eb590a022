//! Exhaustive Zarankiewicz and Turán numbers at small orders, a seeded greedy lower
//! bound beyond the exact caps, and checks against analytic upper bounds.

mod bounds;
mod search;
mod small;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forbidden::{is_family_free, FamilySpec};
use crate::graph::Graph;
use crate::par::Exec;

pub use bounds::{
    check_quasi_smooth, furedi_bound, furedi_holds, BoundSide, QuasiSmoothReport, SmoothnessParams, Violation,
    FLOAT_SLACK,
};
use search::{Layout, Problem};
use small::SMALL_MAX;

/// Default largest `m + n` searched exactly.
pub const Z_EXACT_CAP: usize = 16;
/// Default largest `n` searched exactly for Turán numbers.
pub const TURAN_EXACT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RecordKind {
    Zarankiewicz { m: usize, n: usize },
    Turan { n: usize },
}

/// A computed extremal number with a graph attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    #[serde(flatten)]
    pub kind: RecordKind,
    pub family: FamilySpec,
    pub value: usize,
    /// `false` for heuristic lower bounds.
    pub exact: bool,
    pub witness: Graph,
}

impl ExtremalRecord {
    /// Re-checks orders, edge count and family-freeness of the witness.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let g = &self.witness;
        match self.kind {
            RecordKind::Zarankiewicz { m, n } => {
                if g.n() != m + n || g.left_size() != Some(m) {
                    return Err(format!("witness is not an {m} by {n} bipartite graph"));
                }
            }
            RecordKind::Turan { n } => {
                if g.n() != n {
                    return Err(format!("witness has {} vertices, expected {n}", g.n()));
                }
            }
        }
        if g.edge_count() != self.value {
            return Err(format!("witness has {} edges, record says {}", g.edge_count(), self.value));
        }
        let report = is_family_free(g, &self.family).map_err(|e| e.to_string())?;
        if let Some(w) = report.witness {
            return Err(format!("witness contains {}", w.pattern));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    /// Best of `restarts` randomized greedy insertions; a lower bound only.
    Heuristic { seed: u64, restarts: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub exec: Exec,
    /// Overrides the default exact-mode cap.
    pub exact_cap: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SearchMode::Exact,
            exec: Exec::default(),
            exact_cap: None,
        }
    }
}

/// `z(m, n, f)` by exhaustive search.
pub fn zarankiewicz(m: usize, n: usize, f: &FamilySpec) -> Result<ExtremalRecord> {
    zarankiewicz_with(m, n, f, &SearchOptions::default())
}

pub fn zarankiewicz_with(m: usize, n: usize, f: &FamilySpec, opts: &SearchOptions) -> Result<ExtremalRecord> {
    f.validate()?;
    let cap = opts.exact_cap.unwrap_or(Z_EXACT_CAP).min(SMALL_MAX);
    // the search runs faster with the larger side as rows
    let rows = m.max(n);
    let (value, mut g, exact) = run(m + n, Layout::Bipartite { m: rows }, f, cap, opts)?;
    if rows != m {
        g = g.swap_sides(rows);
    }
    Ok(ExtremalRecord {
        kind: RecordKind::Zarankiewicz { m, n },
        family: f.clone(),
        value,
        exact,
        witness: g.to_graph(Some(m)),
    })
}

/// `ex(n, f)` by exhaustive search.
pub fn turan(n: usize, f: &FamilySpec) -> Result<ExtremalRecord> {
    turan_with(n, f, &SearchOptions::default())
}

pub fn turan_with(n: usize, f: &FamilySpec, opts: &SearchOptions) -> Result<ExtremalRecord> {
    f.validate()?;
    let cap = opts.exact_cap.unwrap_or(TURAN_EXACT_CAP).min(SMALL_MAX);
    let (value, g, exact) = run(n, Layout::General, f, cap, opts)?;
    Ok(ExtremalRecord {
        kind: RecordKind::Turan { n },
        family: f.clone(),
        value,
        exact,
        witness: g.to_graph(None),
    })
}

fn run(order: usize, layout: Layout, f: &FamilySpec, cap: usize, opts: &SearchOptions) -> Result<(usize, small::Small, bool)> {
    if order > SMALL_MAX {
        return Err(Error::input(format!("order {order} exceeds the search limit {SMALL_MAX}")));
    }
    match opts.mode {
        SearchMode::Exact => {
            if order > cap {
                return Err(Error::input(format!(
                    "order {order} exceeds the exact-search cap {cap}; use heuristic mode"
                )));
            }
            let (v, g) = Problem::solve(order, layout, &f.forbidden, opts.exec);
            Ok((v, g, true))
        }
        SearchMode::Heuristic { seed, restarts } => {
            let (v, g) = Problem::new(order, layout, &f.forbidden).greedy(seed, restarts, opts.exec);
            Ok((v, g, false))
        }
    }
}
