//! Detection of forbidden bipartite patterns and odd cycles, with re-checkable witnesses.

mod cycles;
mod kst;
mod theta;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cycles::{cycle_spectrum, find_cycle_exact, find_cycle_exact_with, girth};
pub use kst::{find_kst, find_kst_with};
pub use theta::{find_theta, find_theta_with};

/// Largest admissible side of a complete bipartite pattern (and branch count of a theta).
pub const MAX_PART: usize = 8;
/// Longest cycle the detectors accept.
pub const MAX_CYCLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Pattern {
    /// `K_{s,t}` with `s <= t`.
    CompleteBipartite { s: usize, t: usize },
    /// `C_{2ell}`.
    EvenCycle { ell: usize },
    /// `t` internally disjoint paths of length `ell` between two vertices.
    Theta { t: usize, ell: usize },
    /// `C_k`, `k` odd.
    OddCycle { k: usize },
}

impl Pattern {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Pattern::CompleteBipartite { s, t } => {
                if s == 0 || s > t {
                    return Err(Error::input(format!("K_{{{s},{t}}} needs 1 <= s <= t")));
                }
                if t > MAX_PART {
                    return Err(Error::input(format!("K_{{{s},{t}}} exceeds part cap {MAX_PART}")));
                }
            }
            Pattern::EvenCycle { ell } => {
                if ell < 2 || 2 * ell > MAX_CYCLE {
                    return Err(Error::input(format!(
                        "C_{{2*{ell}}} needs 2 <= ell and length <= {MAX_CYCLE}"
                    )));
                }
            }
            Pattern::Theta { t, ell } => {
                if t < 2 || ell < 2 {
                    return Err(Error::input("theta needs t >= 2 and ell >= 2"));
                }
                if t > MAX_PART || 2 * ell > MAX_CYCLE {
                    return Err(Error::input(format!(
                        "theta_{{{t},{ell}}} exceeds caps (t <= {MAX_PART}, 2 ell <= {MAX_CYCLE})"
                    )));
                }
            }
            Pattern::OddCycle { k } => {
                if k < 3 || k % 2 == 0 || k > MAX_CYCLE {
                    return Err(Error::input(format!("odd cycle length {k} must be odd in 3..={MAX_CYCLE}")));
                }
            }
        }
        Ok(())
    }

    /// Number of vertices in one copy of the pattern.
    pub fn order(&self) -> usize {
        match *self {
            Pattern::CompleteBipartite { s, t } => s + t,
            Pattern::EvenCycle { ell } => 2 * ell,
            Pattern::Theta { t, ell } => 2 + t * (ell - 1),
            Pattern::OddCycle { k } => k,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        !matches!(self, Pattern::OddCycle { .. })
    }

    fn cycle(len: usize) -> Pattern {
        if len % 2 == 0 {
            Pattern::EvenCycle { ell: len / 2 }
        } else {
            Pattern::OddCycle { k: len }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::CompleteBipartite { s, t } => write!(f, "K_{{{s},{t}}}"),
            Pattern::EvenCycle { ell } => write!(f, "C_{}", 2 * ell),
            Pattern::Theta { t, ell } => write!(f, "theta_{{{t},{ell}}}"),
            Pattern::OddCycle { k } => write!(f, "C_{k}"),
        }
    }
}

/// A finite list of forbidden patterns, checked in list order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub forbidden: Vec<Pattern>,
}

impl FamilySpec {
    pub fn new(forbidden: Vec<Pattern>) -> Result<Self> {
        let f = Self { forbidden };
        f.validate()?;
        Ok(f)
    }

    pub fn single(p: Pattern) -> Result<Self> {
        Self::new(vec![p])
    }

    pub fn validate(&self) -> Result<()> {
        if self.forbidden.is_empty() {
            return Err(Error::input("family must contain at least one pattern"));
        }
        self.forbidden.iter().try_for_each(Pattern::validate)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: FamilySpec =
            serde_json::from_str(text).map_err(|e| Error::input(format!("family spec: {e}")))?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family spec serializes")
    }

    /// Short stable identifier: first 16 hex digits of SHA-256 over the canonical JSON.
    pub fn hash(&self) -> String {
        crate::cert::sha256_hex(self.to_json().as_bytes())[..16].to_string()
    }
}

/// A located copy of a pattern.
///
/// Vertex layout: for `K_{s,t}` the `s`-side followed by the `t`-side; for cycles the
/// cyclic order; for thetas the two branch vertices followed by each branch's
/// interior, listed from the first branch vertex towards the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
}

impl Witness {
    /// Structural re-check against `g`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let vs = &self.vertices;
        if vs.len() != self.pattern.order() {
            return Err(format!("expected {} vertices, got {}", self.pattern.order(), vs.len()));
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
            return Err(format!("vertex {v} out of range"));
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vs.len() {
            return Err("witness vertices are not distinct".into());
        }
        let need = |u: usize, v: usize| {
            if g.has_edge(u, v) {
                Ok(())
            } else {
                Err(format!("missing edge {u}-{v}"))
            }
        };
        match self.pattern {
            Pattern::CompleteBipartite { s, .. } => {
                let (a, b) = vs.split_at(s);
                for &x in a {
                    for &y in b {
                        need(x, y)?;
                    }
                }
            }
            Pattern::EvenCycle { .. } | Pattern::OddCycle { .. } => {
                for i in 0..vs.len() {
                    need(vs[i], vs[(i + 1) % vs.len()])?;
                }
            }
            Pattern::Theta { t, ell } => {
                let (a, b) = (vs[0], vs[1]);
                for branch in 0..t {
                    let inner = &vs[2 + branch * (ell - 1)..2 + (branch + 1) * (ell - 1)];
                    let mut prev = a;
                    for &x in inner {
                        need(prev, x)?;
                        prev = x;
                    }
                    need(prev, b)?;
                }
            }
        }
        Ok(())
    }

    /// Edges of the located copy.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let vs = &self.vertices;
        let mut out = Vec::new();
        match self.pattern {
            Pattern::CompleteBipartite { s, .. } => {
                let (a, b) = vs.split_at(s);
                for &x in a {
                    for &y in b {
                        out.push((x, y));
                    }
                }
            }
            Pattern::EvenCycle { .. } | Pattern::OddCycle { .. } => {
                for i in 0..vs.len() {
                    out.push((vs[i], vs[(i + 1) % vs.len()]));
                }
            }
            Pattern::Theta { t, ell } => {
                for branch in 0..t {
                    let inner = &vs[2 + branch * (ell - 1)..2 + (branch + 1) * (ell - 1)];
                    let mut prev = vs[0];
                    for &x in inner {
                        out.push((prev, x));
                        prev = x;
                    }
                    out.push((prev, vs[1]));
                }
            }
        }
        out
    }
}

pub fn find_pattern(g: &Graph, p: &Pattern) -> Result<Option<Witness>> {
    p.validate()?;
    match *p {
        Pattern::CompleteBipartite { s, t } => find_kst(g, s, t),
        Pattern::EvenCycle { ell } => find_cycle_exact(g, 2 * ell),
        Pattern::Theta { t, ell } => find_theta(g, t, ell),
        Pattern::OddCycle { k } => find_cycle_exact(g, k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub free: bool,
    pub witness: Option<Witness>,
}

/// `free` iff no pattern of `f` occurs; otherwise the first witness in family order.
pub fn is_family_free(g: &Graph, f: &FamilySpec) -> Result<FreenessReport> {
    f.validate()?;
    for p in &f.forbidden {
        if let Some(w) = find_pattern(g, p)? {
            return Ok(FreenessReport {
                free: false,
                witness: Some(w),
            });
        }
    }
    Ok(FreenessReport {
        free: true,
        witness: None,
    })
}
