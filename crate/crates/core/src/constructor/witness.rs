use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub const SEGMENT_LABELS: [&str; 5] = ["uv", "Q", "R_w", "T", "P"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub label: String,
    /// Walk order around the cycle; consecutive segments share their boundary vertex.
    pub vertices: Vec<usize>,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// An odd cycle through a same-side edge, split into the pieces it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    /// Cyclic order, starting `u, v`.
    pub vertices: Vec<usize>,
    pub through_edge: (usize, usize),
    /// `uv`, `Q`, `R_w`, `T`, `P` in walk order; `P` is traversed from `w*` back to `u`.
    pub segments: Vec<Segment>,
}

impl CycleWitness {
    /// Joins the segments; `p_path` runs from `u` to `w*` and is reversed here.
    pub fn assemble(u: usize, q: Vec<usize>, r: Vec<usize>, t: Vec<usize>, p_path: &[usize]) -> Self {
        let v = q[0];
        let mut back = p_path.to_vec();
        back.reverse();
        let pieces = [vec![u, v], q, r, t, back];
        let mut vertices = vec![u];
        for s in &pieces {
            vertices.extend_from_slice(&s[1..]);
        }
        vertices.pop();
        CycleWitness {
            vertices,
            through_edge: (u, v),
            segments: SEGMENT_LABELS
                .iter()
                .zip(pieces)
                .map(|(l, vs)| Segment {
                    label: l.to_string(),
                    vertices: vs,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(1, q, r, t, p)`.
    pub fn lengths(&self) -> Vec<usize> {
        self.segments.iter().map(Segment::length).collect()
    }

    /// Full re-check against `g`: a simple cycle of odd length `k` through the edge,
    /// matching its decomposition, with an even `T`.
    pub fn validate(&self, g: &Graph, k: usize) -> std::result::Result<(), String> {
        let c = &self.vertices;
        if c.len() != k || k % 2 == 0 {
            return Err(format!("cycle has {} vertices, expected odd {k}", c.len()));
        }
        if c.iter().any(|&x| x >= g.n()) {
            return Err("vertex out of range".into());
        }
        if c.iter().collect::<BTreeSet<_>>().len() != c.len() {
            return Err("cycle repeats a vertex".into());
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if !g.has_edge(a, b) {
                return Err(format!("{a}-{b} is not an edge"));
            }
        }
        if (c[0], c[1]) != self.through_edge {
            return Err("cycle does not start with the through edge".into());
        }
        let labels: Vec<&str> = self.segments.iter().map(|s| s.label.as_str()).collect();
        if labels != SEGMENT_LABELS {
            return Err(format!("segment labels {labels:?}"));
        }
        if self.segments.iter().any(|s| s.vertices.is_empty()) {
            return Err("empty segment".into());
        }
        for w in self.segments.windows(2) {
            if w[0].vertices.last() != w[1].vertices.first() {
                return Err(format!("segments {} and {} do not meet", w[0].label, w[1].label));
            }
        }
        let mut walk = vec![c[0]];
        for s in &self.segments {
            walk.extend_from_slice(&s.vertices[1..]);
        }
        if walk.pop() != Some(c[0]) || walk != *c {
            return Err("segments do not concatenate to the cycle".into());
        }
        let len = self.lengths();
        if len[0] != 1 || len.iter().sum::<usize>() != k {
            return Err(format!("segment lengths {len:?} do not sum to {k}"));
        }
        if len[3] % 2 != 0 {
            return Err(format!("T has odd length {}", len[3]));
        }
        Ok(())
    }
}

/// A 2-colouring of the input under which no edge is monochromatic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCert {
    pub side: Vec<bool>,
}

impl BipartiteCert {
    pub fn parts(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.side.len()).partition(|&v| !self.side[v])
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.side.len() != g.n() {
            return Err("colouring has the wrong length".into());
        }
        match g.edges().into_iter().find(|&(a, b)| self.side[a] == self.side[b]) {
            Some((a, b)) => Err(format!("edge {a}-{b} lies inside one side")),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn assemble_pentagon() {
        let g = named::cycle(5);
        // u=0, v=1, Q=1..2, R=2..3, T=[3], P=0,4,3
        let c = CycleWitness::assemble(0, vec![1, 2], vec![2, 3], vec![3], &[0, 4, 3]);
        assert_eq!(c.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.lengths(), vec![1, 1, 1, 0, 2]);
        c.validate(&g, 5).unwrap();
        assert!(c.validate(&g, 7).is_err());
    }

    #[test]
    fn tampered_cycle_fails() {
        let g = named::cycle(5);
        let mut c = CycleWitness::assemble(0, vec![1, 2], vec![2, 3], vec![3], &[0, 4, 3]);
        c.vertices.swap(2, 3);
        assert!(c.validate(&g, 5).is_err());
    }

    #[test]
    fn bipartite_cert() {
        let g = named::cycle(6);
        let ok = BipartiteCert {
            side: (0..6).map(|v| v % 2 == 1).collect(),
        };
        ok.validate(&g).unwrap();
        assert_eq!(ok.parts().0, vec![0, 2, 4]);
        let bad = BipartiteCert { side: vec![false; 6] };
        assert!(bad.validate(&g).is_err());
    }
}
