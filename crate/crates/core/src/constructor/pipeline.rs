use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::config::{ConstructorConfig, Mode, Thresholds};
use super::steps::{balanced_split, good_coloring_filter_with, good_threshold, greedy_even_path};
use super::witness::{BipartiteCert, CycleWitness};
use crate::bitset::VertexSet;
use crate::cert::FailureReport;
use crate::error::{Error, Result};
use crate::graph::{compact, is_connected, min_degree_subgraph, shortest_path_to_set, Graph};
use crate::lemmas::{bipartize, c2l_reach, consecutive_layers, robust_reach, PathFamily, ReachOptions};
use crate::rng;

/// Quantities observed along one run, filled in as far as the run got.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineTrace {
    pub deviations: Vec<String>,
    pub thresholds: Option<Thresholds>,
    pub same_side_edges: usize,
    pub edges_tried: usize,
    pub edge: Option<(usize, usize)>,
    pub split_attempts: Option<usize>,
    pub a_size: Option<usize>,
    /// Paths found from `u` inside `A`.
    pub reach_size: Option<usize>,
    pub p: Option<usize>,
    /// Paths of length `p`.
    pub s_size: Option<usize>,
    pub coloring_attempts: Option<usize>,
    pub good_size: Option<usize>,
    /// Vertices of the dense core and how many of them are path endpoints.
    pub core_size: Option<usize>,
    pub core_endpoints: Option<usize>,
    pub q: Option<usize>,
    pub y: Option<usize>,
    pub j0: Option<usize>,
    pub r: Option<usize>,
    pub w_size: Option<usize>,
    pub w_blocked: Option<usize>,
    pub star_size: Option<usize>,
    pub t: Option<i64>,
    pub starts_tried: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OddCycleOutcome {
    Cycle { witness: CycleWitness, trace: PipelineTrace },
    Bipartite { cert: BipartiteCert },
    Failure { report: FailureReport, trace: PipelineTrace },
    /// `p` and `q + r` disagree in parity, or `t` came out odd.
    ParityAnomaly { report: FailureReport, trace: PipelineTrace },
}

impl OddCycleOutcome {
    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            OddCycleOutcome::Cycle { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&PipelineTrace> {
        match self {
            OddCycleOutcome::Cycle { trace, .. }
            | OddCycleOutcome::Failure { trace, .. }
            | OddCycleOutcome::ParityAnomaly { trace, .. } => Some(trace),
            OddCycleOutcome::Bipartite { .. } => None,
        }
    }
}

enum Stop {
    Fail(FailureReport),
    Anomaly(FailureReport),
}

type Step<T> = std::result::Result<T, Stop>;

fn fail<T>(stage: &str, reason: impl Into<String>) -> Step<T> {
    Err(Stop::Fail(FailureReport::new(stage, reason)))
}

fn short<T>(stage: &str, reason: impl Into<String>, needed: f64, achieved: f64) -> Step<T> {
    Err(Stop::Fail(FailureReport::new(stage, reason).shortfall(needed, achieved)))
}

/// Randomised or threshold errors of a step become stage failures; input errors
/// propagate.
fn stage_err(stage: &str, e: Error) -> Result<Stop> {
    match e {
        Error::Budget { .. } | Error::Precondition { .. } | Error::Invariant(_) => {
            Ok(Stop::Fail(FailureReport::new(stage, e.to_string())))
        }
        other => Err(other),
    }
}

const STREAM_SPLIT: u64 = 1;
const STREAM_COLOR: u64 = 2;
const STREAM_REACH: u64 = 3;
const STREAM_INNER: u64 = 4;

fn sub_seed(seed: u64, stream: u64) -> u64 {
    rng::stream(seed, stream).gen()
}

fn set_of(n: usize, it: impl IntoIterator<Item = usize>) -> VertexSet {
    VertexSet::from_iter_with_capacity(n, it)
}

/// Runs the construction: bipartize, then try to close an odd cycle of length `cfg.k`
/// through a same-side edge.
pub fn find_odd_cycle(g: &Graph, cfg: &ConstructorConfig) -> Result<OddCycleOutcome> {
    cfg.validate()?;
    if g.n() == 0 || !is_connected(g) {
        return Err(Error::precondition("graph must be non-empty and connected", Vec::new()));
    }
    let th = Thresholds::compute(cfg, g.n())?;
    let mut trace = PipelineTrace {
        deviations: cfg.deviations(),
        thresholds: Some(th.clone()),
        ..PipelineTrace::default()
    };
    if cfg.enforce_min_degree {
        let min = g.min_degree().unwrap_or(0);
        if (min as f64) < th.min_degree {
            let report = FailureReport::new("min_degree", format!("minimum degree {min} is below {:.4}", th.min_degree))
                .shortfall(th.min_degree, min as f64);
            return Ok(OddCycleOutcome::Failure { report, trace });
        }
    }
    let bip = bipartize(g)?;
    let same = bip.same_side_edges(g);
    if same.is_empty() {
        return Ok(OddCycleOutcome::Bipartite {
            cert: BipartiteCert { side: bip.side },
        });
    }
    trace.same_side_edges = same.len();
    let edges = if cfg.all_edges { &same[..] } else { &same[..1] };
    let mut last = None;
    for (i, &(u, v)) in edges.iter().enumerate() {
        let mut t = PipelineTrace {
            edges_tried: i + 1,
            edge: Some((u, v)),
            ..trace.clone()
        };
        match run_edge(g, &bip.graph, u, v, cfg, &th, &mut t)? {
            Ok(witness) => return Ok(OddCycleOutcome::Cycle { witness, trace: t }),
            Err(Stop::Anomaly(report)) => return Ok(OddCycleOutcome::ParityAnomaly { report, trace: t }),
            Err(Stop::Fail(report)) => last = Some((report, t)),
        }
    }
    let (report, trace) = last.expect("at least one edge");
    Ok(OddCycleOutcome::Failure { report, trace })
}

/// Endpoint family in `H[A]` from `u`, all of one length `p`, with no endpoint inside
/// another path.
fn endpoint_family(
    h: &Graph,
    a: &VertexSet,
    u: usize,
    cfg: &ConstructorConfig,
    th: &Thresholds,
    trace: &mut PipelineTrace,
) -> Result<Step<(PathFamily, usize)>> {
    let ha = h.induced(a);
    match cfg.mode {
        Mode::General { .. } => {
            let opts = ReachOptions {
                cap: Some(th.reach_cap),
                ..ReachOptions::new(th.reach_len)
            };
            let family = robust_reach(&ha, u, &opts)?;
            trace.reach_size = Some(family.len());
            if family.is_empty() {
                return Ok(short("reach", "no vertex reachable from u inside A", 1.0, 0.0));
            }
            let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
            for path in &family.paths {
                *by_len.entry(path.len() - 1).or_insert(0) += 1;
            }
            // most common length, longest on ties
            let (&p, _) = by_len.iter().max_by_key(|(_, &c)| c).expect("non-empty");
            let s = family.retain(|_, path| path.len() == p + 1);
            trace.p = Some(p);
            trace.s_size = Some(s.len());
            let needed = th.good_paths.unwrap_or_else(|| good_threshold(s.len(), p));
            let seed = sub_seed(cfg.seed, STREAM_COLOR);
            match good_coloring_filter_with(&s, p, needed, seed, cfg.coloring_retries) {
                Ok(good) => {
                    trace.coloring_attempts = Some(good.attempts);
                    trace.good_size = Some(good.family.len());
                    if good.family.is_empty() {
                        return Ok(short("coloring", "no good path survives", 1.0, 0.0));
                    }
                    Ok(Ok((good.family, p)))
                }
                Err(e) => Ok(Err(stage_err("coloring", e)?)),
            }
        }
        Mode::C2l { ell, .. } => {
            let (hc, old) = compact(&ha, &set_of(h.n(), component_of(&ha, u)));
            let root = old.binary_search(&u).expect("root kept");
            let d = th.reach_degree;
            if d < 2 * ell {
                return Ok(short("reach", format!("degree {d} is below 2 ell = {}", 2 * ell), (2 * ell) as f64, d as f64));
            }
            let min = hc.min_degree().unwrap_or(0);
            if min < d {
                return Ok(short(
                    "reach",
                    format!("H[A] around u has minimum degree {min}, below {d}"),
                    d as f64,
                    min as f64,
                ));
            }
            let seed = sub_seed(cfg.seed, STREAM_REACH);
            match c2l_reach(&hc, root, ell, d, seed, &cfg.c2l) {
                Ok(res) => {
                    let paths = res
                        .family
                        .paths
                        .iter()
                        .map(|p| p.iter().map(|&x| old[x]).collect())
                        .collect();
                    let family = PathFamily::new(u, paths, false);
                    trace.reach_size = Some(family.len());
                    trace.p = Some(ell);
                    trace.s_size = Some(family.len());
                    if family.is_empty() {
                        return Ok(short("reach", "no path of length ell inside A", 1.0, 0.0));
                    }
                    Ok(Ok((family, ell)))
                }
                Err(e) => Ok(Err(stage_err("reach", e)?)),
            }
        }
    }
}

fn component_of(g: &Graph, u: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    let mut out = vec![u];
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Parent pointers of a breadth-first search inside `allowed`.
fn bfs_parents(g: &Graph, root: usize, allowed: &VertexSet) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if parent[y] == usize::MAX && allowed.contains(y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent
}

fn trace_back(parent: &[usize], root: usize, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while v != root {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

fn run_edge(
    g: &Graph,
    h: &Graph,
    u: usize,
    v: usize,
    cfg: &ConstructorConfig,
    th: &Thresholds,
    trace: &mut PipelineTrace,
) -> Result<Step<CycleWitness>> {
    let n = g.n();
    // split
    let split = match balanced_split(h, th.split_fraction, sub_seed(cfg.seed, STREAM_SPLIT), cfg.split_retries) {
        Ok(s) => s,
        Err(e) => return Ok(Err(stage_err("split", e)?)),
    };
    trace.split_attempts = Some(split.attempts);
    let split = if split.in_a[u] { split } else { split.swapped() };
    let (a, b) = (split.a(), split.b());
    trace.a_size = Some(a.len());

    // endpoint family
    let (family, p) = match endpoint_family(h, &a, u, cfg, th, trace)? {
        Ok(x) => x,
        Err(stop) => return Ok(Err(stop)),
    };
    let ends = set_of(n, family.endpoints.iter().copied());

    // dense core between endpoints and B
    let between = |keep: &VertexSet| h.filter_edges(|x, y| (keep.contains(x) && b.contains(y)) || (keep.contains(y) && b.contains(x)));
    let core = min_degree_subgraph(&between(&ends), th.core_degree);
    if core.is_empty() {
        let best = between(&ends).max_degree();
        return Ok(short("dense_core", "no subgraph of the required minimum degree", th.core_degree as f64, best as f64));
    }
    let core_set = core.kept_set();
    let core_ends: Vec<usize> = core.kept.iter().copied().filter(|&x| ends.contains(x)).collect();
    trace.core_size = Some(core.kept.len());
    trace.core_endpoints = Some(core_ends.len());

    // Q
    let target = match cfg.mode {
        Mode::General { .. } => core_set.clone(),
        Mode::C2l { ell, .. } if ell % 2 == 0 => set_of(n, core_ends.iter().copied()),
        Mode::C2l { .. } => set_of(n, core.kept.iter().copied().filter(|&x| b.contains(x))),
    };
    let Some(q_path) = shortest_path_to_set(h, v, &target, None) else {
        return Ok(fail("shortest_path", "target set unreachable from v"));
    };
    let q = q_path.len() - 1;
    let y = *q_path.last().expect("non-empty");
    trace.q = Some(q);
    trace.y = Some(y);
    if q as u64 > th.max_q {
        return Ok(short("shortest_path", format!("Q has length {q}"), th.max_q as f64, q as f64));
    }
    let q_set = set_of(n, q_path.iter().copied());

    // W with its paths R_w from y
    let (r, r_paths) = match cfg.mode {
        Mode::General { .. } => {
            if q_path[..q].iter().any(|&x| core_set.contains(x)) {
                return Ok(fail("shortest_path", "Q meets the dense core before its end"));
            }
            let found = consecutive_layers(&core.graph, y, Some(&core_set), th.reach_len, th.layer_size)?;
            let (j0, _) = match found {
                Ok(x) => x,
                Err(report) => return Ok(Err(Stop::Fail(report))),
            };
            trace.j0 = Some(j0);
            let parent = bfs_parents(&core.graph, y, &core_set);
            let dist = |x: usize| trace_back(&parent, y, x).len() - 1;
            // the layer on the A side of the core
            let r = if (j0 % 2 == 0) == a.contains(y) { j0 } else { j0 + 1 };
            let w: Vec<usize> = core.kept.iter().copied().filter(|&x| parent[x] != usize::MAX && dist(x) == r).collect();
            if let Some(&x) = w.iter().find(|&&x| !ends.contains(x)) {
                return Ok(Err(Stop::Anomaly(FailureReport::new(
                    "expansion",
                    format!("layer {r} from y contains {x}, which is not a path endpoint"),
                ))));
            }
            let paths: BTreeMap<usize, Vec<usize>> = w.iter().map(|&x| (x, trace_back(&parent, y, x))).collect();
            (r, paths)
        }
        Mode::C2l { ell, .. } => {
            let outside_q = core.kept.iter().filter(|&&x| q_set.contains(x) && x != y).count();
            if outside_q > 1 {
                return Ok(fail("shortest_path", format!("the core holds {outside_q} vertices of Q besides y")));
            }
            let keep = set_of(n, core.kept.iter().copied().filter(|&x| x == y || !q_set.contains(x)));
            let (inner, old) = compact(&core.graph, &keep);
            let root = old.binary_search(&y).expect("y kept");
            let d = th.inner_degree;
            let min = inner.min_degree().unwrap_or(0);
            if d < 2 * ell || min < d {
                let need = d.max(2 * ell);
                return Ok(short(
                    "expansion",
                    format!("inner reach needs degree {need}; core minus Q has minimum degree {min} and d = {d}"),
                    need as f64,
                    min.min(d) as f64,
                ));
            }
            match c2l_reach(&inner, root, ell, d, sub_seed(cfg.seed, STREAM_INNER), &cfg.c2l) {
                Ok(res) => {
                    let paths: BTreeMap<usize, Vec<usize>> = res
                        .family
                        .paths
                        .iter()
                        .map(|p| {
                            let p: Vec<usize> = p.iter().map(|&x| old[x]).collect();
                            (*p.last().expect("non-empty"), p)
                        })
                        .collect();
                    if let Some(&x) = paths.keys().find(|&&x| !ends.contains(x)) {
                        return Ok(Err(Stop::Anomaly(FailureReport::new(
                            "expansion",
                            format!("depth-ell vertex {x} is not a path endpoint"),
                        ))));
                    }
                    (ell, paths)
                }
                Err(e) => return Ok(Err(stage_err("expansion", e)?)),
            }
        }
    };
    trace.r = Some(r);
    trace.w_size = Some(r_paths.len());
    if r_paths.is_empty() {
        return Ok(short("expansion", "no vertex at the chosen depth", 1.0, 0.0));
    }

    // drop endpoints whose path meets Q
    let usable: Vec<usize> = r_paths
        .keys()
        .copied()
        .filter(|&w| family.path_to(w).expect("endpoint").iter().all(|&x| !q_set.contains(x)))
        .collect();
    trace.w_blocked = Some(r_paths.len() - usable.len());
    if usable.is_empty() {
        return Ok(short("reuse_filter", "every path to W meets Q", 1.0, 0.0));
    }

    // H*
    let star = min_degree_subgraph(&between(&set_of(n, usable.iter().copied())), th.star_degree);
    let star_set = star.kept_set();
    let starts: Vec<usize> = usable.iter().copied().filter(|&w| star_set.contains(w)).collect();
    trace.star_size = Some(star.kept.len());
    if starts.is_empty() {
        return Ok(short("star_core", "no usable vertex survives in the extension core", 1.0, 0.0));
    }

    // length bookkeeping
    if p % 2 != (q + r) % 2 {
        return Ok(Err(Stop::Anomaly(FailureReport::new(
            "parity",
            format!("p = {p} and q + r = {} differ in parity", q + r),
        ))));
    }
    let t = cfg.k as i64 - 1 - (q + r + p) as i64;
    trace.t = Some(t);
    if t < 0 {
        return Ok(short("length", format!("1 + q + r + p = {} exceeds k", 1 + q + r + p), (1 + q + r + p) as f64, cfg.k as f64));
    }
    if t % 2 != 0 {
        return Ok(Err(Stop::Anomaly(FailureReport::new("parity", format!("t = {t} is odd")))));
    }
    let t = t as usize;

    // T, trying each start in turn
    let mut last_err = String::new();
    for (i, &w) in starts.iter().enumerate() {
        trace.starts_tried = Some(i + 1);
        let r_path = &r_paths[&w];
        let mut avoid = q_set.clone();
        for &x in r_path {
            avoid.insert(x);
        }
        avoid.remove(w);
        let t_path = match greedy_even_path(&star.graph, w, t, &avoid, th.path_budget) {
            Ok(path) => path,
            Err(e @ Error::Budget { .. }) => {
                last_err = e.to_string();
                continue;
            }
            Err(e) => return Err(e),
        };
        let w_star = *t_path.last().expect("non-empty");
        let Some(p_path) = family.path_to(w_star) else {
            return Ok(Err(Stop::Anomaly(FailureReport::new("path_extension", format!("T ends at {w_star}, not an endpoint")))));
        };
        if let Some(bad) = check_disjoint(&q_path, r_path, &t_path, p_path) {
            return Ok(fail("assembly", bad));
        }
        let c = CycleWitness::assemble(u, q_path.clone(), r_path.clone(), t_path, p_path);
        if let Err(e) = c.validate(g, cfg.k) {
            return Ok(fail("assembly", e));
        }
        return Ok(Ok(c));
    }
    Ok(short(
        "path_extension",
        format!("no start in W extends to an even path of length {t}: {last_err}"),
        t as f64,
        0.0,
    ))
}

/// The disjointness the assembly relies on, checked rather than assumed.
fn check_disjoint(q: &[usize], r: &[usize], t: &[usize], p: &[usize]) -> Option<String> {
    let qs: BTreeSet<usize> = q.iter().copied().collect();
    let y = *q.last().expect("non-empty");
    if r.iter().any(|x| qs.contains(x) && *x != y) {
        return Some("R_w meets Q outside y".into());
    }
    let qr: BTreeSet<usize> = qs.iter().chain(r).copied().collect();
    if t[1..].iter().any(|x| qr.contains(x)) {
        return Some("T meets Q or R_w outside w".into());
    }
    if p.iter().any(|x| qs.contains(x)) {
        return Some("P meets Q".into());
    }
    let rt: BTreeSet<usize> = r.iter().chain(t).copied().collect();
    if p[..p.len() - 1].iter().any(|x| rt.contains(x)) {
        return Some("P meets R_w or T outside its end".into());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::SmoothnessParams;
    use crate::generators::{incidence_graph, PrimePower};
    use crate::graph::named;

    fn mode() -> Mode {
        Mode::General {
            params: SmoothnessParams::new(1.5, 1.0, 1.0, 1.0, 0.1).unwrap(),
            delta: 0.5,
        }
    }

    fn plane_plus_edge(q: usize) -> Graph {
        let mut g = incidence_graph(PrimePower::new(q).unwrap()).unwrap();
        g.clear_parts();
        g.add_edge(0, 1).unwrap();
        g
    }

    #[test]
    fn fano_incidence_is_certified_bipartite() {
        let g = incidence_graph(PrimePower::new(2).unwrap()).unwrap();
        match find_odd_cycle(&g, &ConstructorConfig::relaxed(7, mode())).unwrap() {
            OddCycleOutcome::Bipartite { cert } => cert.validate(&g).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pentagon_closes_through_its_odd_edge() {
        let g = named::cycle(5);
        let mut cfg = ConstructorConfig::relaxed(5, mode());
        cfg.knobs.split_fraction = Some(0.0);
        let out = find_odd_cycle(&g, &cfg).unwrap();
        let w = out.witness().expect("seed 0 closes the cycle");
        w.validate(&g, 5).unwrap();
        assert_eq!(w.lengths()[3], 0);
    }

    #[test]
    fn plane_with_chord_gives_a_heptagon() {
        let g = plane_plus_edge(4);
        let mut cfg = ConstructorConfig::relaxed(7, mode());
        cfg.seed = 1;
        cfg.knobs.split_fraction = Some(0.15);
        let out = find_odd_cycle(&g, &cfg).unwrap();
        let w = out.witness().unwrap();
        w.validate(&g, 7).unwrap();
        assert_eq!(w.through_edge, (0, 1));
        let tr = out.trace().unwrap();
        assert_eq!(tr.deviations, vec!["enforce_k0", "enforce_min_degree", "split_fraction"]);
        assert_eq!(tr.t, Some(0));
        // same seed, same cycle
        assert_eq!(find_odd_cycle(&g, &cfg).unwrap(), out);
    }

    #[test]
    fn failures_name_their_stage() {
        let g = plane_plus_edge(4);
        let mut cfg = ConstructorConfig::relaxed(13, mode());
        cfg.knobs.split_fraction = Some(0.15);
        for seed in 0..5 {
            cfg.seed = seed;
            match find_odd_cycle(&g, &cfg).unwrap() {
                OddCycleOutcome::Failure { report, trace } => {
                    assert!(!report.stage.is_empty());
                    if report.stage == "path_extension" {
                        assert!(trace.t.unwrap() > 0);
                    }
                }
                OddCycleOutcome::Cycle { witness, .. } => witness.validate(&g, 13).unwrap(),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn paper_split_fraction_fails_on_degree_five() {
        let mut cfg = ConstructorConfig::relaxed(7, mode());
        cfg.split_retries = 20;
        match find_odd_cycle(&plane_plus_edge(4), &cfg).unwrap() {
            OddCycleOutcome::Failure { report, trace } => {
                assert_eq!(report.stage, "split");
                assert_eq!(trace.split_attempts, None);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimum_degree_hypothesis_is_enforced() {
        let mut cfg = ConstructorConfig::relaxed(7, mode());
        cfg.enforce_min_degree = true;
        // 0.5 * 10^{1/2} = 1.58 > 1
        match find_odd_cycle(&named::path(10), &cfg).unwrap() {
            OddCycleOutcome::Failure { report, .. } => {
                assert_eq!(report.stage, "min_degree");
                assert_eq!(report.achieved, Some(1.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_inputs_are_errors() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(find_odd_cycle(&g, &ConstructorConfig::relaxed(7, mode())).is_err());
        assert!(find_odd_cycle(&named::cycle(5), &ConstructorConfig::relaxed(6, mode())).is_err());
        assert!(find_odd_cycle(&named::cycle(5), &ConstructorConfig::new(7, mode())).is_err());
    }

    #[test]
    fn c2l_mode_reports_its_degree_shortfall() {
        let mut cfg = ConstructorConfig::relaxed(9, Mode::C2l { ell: 2, delta: 1.0 });
        cfg.knobs.split_fraction = Some(0.15);
        cfg.split_retries = 1000;
        match find_odd_cycle(&plane_plus_edge(3), &cfg).unwrap() {
            OddCycleOutcome::Failure { report, .. } => {
                assert_eq!(report.stage, "reach");
                // floor(26^{1/2} / 8) = 0 < 2 ell
                assert_eq!((report.needed, report.achieved), (Some(4.0), Some(0.0)));
            }
            other => panic!("{other:?}"),
        }
    }
}
