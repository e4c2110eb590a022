//! Invariant suites run over seeded generated instances, one per structural lemma plus
//! the theta-free construction. Trials are independent and run through [`par`].

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::SmoothnessParams;
use crate::forbidden::find_theta;
use crate::generators::{
    connect_components, incidence_graph, random_bipartite, random_connected_mindeg, random_gnp, random_theta_free,
    theta_free_probability, PrimePower,
};
use crate::graph::{bfs_layers, is_connected, named, Graph};
use crate::lemmas::{
    bipartize, c2l_ball, c2l_reach, check_bipartization, confirm_maximal, diameter_check, ell0, expansion_cert, mu,
    robust_reach, C2lOptions, ReachMode, ReachOptions,
};
use crate::par::{self, Exec};
use crate::{cert::Outcome, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "2.2")]
    Expansion,
    #[serde(rename = "2.3")]
    Reach,
    #[serde(rename = "2.4")]
    Bipartize,
    #[serde(rename = "2.5")]
    Diameter,
    #[serde(rename = "3.2")]
    EvenCycleReach,
    #[serde(rename = "prop6.1")]
    ThetaFree,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Expansion,
        Suite::Reach,
        Suite::Bipartize,
        Suite::Diameter,
        Suite::EvenCycleReach,
        Suite::ThetaFree,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Expansion => "2.2",
            Suite::Reach => "2.3",
            Suite::Bipartize => "2.4",
            Suite::Diameter => "2.5",
            Suite::EvenCycleReach => "3.2",
            Suite::ThetaFree => "prop6.1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::input(format!("unknown suite {s:?}; expected one of 2.2, 2.3, 2.4, 2.5, 3.2, prop6.1")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub results: Vec<TrialResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }

    pub fn summary(&self) -> String {
        format!("suite {}: {}/{} passed", self.suite, self.passed, self.trials)
    }
}

/// Seed of trial `i`, independent of the trial count.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    rng::stream(seed, trial as u64).gen()
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64, exec: Exec) -> SuiteReport {
    let results = par::map_collect(exec, 0..trials, |i| {
        let s = trial_seed(seed, i);
        let (instance, outcome) = match suite {
            Suite::Expansion => expansion_trial(i, s),
            Suite::Reach => reach_trial(s),
            Suite::Bipartize => bipartize_trial(s),
            Suite::Diameter => diameter_trial(s),
            Suite::EvenCycleReach => c2l_trial(i, s),
            Suite::ThetaFree => theta_trial(i, s),
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        TrialResult {
            trial: i,
            seed: s,
            instance,
            passed,
            detail,
        }
    });
    SuiteReport {
        suite,
        trials,
        seed,
        passed: results.iter().filter(|r| r.passed).count(),
        results,
    }
}

type Check = std::result::Result<String, String>;

fn err(e: Error) -> String {
    e.to_string()
}

/// Connected `G(n, p)` with `n` in `lo..=hi` and `p` in `[0.05, 0.5)`.
fn random_connected(seed: u64, lo: usize, hi: usize) -> (Graph, String) {
    let mut r = rng::seeded(seed);
    let n = r.gen_range(lo..=hi);
    let p = r.gen_range(0.05..0.5);
    let mut g = random_gnp(n, p, &mut r).expect("valid probability");
    connect_components(&mut g, &mut r).expect("in range");
    (g, format!("gnp n={n} p={p:.3}"))
}

fn bipartize_trial(seed: u64) -> (String, Check) {
    let (g, name) = random_connected(seed, 2, 60);
    let out = bipartize(&g).map_err(err).and_then(|b| {
        check_bipartization(&g, &b)?;
        Ok(format!("cut {} of {} edges after {} flips", b.graph.edge_count(), g.edge_count(), b.flips))
    });
    (name, out)
}

fn diameter_trial(seed: u64) -> (String, Check) {
    let mut r = rng::seeded(seed);
    let n = r.gen_range(10..=60);
    let d = r.gen_range(1..=6);
    let name = format!("mindeg n={n} D={d}");
    let out = random_connected_mindeg(n, d, r.gen()).map_err(err).and_then(|g| {
        let rep = diameter_check(&g, Some(d)).map_err(err)?;
        if rep.holds {
            Ok(format!("diameter {} <= {:.2}", rep.diameter, rep.bound))
        } else {
            Err(format!("diameter {} exceeds {:.2}", rep.diameter, rep.bound))
        }
    });
    (name, out)
}

fn reach_trial(seed: u64) -> (String, Check) {
    let (g, name) = random_connected(seed, 5, 60);
    let mut r = rng::stream(seed, 1);
    let u = r.gen_range(0..g.n());
    let ell_max = r.gen_range(1..=4);
    let cap = r.gen_range(1..=5);
    let mode = if r.gen_bool(0.5) { ReachMode::Batch } else { ReachMode::Strict };
    let target = r.gen_bool(0.25).then(|| r.gen_range(1..=g.n()));
    let opts = ReachOptions {
        ell_max,
        cap: Some(cap),
        target,
        mode,
    };
    let name = format!("{name} u={u} ell_max={ell_max} cap={cap} {mode:?} target={target:?}");
    let out = robust_reach(&g, u, &opts).map_err(err).and_then(|f| {
        f.validate(&g)?;
        if let Some(p) = f.paths.iter().find(|p| p.len() > ell_max + 1) {
            return Err(format!("path to {} is longer than {ell_max}", p.last().unwrap()));
        }
        if f.max_usage() > cap {
            return Err(format!("usage {} above cap {cap}", f.max_usage()));
        }
        if f.maximal && !confirm_maximal(&g, &f, ell_max, cap) {
            return Err("flagged maximal but an independent search extends it".into());
        }
        if !f.maximal && target != Some(f.len()) {
            return Err("stopped without maximality or reaching the target".into());
        }
        Ok(format!("{} endpoints, max usage {}", f.len(), f.max_usage()))
    });
    (name, out)
}

/// Complete bipartite joins between consecutive layers of width `w`.
pub fn layered_graph(layers: usize, w: usize) -> Graph {
    let mut g = Graph::new(layers * w).expect("small");
    for l in 0..layers.saturating_sub(1) {
        for a in 0..w {
            for b in 0..w {
                g.add_edge(l * w + a, (l + 1) * w + b).expect("in range");
            }
        }
    }
    g
}

fn c2l_trial(trial: usize, seed: u64) -> (String, Check) {
    let mut r = rng::seeded(seed);
    if trial % 2 == 0 {
        // projective planes have no C_4
        let q = [3, 4, 5, 7][r.gen_range(0..4)];
        let g = incidence_graph(PrimePower::new(q).expect("prime power")).expect("small");
        let u = r.gen_range(0..g.n());
        let d = r.gen_range(4..=q + 1);
        let name = format!("incidence q={q} u={u} ell=2 d={d}");
        let out = c2l_reach(&g, u, 2, d, r.gen(), &C2lOptions::default())
            .map_err(err)
            .and_then(|res| {
                res.validate(&g)?;
                let ball = c2l_ball(&g, u, 2, d).map_err(err)?;
                Ok(format!("{} endpoints; ball {} >= {}", res.family.len(), ball.size, ball.needed))
            });
        (name, out)
    } else {
        let ell = r.gen_range(2..=3);
        let w = r.gen_range(2 * ell..=12);
        let g = layered_graph(ell + 1, w);
        let d = r.gen_range(2 * ell..=w);
        let name = format!("layered width={w} ell={ell} d={d}");
        let opts = C2lOptions {
            verify_free: false,
            ..C2lOptions::default()
        };
        let out = c2l_reach(&g, 0, ell, d, r.gen(), &opts).map_err(err).and_then(|res| {
            res.validate(&g)?;
            Ok(format!("{} endpoints, {} children each", res.family.len(), res.children))
        });
        (name, out)
    }
}

fn expansion_trial(trial: usize, seed: u64) -> (String, Check) {
    let mut r = rng::seeded(seed);
    let (g, name) = match trial % 3 {
        0 => {
            let q = [2, 3, 4, 5, 7][r.gen_range(0..5)];
            (incidence_graph(PrimePower::new(q).expect("prime power")).expect("small"), format!("incidence q={q}"))
        }
        1 => {
            let (a, b) = (r.gen_range(2..=12), r.gen_range(2..=12));
            (named::complete_bipartite(a, b), format!("K_{{{a},{b}}}"))
        }
        _ => {
            let (a, b) = (r.gen_range(6..=20), r.gen_range(6..=20));
            let g = loop {
                let g = random_bipartite(a, b, 0.5, &mut r).expect("valid");
                if is_connected(&g) {
                    break g;
                }
            };
            (g, format!("bipartite G({a},{b},0.5)"))
        }
    };
    let u = r.gen_range(0..g.n());
    let name = format!("{name} u={u}");
    let params = SmoothnessParams::new(1.5, 1.0, 1.0, 1.0, 0.1).expect("valid");
    let min = g.min_degree().unwrap_or(0);
    if min == 0 || !is_connected(&g) {
        return (name, Ok("skipped: isolated vertex".into()));
    }
    // just under the largest delta the minimum degree supports
    let delta = min as f64 / (g.n() as f64).sqrt() * (1.0 - 1e-12);
    let out = expansion_cert(&g, u, delta, &params).map_err(err).and_then(|o| match o {
        Outcome::Success(c) => {
            c.validate(&g)?;
            Ok(format!("j0={} sizes {:?} >= {}", c.j0, c.sizes, c.needed))
        }
        Outcome::Failure(rep) => {
            // confirm that no admissible pair of layers exists
            let l0 = ell0(1.5, 1.0).map_err(err)?;
            let needed = ((mu(1.5, 1.0, 1.0, delta).map_err(err)? * g.n() as f64).ceil() as usize).max(1);
            let layers = bfs_layers(&g, u).map_err(err)?;
            let size = |i: usize| layers.layers.get(i).map_or(0, Vec::len);
            if (0..=l0).any(|j| size(j) >= needed && size(j + 1) >= needed) {
                Err(format!("reported failure but layers suffice: {}", rep.reason))
            } else {
                Ok(format!("confirmed shortfall: {}", rep.reason))
            }
        }
    });
    (name, out)
}

fn theta_trial(trial: usize, seed: u64) -> (String, Check) {
    let t = 2 + trial % 2;
    let name = format!("theta-free m=n=12 t={t} ell=2");
    let out = random_theta_free(12, 12, t, 2, seed).map_err(err).and_then(|(g, rep)| {
        if let Some(w) = find_theta(&g, t, 2).map_err(err)? {
            return Err(format!("theta copy remains on {:?}", w.vertices));
        }
        let (p, _, ratio) = theta_free_probability(12, 12, t, 2);
        if p != rep.p || !(ratio <= 1.0 + 1e-9) {
            return Err(format!("probability {} / ratio {ratio} inconsistent", rep.p));
        }
        if rep.edges_after == 0 {
            return Err("no edges left".into());
        }
        Ok(format!("{} -> {} edges", rep.edges_before, rep.edges_after))
    });
    (name, out)
}
