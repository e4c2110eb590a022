use std::path::{Path, PathBuf};

use bipcert::cert::{CertBody, Certificate, Outcome};
use bipcert::constructor::{find_odd_cycle, peel_bipartize, ConstructorConfig, OddCycleOutcome};
use bipcert::extremal::{
    furedi_bound, furedi_holds, turan_with, zarankiewicz_with, ExtremalRecord, RecordKind, SearchMode, SearchOptions,
    SmoothnessParams,
};
use bipcert::forbidden::{cycle_spectrum, find_kst, find_theta, girth, is_family_free, FamilySpec, Pattern, MAX_CYCLE};
use bipcert::generators::{
    absolute_points, incidence_graph, polarity_graph, random_mindeg_graph, random_theta_free, MinDegreeModel,
    PrimePower,
};
use bipcert::graph::{is_connected, read_graph, two_coloring, write_graph, Graph};
use bipcert::lemmas::{
    bipartize, c2l_ball, c2l_reach, check_bipartization, derive_constants, derive_constants_c2l, expansion_cert,
    robust_reach, C2lOptions, ReachMode, ReachOptions, SplitScope,
};
use bipcert::par::{self, Exec};
use bipcert::suites::{run_suite, Suite};
use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::run::{Ctx, RunError, RunResult, Status};

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "subcommand", content = "config", rename_all = "kebab-case")]
pub enum Command {
    /// Largest K-free m-by-n bipartite graph by exhaustive search.
    Zarankiewicz(ZarankiewiczArgs),
    /// Largest family-free graph on n vertices by exhaustive search.
    Turan(TuranArgs),
    /// Search a graph for each pattern of a family.
    CheckFree(CheckFreeArgs),
    /// Spanning bipartite subgraph keeping half of every degree.
    Bipartize(GraphArgs),
    /// Two consecutive large BFS layers from a root.
    Expansion(ExpansionArgs),
    /// Greedy family of short root paths with capped vertex usage.
    Reach(ReachArgs),
    /// Tree of root paths of length exactly ell in a C_{2ell}-free graph.
    C2lReach(C2lReachArgs),
    /// Odd cycle of length k through a same-side edge, or a bipartition.
    FindOddCycle(FindOddCycleArgs),
    /// Delete low-degree vertices and report the remainder.
    Peel(PeelArgs),
    /// Constants ell0, gamma, mu, L, k0.
    Constants(ConstantsArgs),
    /// Build a graph from a named construction.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Girth and cycle lengths of a graph.
    Spectrum(SpectrumArgs),
    /// Run a lemma's invariant suite over generated instances.
    VerifyLemma(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zarankiewicz(_) => "zarankiewicz",
            Command::Turan(_) => "turan",
            Command::CheckFree(_) => "check-free",
            Command::Bipartize(_) => "bipartize",
            Command::Expansion(_) => "expansion",
            Command::Reach(_) => "reach",
            Command::C2lReach(_) => "c2l-reach",
            Command::FindOddCycle(_) => "find-odd-cycle",
            Command::Peel(_) => "peel",
            Command::Constants(_) => "constants",
            Command::Construct { .. } => "construct",
            Command::Spectrum(_) => "spectrum",
            Command::VerifyLemma(_) => "verify-lemma",
        }
    }

    /// The seed that drives the run's randomness, if any.
    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Zarankiewicz(a) => a.search.heuristic.then_some(a.search.seed),
            Command::Turan(a) => a.search.heuristic.then_some(a.search.seed),
            Command::C2lReach(a) => Some(a.seed),
            Command::FindOddCycle(a) => a.seed,
            Command::Construct { what } => match what {
                Construction::ThetaFree { seed, .. } | Construction::Mindeg { seed, .. } => Some(*seed),
                _ => None,
            },
            Command::VerifyLemma(a) => Some(a.seed),
            _ => None,
        }
    }

    pub fn config(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("command serializes");
        v.get_mut("config").map(serde_json::Value::take).unwrap_or(serde_json::Value::Null)
    }

    pub fn from_parts(subcommand: &str, config: serde_json::Value) -> RunResult<Self> {
        let v = serde_json::json!({ "subcommand": subcommand, "config": config });
        serde_json::from_value(v).map_err(|e| RunError::input(format!("manifest config: {e}")))
    }

    /// Runs the command, writing artifacts through `ctx`; returns status and a one-line summary.
    pub fn execute(&self, ctx: &mut Ctx) -> RunResult<(Status, String)> {
        match self {
            Command::Zarankiewicz(a) => zarankiewicz_cmd(a, ctx),
            Command::Turan(a) => turan_cmd(a, ctx),
            Command::CheckFree(a) => check_free_cmd(a, ctx),
            Command::Bipartize(a) => bipartize_cmd(a, ctx),
            Command::Expansion(a) => expansion_cmd(a, ctx),
            Command::Reach(a) => reach_cmd(a, ctx),
            Command::C2lReach(a) => c2l_reach_cmd(a, ctx),
            Command::FindOddCycle(a) => find_odd_cycle_cmd(a, ctx),
            Command::Peel(a) => peel_cmd(a, ctx),
            Command::Constants(a) => constants_cmd(a, ctx),
            Command::Construct { what } => construct_cmd(what, ctx),
            Command::Spectrum(a) => spectrum_cmd(a, ctx),
            Command::VerifyLemma(a) => verify_cmd(a, ctx),
        }
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SearchArgs {
    /// Best of several randomized greedy insertions; reports a lower bound.
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Seed of the heuristic search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest order searched exhaustively.
    #[arg(long)]
    pub exact_cap: Option<usize>,
    /// Tabulate every smaller order too.
    #[arg(long)]
    pub sweep: bool,
}

impl SearchArgs {
    fn options(&self, exec: Exec) -> SearchOptions {
        SearchOptions {
            mode: if self.heuristic {
                SearchMode::Heuristic {
                    seed: self.seed,
                    restarts: self.restarts,
                }
            } else {
                SearchMode::Exact
            },
            exec,
            exact_cap: self.exact_cap,
        }
    }

    fn cache_tag(&self) -> String {
        if self.heuristic {
            format!("heuristic-{}-{}", self.seed, self.restarts)
        } else {
            "exact".to_string()
        }
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ZarankiewiczArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Family JSON file.
    #[arg(long)]
    pub family: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct TuranArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub family: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct GraphArgs {
    /// Graph in the text format.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct CheckFreeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub family: PathBuf,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SmoothnessArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub rho: f64,
    /// Constant of the lower-order term.
    #[arg(long, default_value_t = 1.0)]
    pub big_c: f64,
    /// Density of the Turán lower bound.
    #[arg(long, default_value_t = 0.1)]
    pub rho0: f64,
}

impl SmoothnessArgs {
    fn params(&self) -> RunResult<SmoothnessParams> {
        Ok(SmoothnessParams::new(self.alpha, self.beta, self.rho, self.big_c, self.rho0)?)
    }
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ExpansionArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub root: usize,
    #[arg(long)]
    pub delta: f64,
    #[command(flatten)]
    pub params: SmoothnessArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReachModeArg {
    Batch,
    Strict,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ReachArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub root: usize,
    /// Longest path in the family.
    #[arg(long)]
    pub ell_max: usize,
    /// Per-vertex usage cap; defaults to ceil(n / ln n).
    #[arg(long)]
    pub cap: Option<usize>,
    /// Stop after this many endpoints; a shorter family is a failure.
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReachModeArg::Batch)]
    pub mode: ReachModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeArg {
    All,
    Expanded,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct C2lReachArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub root: usize,
    #[arg(long)]
    pub ell: usize,
    /// Minimum degree handed to the construction.
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub retries: usize,
    #[arg(long, value_enum, default_value_t = ScopeArg::Expanded)]
    pub scope: ScopeArg,
    /// Skip the C_{2ell} search on the host.
    #[arg(long)]
    pub no_verify_free: bool,
    /// Also measure the ball of radius ell around the root.
    #[arg(long)]
    pub ball: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct FindOddCycleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// ConstructorConfig JSON file.
    #[arg(long)]
    pub config: PathBuf,
    /// Replaces the seed in the config file.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct PeelArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ConstantsArgs {
    #[arg(long, required_unless_present = "ell")]
    pub alpha: Option<f64>,
    #[arg(long, required_unless_present = "ell")]
    pub beta: Option<f64>,
    #[arg(long, required_unless_present = "ell")]
    pub rho: Option<f64>,
    #[arg(long)]
    pub delta: f64,
    /// Half the forbidden even cycle length; selects the C_{2ell} formulas.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "rho"])]
    pub ell: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelArg {
    Matchings,
    RepairedGnp,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum Construction {
    /// Point-line incidence graph of PG(2, q).
    Incidence {
        #[arg(long)]
        q: usize,
    },
    /// Orthogonal polarity graph of PG(2, q).
    Polarity {
        #[arg(long)]
        q: usize,
    },
    /// Random bipartite graph with every theta_{t,ell} copy destroyed.
    ThetaFree {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random graph with minimum degree at least d.
    Mindeg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::RepairedGnp)]
        model: ModelArg,
    },
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Longest cycle length examined; defaults to min(n, 64).
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// One of 2.2, 2.3, 2.4, 2.5, 3.2, prop6.1.
    pub lemma: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn load_graph(ctx: &mut Ctx, path: &Path) -> RunResult<Graph> {
    let text = ctx.read(path)?;
    read_graph(&text).map_err(|e| RunError::input(format!("{}: {e}", path.display())))
}

fn load_family(ctx: &mut Ctx, path: &Path) -> RunResult<FamilySpec> {
    let text = ctx.read(path)?;
    FamilySpec::from_json(&text).map_err(|e| RunError::input(format!("{}: {e}", path.display())))
}

fn certificate(ctx: &Ctx, body: CertBody) -> Certificate {
    Certificate::new(body, &ctx.input_texts())
}

// ---- extremal numbers

#[derive(Serialize)]
struct ZRow {
    m: usize,
    n: usize,
    #[serde(rename = "family-hash")]
    family_hash: String,
    value: usize,
    exact: bool,
    #[serde(rename = "witness-file")]
    witness_file: String,
}

#[derive(Serialize)]
struct TRow {
    n: usize,
    #[serde(rename = "family-hash")]
    family_hash: String,
    value: usize,
    exact: bool,
    #[serde(rename = "witness-file")]
    witness_file: String,
}

#[derive(Serialize)]
struct FurediCheck {
    s: usize,
    t: usize,
    bound: f64,
    holds: bool,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    #[serde(flatten)]
    record: &'a ExtremalRecord,
    #[serde(rename = "family-hash")]
    family_hash: String,
    #[serde(rename = "witness-file")]
    witness_file: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    furedi: Vec<FurediCheck>,
}

fn cache_path(kind: &RecordKind, f: &FamilySpec, tag: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("EXTREMAL_CACHE_DIR")?;
    let name = match kind {
        RecordKind::Zarankiewicz { m, n } => format!("z-{m}x{n}-{}-{tag}.json", f.hash()),
        RecordKind::Turan { n } => format!("ex-{n}-{}-{tag}.json", f.hash()),
    };
    Some(PathBuf::from(dir).join(name))
}

/// Looks the record up in `EXTREMAL_CACHE_DIR`, computing and storing it on a miss.
/// Cached records are re-validated before use.
fn cached_record(
    kind: RecordKind,
    f: &FamilySpec,
    search: &SearchArgs,
    compute: impl FnOnce() -> bipcert::Result<ExtremalRecord>,
) -> RunResult<ExtremalRecord> {
    let path = cache_path(&kind, f, &search.cache_tag());
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(r) = serde_json::from_str::<ExtremalRecord>(&text) {
                if r.kind == kind && r.family == *f && r.exact != search.heuristic && r.validate().is_ok() {
                    return Ok(r);
                }
            }
        }
    }
    let r = compute()?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(p, serde_json::to_string(&r).expect("record serializes"));
    }
    Ok(r)
}

fn furedi_checks(f: &FamilySpec, m: usize, n: usize, value: usize) -> Vec<FurediCheck> {
    let (a, b) = (m.min(n), m.max(n));
    f.forbidden
        .iter()
        .filter_map(|p| match *p {
            Pattern::CompleteBipartite { s, t } => Some(FurediCheck {
                s,
                t,
                bound: furedi_bound(a, b, s, t).ok()?,
                holds: furedi_holds(value, a, b, s, t).ok()?,
            }),
            _ => None,
        })
        .collect()
}

fn pairs_for(a: &ZarankiewiczArgs) -> Vec<(usize, usize)> {
    if a.search.sweep {
        (1..=a.m).flat_map(|i| (1..=a.n).map(move |j| (i, j))).collect()
    } else {
        vec![(a.m, a.n)]
    }
}

fn zarankiewicz_cmd(a: &ZarankiewiczArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let f = load_family(ctx, &a.family)?;
    if a.m == 0 || a.n == 0 {
        return Err(RunError::input("m and n must be positive"));
    }
    let pairs = pairs_for(a);
    // a sweep spreads pairs over workers and searches each one sequentially
    let inner = if pairs.len() > 1 { Exec::Sequential } else { ctx.exec };
    let opts = a.search.options(inner);
    let records = par::map_slice(ctx.exec, &pairs, |&(m, n)| {
        cached_record(RecordKind::Zarankiewicz { m, n }, &f, &a.search, || zarankiewicz_with(m, n, &f, &opts))
    })
    .into_iter()
    .collect::<RunResult<Vec<_>>>()?;
    let hash = f.hash();
    let mut rows = Vec::new();
    let mut outs = Vec::new();
    for r in &records {
        let RecordKind::Zarankiewicz { m, n } = r.kind else { unreachable!() };
        let file = format!("z-{m}-{n}.graph");
        ctx.write(&file, write_graph(&r.witness).as_bytes())?;
        rows.push(ZRow {
            m,
            n,
            family_hash: hash.clone(),
            value: r.value,
            exact: r.exact,
            witness_file: file.clone(),
        });
        outs.push(RecordOut {
            record: r,
            family_hash: hash.clone(),
            witness_file: file,
            furedi: furedi_checks(&f, m, n, r.value),
        });
    }
    ctx.write_csv("z-table.csv", &rows)?;
    ctx.write_json("zarankiewicz.json", &outs)?;
    let last = records.last().expect("at least one pair");
    let broken = outs.iter().flat_map(|o| &o.furedi).any(|c| !c.holds);
    let summary = format!(
        "z({},{}) = {}{} for family {hash}",
        a.m,
        a.n,
        last.value,
        if last.exact { "" } else { " (lower bound)" }
    );
    if broken {
        return Ok((Status::Failure, format!("{summary}; a Furedi bound fails")));
    }
    Ok((Status::Success, summary))
}

fn turan_cmd(a: &TuranArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let f = load_family(ctx, &a.family)?;
    if a.n == 0 {
        return Err(RunError::input("n must be positive"));
    }
    let orders: Vec<usize> = if a.search.sweep { (1..=a.n).collect() } else { vec![a.n] };
    let inner = if orders.len() > 1 { Exec::Sequential } else { ctx.exec };
    let opts = a.search.options(inner);
    let records = par::map_slice(ctx.exec, &orders, |&n| {
        cached_record(RecordKind::Turan { n }, &f, &a.search, || turan_with(n, &f, &opts))
    })
    .into_iter()
    .collect::<RunResult<Vec<_>>>()?;
    let hash = f.hash();
    let mut rows = Vec::new();
    let mut outs = Vec::new();
    for r in &records {
        let RecordKind::Turan { n } = r.kind else { unreachable!() };
        let file = format!("ex-{n}.graph");
        ctx.write(&file, write_graph(&r.witness).as_bytes())?;
        rows.push(TRow {
            n,
            family_hash: hash.clone(),
            value: r.value,
            exact: r.exact,
            witness_file: file.clone(),
        });
        outs.push(RecordOut {
            record: r,
            family_hash: hash.clone(),
            witness_file: file,
            furedi: Vec::new(),
        });
    }
    ctx.write_csv("ex-table.csv", &rows)?;
    ctx.write_json("turan.json", &outs)?;
    let last = records.last().expect("at least one order");
    Ok((
        Status::Success,
        format!(
            "ex({}) = {}{} for family {hash}",
            a.n,
            last.value,
            if last.exact { "" } else { " (lower bound)" }
        ),
    ))
}

// ---- detection and structure

#[derive(Serialize)]
struct FreeOut<'a> {
    #[serde(rename = "family-hash")]
    family_hash: String,
    #[serde(flatten)]
    report: &'a bipcert::forbidden::FreenessReport,
}

fn check_free_cmd(a: &CheckFreeArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let f = load_family(ctx, &a.family)?;
    let report = is_family_free(&g, &f)?;
    if let Some(w) = &report.witness {
        w.validate(&g).map_err(RunError::failure)?;
    }
    ctx.write_json(
        "check-free.json",
        &FreeOut {
            family_hash: f.hash(),
            report: &report,
        },
    )?;
    let summary = match &report.witness {
        None => "free".to_string(),
        Some(w) => format!("contains {} on {:?}", w.pattern, w.vertices),
    };
    Ok((Status::Success, summary))
}

fn bipartize_cmd(a: &GraphArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let b = bipartize(&g)?;
    check_bipartization(&g, &b).map_err(RunError::failure)?;
    ctx.write("bipartite.graph", write_graph(&b.graph).as_bytes())?;
    ctx.write_json("bipartize.json", &b)?;
    Ok((
        Status::Success,
        format!("kept {} of {} edges", b.graph.edge_count(), g.edge_count()),
    ))
}

fn expansion_cmd(a: &ExpansionArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let params = a.params.params()?;
    let (body, status, summary) = match expansion_cert(&g, a.root, a.delta, &params)? {
        Outcome::Success(c) => {
            c.validate(&g).map_err(RunError::failure)?;
            let s = format!("layers {} and {} have sizes {:?}, needed {}", c.j0, c.j0 + 1, c.sizes, c.needed);
            (CertBody::Expansion(c), Status::Success, s)
        }
        Outcome::Failure(r) => {
            let s = format!("{}: {}", r.stage, r.reason);
            (CertBody::Failure(r), Status::Failure, s)
        }
    };
    let cert = certificate(ctx, body);
    ctx.write_json("certificate.json", &cert)?;
    Ok((status, summary))
}

fn reach_cmd(a: &ReachArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let opts = ReachOptions {
        ell_max: a.ell_max,
        cap: a.cap,
        target: a.target,
        mode: match a.mode {
            ReachModeArg::Batch => ReachMode::Batch,
            ReachModeArg::Strict => ReachMode::Strict,
        },
    };
    let family = robust_reach(&g, a.root, &opts)?;
    family.validate(&g).map_err(RunError::failure)?;
    let size = family.len();
    let max_usage = family.max_usage();
    let cert = certificate(ctx, CertBody::Reachability(family));
    ctx.write_json("certificate.json", &cert)?;
    let summary = format!("{size} endpoints, max usage {max_usage}");
    match a.target {
        Some(t) if size < t => Ok((Status::Failure, format!("{summary}; target {t} not reached"))),
        _ => Ok((Status::Success, summary)),
    }
}

fn c2l_reach_cmd(a: &C2lReachArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let opts = C2lOptions {
        retries: a.retries,
        scope: match a.scope {
            ScopeArg::All => SplitScope::All,
            ScopeArg::Expanded => SplitScope::Expanded,
        },
        verify_free: !a.no_verify_free,
        ..C2lOptions::default()
    };
    let r = c2l_reach(&g, a.root, a.ell, a.d, a.seed, &opts)?;
    r.validate(&g).map_err(RunError::failure)?;
    let mut summary = format!(
        "{} endpoints at depth {}, size bound {:.3} {}",
        r.family.len(),
        a.ell,
        r.size_bound,
        if r.size_bound_met { "met" } else { "missed" }
    );
    let mut ok = r.size_bound_met;
    if a.ball {
        let ball = c2l_ball(&g, a.root, a.ell, a.d)?;
        summary.push_str(&format!("; ball {} of {} needed", ball.size, ball.needed));
        ok &= ball.size >= ball.needed;
        ctx.write_json("ball.json", &ball)?;
    }
    ctx.write_json("c2l-reach.json", &r)?;
    let cert = certificate(ctx, CertBody::Reachability(r.family));
    ctx.write_json("certificate.json", &cert)?;
    Ok((if ok { Status::Success } else { Status::Failure }, summary))
}

fn find_odd_cycle_cmd(a: &FindOddCycleArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let text = ctx.read(&a.config)?;
    let mut cfg: ConstructorConfig =
        serde_json::from_str(&text).map_err(|e| RunError::input(format!("{}: {e}", a.config.display())))?;
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let outcome = find_odd_cycle(&g, &cfg)?;
    let (body, status, summary) = match &outcome {
        OddCycleOutcome::Cycle { witness, .. } => {
            witness.validate(&g, cfg.k).map_err(RunError::failure)?;
            let s = format!("C_{} through {:?}, segments {:?}", cfg.k, witness.through_edge, witness.lengths());
            (CertBody::Cycle(witness.clone()), Status::Success, s)
        }
        OddCycleOutcome::Bipartite { cert } => {
            cert.validate(&g).map_err(RunError::failure)?;
            (CertBody::Bipartite(cert.clone()), Status::Bipartite, "bipartite".to_string())
        }
        OddCycleOutcome::Failure { report, .. } | OddCycleOutcome::ParityAnomaly { report, .. } => {
            let s = format!("{}: {}", report.stage, report.reason);
            (CertBody::Failure(report.clone()), Status::Failure, s)
        }
    };
    ctx.write_json("outcome.json", &outcome)?;
    let cert = certificate(ctx, body);
    ctx.write_json("certificate.json", &cert)?;
    Ok((status, summary))
}

fn peel_cmd(a: &PeelArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let r = peel_bipartize(&g, a.delta, a.alpha)?;
    ctx.write("peeled.graph", write_graph(&r.h).as_bytes())?;
    ctx.write_json("peel.json", &r)?;
    let summary = format!(
        "removed {} vertices and {} edges; H {} bipartite",
        r.removed.len(),
        r.removed_edges,
        if r.h_bipartite { "is" } else { "is not" }
    );
    if !r.inequality_holds {
        return Ok((Status::Failure, format!("{summary}; edge inequality fails")));
    }
    Ok((Status::Success, summary))
}

fn constants_cmd(a: &ConstantsArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let c = match (a.ell, a.alpha, a.beta, a.rho) {
        (Some(ell), ..) => derive_constants_c2l(ell, a.delta)?,
        (None, Some(alpha), Some(beta), Some(rho)) => derive_constants(alpha, beta, rho, a.delta)?,
        _ => return Err(RunError::input("give either --ell or all of --alpha, --beta, --rho")),
    };
    ctx.write_json("constants.json", &c)?;
    Ok((
        Status::Success,
        serde_json::to_string(&c).expect("constants serialize"),
    ))
}

// ---- constructions

#[derive(Serialize)]
struct ProjectiveReport {
    construction: &'static str,
    q: usize,
    n: usize,
    edges: usize,
    min_degree: usize,
    max_degree: usize,
    girth: bipcert::Extent,
    c4_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    absolute_points: Option<Vec<usize>>,
}

fn projective_report(construction: &'static str, q: usize, g: &Graph, absolute: Option<Vec<usize>>) -> RunResult<ProjectiveReport> {
    Ok(ProjectiveReport {
        construction,
        q,
        n: g.n(),
        edges: g.edge_count(),
        min_degree: g.min_degree().unwrap_or(0),
        max_degree: g.max_degree(),
        girth: girth(g),
        c4_free: find_kst(g, 2, 2)?.is_none(),
        absolute_points: absolute,
    })
}

#[derive(Serialize)]
struct ThetaOut<'a> {
    construction: &'static str,
    #[serde(flatten)]
    report: &'a bipcert::generators::ThetaFreeReport,
    theta_free: bool,
}

#[derive(Serialize)]
struct MindegReport {
    construction: &'static str,
    n: usize,
    d: usize,
    seed: u64,
    model: ModelArg,
    edges: usize,
    min_degree: usize,
    connected: bool,
}

fn construct_cmd(what: &Construction, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let (g, name) = match *what {
        Construction::Incidence { q } => {
            let g = incidence_graph(PrimePower::new(q)?)?;
            ctx.write_json("construct.json", &projective_report("incidence", q, &g, None)?)?;
            (g, "incidence")
        }
        Construction::Polarity { q } => {
            let pq = PrimePower::new(q)?;
            let g = polarity_graph(pq)?;
            let abs = absolute_points(pq)?;
            ctx.write_json("construct.json", &projective_report("polarity", q, &g, Some(abs))?)?;
            (g, "polarity")
        }
        Construction::ThetaFree { m, n, t, ell, seed } => {
            let (g, report) = random_theta_free(m, n, t, ell, seed)?;
            let free = find_theta(&g, t, ell)?.is_none();
            ctx.write_json(
                "construct.json",
                &ThetaOut {
                    construction: "theta-free",
                    report: &report,
                    theta_free: free,
                },
            )?;
            if !free {
                return Err(RunError::failure("output still contains a theta copy"));
            }
            (g, "theta-free")
        }
        Construction::Mindeg { n, d, seed, model } => {
            let g = random_mindeg_graph(
                n,
                d,
                seed,
                match model {
                    ModelArg::Matchings => MinDegreeModel::Matchings,
                    ModelArg::RepairedGnp => MinDegreeModel::RepairedGnp,
                },
            )?;
            ctx.write_json(
                "construct.json",
                &MindegReport {
                    construction: "mindeg",
                    n,
                    d,
                    seed,
                    model,
                    edges: g.edge_count(),
                    min_degree: g.min_degree().unwrap_or(0),
                    connected: is_connected(&g),
                },
            )?;
            (g, "mindeg")
        }
    };
    ctx.write(&format!("{name}.graph"), write_graph(&g).as_bytes())?;
    Ok((
        Status::Success,
        format!("{name}: {} vertices, {} edges", g.n(), g.edge_count()),
    ))
}

// ---- spectrum

#[derive(Serialize)]
struct EvenRun {
    from: usize,
    to: usize,
    count: usize,
}

#[derive(Serialize)]
struct SpectrumReport {
    n: usize,
    edges: usize,
    average_degree: f64,
    bipartite: bool,
    girth: bipcert::Extent,
    max_len: usize,
    lengths: Vec<usize>,
    /// Longest run of consecutive even lengths.
    longest_even_run: Option<EvenRun>,
}

#[derive(Serialize)]
struct SpectrumRow {
    length: usize,
    present: bool,
}

fn longest_even_run(lengths: &[usize]) -> Option<EvenRun> {
    let evens: Vec<usize> = lengths.iter().copied().filter(|l| l % 2 == 0).collect();
    let mut best: Option<EvenRun> = None;
    let mut i = 0;
    while i < evens.len() {
        let mut j = i;
        while j + 1 < evens.len() && evens[j + 1] == evens[j] + 2 {
            j += 1;
        }
        if best.as_ref().map_or(true, |b| j - i + 1 > b.count) {
            best = Some(EvenRun {
                from: evens[i],
                to: evens[j],
                count: j - i + 1,
            });
        }
        i = j + 1;
    }
    best
}

fn spectrum_cmd(a: &SpectrumArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let g = load_graph(ctx, &a.graph)?;
    let max_len = a.max_len.unwrap_or_else(|| g.n().clamp(3, MAX_CYCLE));
    let lengths: Vec<usize> = cycle_spectrum(&g, max_len)?.into_iter().collect();
    let rows: Vec<SpectrumRow> = (3..=max_len)
        .map(|length| SpectrumRow {
            length,
            present: lengths.binary_search(&length).is_ok(),
        })
        .collect();
    let report = SpectrumReport {
        n: g.n(),
        edges: g.edge_count(),
        average_degree: if g.n() == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / g.n() as f64 },
        bipartite: two_coloring(&g).is_some(),
        girth: girth(&g),
        max_len,
        longest_even_run: longest_even_run(&lengths),
        lengths,
    };
    ctx.write_csv("spectrum.csv", &rows)?;
    ctx.write_json("spectrum.json", &report)?;
    Ok((
        Status::Success,
        format!("girth {}, {} cycle lengths up to {max_len}", report.girth, report.lengths.len()),
    ))
}

// ---- lemma suites

#[derive(Serialize)]
struct TrialRow<'a> {
    trial: usize,
    seed: u64,
    passed: bool,
    instance: &'a str,
    detail: &'a str,
}

fn verify_cmd(a: &VerifyArgs, ctx: &mut Ctx) -> RunResult<(Status, String)> {
    let suite: Suite = a.lemma.parse()?;
    if a.trials == 0 {
        return Err(RunError::input("trials must be positive"));
    }
    let report = run_suite(suite, a.trials, a.seed, ctx.exec);
    let rows: Vec<TrialRow> = report
        .results
        .iter()
        .map(|r| TrialRow {
            trial: r.trial,
            seed: r.seed,
            passed: r.passed,
            instance: &r.instance,
            detail: &r.detail,
        })
        .collect();
    ctx.write_csv("trials.csv", &rows)?;
    ctx.write_json("verify.json", &report)?;
    let status = if report.all_passed() { Status::Success } else { Status::Failure };
    Ok((status, report.summary()))
}
