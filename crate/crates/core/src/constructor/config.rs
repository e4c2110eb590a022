use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::SmoothnessParams;
use crate::lemmas::{derive_constants, derive_constants_c2l, mu, C2lOptions, DerivedConstants};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Host family given by its density profile; minimum degree `delta n^{alpha-1}`.
    General { params: SmoothnessParams, delta: f64 },
    /// `C_{2 ell}`-free host; minimum degree `delta n^{1/ell}`.
    C2l { ell: usize, delta: f64 },
}

impl Mode {
    pub fn delta(&self) -> f64 {
        match *self {
            Mode::General { delta, .. } | Mode::C2l { delta, .. } => delta,
        }
    }

    /// Exponent `e` of the degree scale `n^e`.
    pub fn degree_exponent(&self) -> f64 {
        match *self {
            Mode::General { params, .. } => params.alpha - 1.0,
            Mode::C2l { ell, .. } => 1.0 / ell as f64,
        }
    }
}

/// Replacements for the thresholds of the construction. `None` keeps the value the
/// argument prescribes for the graph at hand.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Knobs {
    /// Share of each degree required on both sides of the split.
    pub split_fraction: Option<f64>,
    /// Longest path in the reach family (general mode).
    pub reach_len: Option<usize>,
    /// Per-vertex path cap of the reach family (general mode).
    pub reach_cap: Option<usize>,
    /// Good paths required after colouring.
    pub good_paths: Option<usize>,
    /// Minimum degree of the dense core between endpoints and `B`.
    pub core_degree: Option<usize>,
    /// Size both expansion layers must reach (general mode).
    pub layer_size: Option<usize>,
    /// Minimum degree of the core used to extend `T`.
    pub star_degree: Option<usize>,
    /// Degree handed to the first `C_{2 ell}` reach (c2l mode).
    pub reach_degree: Option<usize>,
    /// Degree handed to the second `C_{2 ell}` reach (c2l mode).
    pub inner_degree: Option<usize>,
    /// Longest admissible `Q`.
    pub max_q: Option<u64>,
    /// Vertex expansions allowed while extending `T`.
    pub path_budget: Option<usize>,
}

fn default_retries() -> usize {
    100
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructorConfig {
    pub k: usize,
    pub mode: Mode,
    /// Overrides the constants derived from `mode`.
    #[serde(default)]
    pub constants: Option<DerivedConstants>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_retries")]
    pub split_retries: usize,
    #[serde(default = "default_retries")]
    pub coloring_retries: usize,
    #[serde(default)]
    pub c2l: C2lOptions,
    /// Require `k >= k0`.
    #[serde(default = "yes")]
    pub enforce_k0: bool,
    /// Require the minimum-degree hypothesis on the input.
    #[serde(default = "yes")]
    pub enforce_min_degree: bool,
    #[serde(default)]
    pub knobs: Knobs,
    /// Try every same-side edge instead of only the first.
    #[serde(default)]
    pub all_edges: bool,
}

impl ConstructorConfig {
    pub fn new(k: usize, mode: Mode) -> Self {
        Self {
            k,
            mode,
            constants: None,
            seed: 0,
            split_retries: default_retries(),
            coloring_retries: default_retries(),
            c2l: C2lOptions::default(),
            enforce_k0: true,
            enforce_min_degree: true,
            knobs: Knobs::default(),
            all_edges: false,
        }
    }

    /// No `k0` or minimum-degree requirement; thresholds still default to their formulas.
    pub fn relaxed(k: usize, mode: Mode) -> Self {
        Self {
            enforce_k0: false,
            enforce_min_degree: false,
            ..Self::new(k, mode)
        }
    }

    pub fn constants(&self) -> Result<DerivedConstants> {
        if let Some(c) = self.constants {
            c.validate().map_err(Error::Input)?;
            return Ok(c);
        }
        match self.mode {
            Mode::General { params, delta } => derive_constants(params.alpha, params.beta, params.rho, delta),
            Mode::C2l { ell, delta } => derive_constants_c2l(ell, delta),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 || self.k % 2 == 0 {
            return Err(Error::input(format!("k = {} must be odd and at least 3", self.k)));
        }
        match self.mode {
            Mode::General { params, .. } => params.validate()?,
            Mode::C2l { ell, .. } if ell < 2 => return Err(Error::input("ell must be at least 2")),
            Mode::C2l { .. } => {}
        }
        let delta = self.mode.delta();
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::input(format!("delta must be positive, got {delta}")));
        }
        if let Some(f) = self.knobs.split_fraction {
            if !(0.0..=0.5).contains(&f) {
                return Err(Error::input(format!("split_fraction {f} outside [0, 1/2]")));
            }
        }
        let c = self.constants()?;
        if self.enforce_k0 && (self.k as u64) < c.k0 {
            return Err(Error::input(format!("k = {} is below k0 = {}", self.k, c.k0)));
        }
        Ok(())
    }

    /// Names of the settings that depart from the argument as stated.
    pub fn deviations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.enforce_k0 {
            out.push("enforce_k0".to_string());
        }
        if !self.enforce_min_degree {
            out.push("enforce_min_degree".to_string());
        }
        if self.constants.is_some() {
            out.push("constants".to_string());
        }
        let k = &self.knobs;
        let set = [
            ("split_fraction", k.split_fraction.is_some()),
            ("reach_len", k.reach_len.is_some()),
            ("reach_cap", k.reach_cap.is_some()),
            ("good_paths", k.good_paths.is_some()),
            ("core_degree", k.core_degree.is_some()),
            ("layer_size", k.layer_size.is_some()),
            ("star_degree", k.star_degree.is_some()),
            ("reach_degree", k.reach_degree.is_some()),
            ("inner_degree", k.inner_degree.is_some()),
            ("max_q", k.max_q.is_some()),
            ("path_budget", k.path_budget.is_some()),
        ];
        out.extend(set.iter().filter(|(_, on)| *on).map(|(name, _)| name.to_string()));
        out
    }
}

/// Thresholds in force for one run, after applying knobs to the formula values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub n: usize,
    pub min_degree: f64,
    pub split_fraction: f64,
    pub reach_len: usize,
    pub reach_cap: usize,
    /// `None`: `ceil(|S| / 2^{p+1})`, fixed once `S` is known.
    pub good_paths: Option<usize>,
    pub core_degree: usize,
    pub layer_size: usize,
    pub star_degree: usize,
    pub reach_degree: usize,
    pub inner_degree: usize,
    pub max_q: u64,
    pub path_budget: usize,
    pub constants: DerivedConstants,
}

fn ceil_at_least_one(x: f64) -> usize {
    if x.is_finite() && x > 1.0 {
        x.ceil() as usize
    } else {
        1
    }
}

fn floor_usize(x: f64) -> usize {
    if x.is_finite() && x > 0.0 {
        x.floor() as usize
    } else {
        0
    }
}

impl Thresholds {
    pub fn compute(cfg: &ConstructorConfig, n: usize) -> Result<Self> {
        let c = cfg.constants()?;
        let nf = n as f64;
        let delta = cfg.mode.delta();
        let scale = nf.powf(cfg.mode.degree_exponent());
        let kn = &cfg.knobs;
        let (core, layer, star, reach_d, inner_d, max_q) = match cfg.mode {
            Mode::General { params, .. } => {
                let (a, b, rho) = (params.alpha, params.beta, params.rho);
                let l0 = c.ell0 as f64;
                let g = mu(a, b, rho, delta / 16.0)? * delta / (2f64.powf(l0 + 4.0) * l0);
                let mu_g = mu(a, b, rho, g)?;
                (
                    ceil_at_least_one(g * scale),
                    ceil_at_least_one(mu_g * nf),
                    ceil_at_least_one(mu_g * delta * scale / 16.0),
                    0,
                    0,
                    c.big_l,
                )
            }
            Mode::C2l { ell, .. } => {
                let l = ell as f64;
                let g = delta.powf(l + 1.0) / (2f64.powf(6.0 * l + 4.0) * l.powf(2.0 * l));
                let star = delta * g.powf(l) / (2f64.powf(4.0 * l + 5.0) * l.powf(2.0 * l));
                (
                    ceil_at_least_one(g * scale),
                    1,
                    ceil_at_least_one(star * scale),
                    floor_usize(delta / 8.0 * scale),
                    floor_usize(g / 2.0 * scale),
                    c.big_l + 1,
                )
            }
        };
        Ok(Thresholds {
            n,
            min_degree: delta * scale,
            split_fraction: kn.split_fraction.unwrap_or(0.25),
            reach_len: kn.reach_len.unwrap_or(c.ell0),
            reach_cap: kn.reach_cap.unwrap_or_else(|| crate::lemmas::default_cap(n)),
            good_paths: kn.good_paths,
            core_degree: kn.core_degree.unwrap_or(core).max(1),
            layer_size: kn.layer_size.unwrap_or(layer).max(1),
            star_degree: kn.star_degree.unwrap_or(star).max(1),
            reach_degree: kn.reach_degree.unwrap_or(reach_d),
            inner_degree: kn.inner_degree.unwrap_or(inner_d),
            max_q: kn.max_q.unwrap_or(max_q),
            path_budget: kn.path_budget.unwrap_or(10 * cfg.k),
            constants: c,
        })
    }
}
