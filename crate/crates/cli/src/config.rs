//! Experiment configuration: one JSON record, one section per subcommand.
//! Flags given on the command line replace the file values.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::ValueEnum;
use pinchflow::flow_sim::FlowConfig;
use pinchflow::{DeltaConvention, SphereContext, ThresholdProfile};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub context: ContextParams,
    pub output: Option<PathBuf>,
    /// Seeds the random part of axisymmetric initial profiles.
    pub seed: u64,
    pub verify: VerifyParams,
    pub extrema: ExtremaParams,
    pub thresholds: TableParams,
    pub classify: ClassifyParams,
    pub flow: FlowParams,
    pub consistency: ConsistencyParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContextParams {
    pub n: Option<u32>,
    pub kbar: f64,
}

impl Default for ContextParams {
    fn default() -> Self {
        Self { n: None, kbar: 1.0 }
    }
}

impl ContextParams {
    pub fn context(&self) -> anyhow::Result<SphereContext> {
        let Some(n) = self.n else { bail!("missing dimension: pass --n or set context.n") };
        Ok(SphereContext::new(n, self.kbar)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyParams {
    pub lemma: Option<String>,
    /// Dimensions to verify; empty means `context.n`.
    pub n: Vec<u32>,
    pub convention: DeltaConvention,
    pub max_cells: usize,
    pub min_width: f64,
    /// Keep `wall_time_ms` in the report, which makes output run dependent.
    pub timing: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        let b = pinchflow::rigor::Budget::default();
        Self {
            lemma: None,
            n: Vec::new(),
            convention: DeltaConvention::Piecewise,
            max_cells: b.max_cells,
            min_width: b.min_width,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumMode {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtremaParams {
    pub expr: Option<String>,
    /// Defaults to the direction that tests the registered inequality.
    pub mode: Option<ExtremumMode>,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Default for ExtremaParams {
    fn default() -> Self {
        Self { expr: None, mode: None, lo: 0.0, hi: 200.0, tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableParams {
    /// Empty means every profile defined at `n`.
    pub profiles: Vec<ThresholdProfile>,
    pub xmax: f64,
    pub steps: usize,
}

impl Default for TableParams {
    fn default() -> Self {
        Self { profiles: Vec::new(), xmax: 100.0, steps: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyParams {
    /// `sphere:<rho>`, `torus:<psi>` or `equator`.
    pub model: Option<String>,
    pub profile: ThresholdProfile,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        Self { model: None, profile: ThresholdProfile::SqrtA }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FlowKind {
    Sphere,
    Clifford,
    Axisym,
}

/// Axisymmetric data are `u0(v) = base + amplitude cos(mode v)` plus, when
/// `noise > 0`, `sum_k c_k cos(k v) / k^2` for k = 1..8 with `c_k` uniform in
/// `[-noise, noise]` drawn from `seed`. Values are in units with `kbar = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowParams {
    pub kind: Option<FlowKind>,
    pub rho0: Option<f64>,
    pub psi0: Option<f64>,
    pub base: f64,
    pub amplitude: f64,
    pub mode: u32,
    pub noise: f64,
    pub config: FlowConfig,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            kind: None,
            rho0: None,
            psi0: None,
            base: 1.0,
            amplitude: 0.05,
            mode: 2,
            noise: 0.0,
            config: FlowConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConsistencyKind {
    Sphere,
    Clifford,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Which {
    #[value(name = "H2")]
    H2,
    #[value(name = "A2")]
    A2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConsistencyParams {
    pub kind: Option<ConsistencyKind>,
    pub which: Option<Which>,
    pub r1_factor: f64,
    /// Starting radius for spheres; defaults to `pi / (3 sqrt(kbar))`.
    pub rho0: Option<f64>,
    /// Starting angle for tori; defaults to 0.9.
    pub psi0: Option<f64>,
    pub dt: f64,
    pub steps: usize,
}

impl Default for ConsistencyParams {
    fn default() -> Self {
        Self { kind: None, which: None, r1_factor: 1.0, rho0: None, psi0: None, dt: 1e-5, steps: 1000 }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("malformed config {}", path.display()))
    }
}

/// Parses `7`, `7,9,12` or `7-50` (inclusive), or any comma list of these.
pub fn parse_dims(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let bad = || format!("bad dimension list `{s}`");
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}
