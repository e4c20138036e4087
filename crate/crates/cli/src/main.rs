//! `pinchflow`: certified threshold inequalities, model geometry and flow runs.
//!
//! Exit status is 0 on success, 2 when a verification goal fails and 1 on
//! any usage or runtime error.

mod config;
mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use pinchflow::flow_sim::{
    evolution_consistency, flow_axisymmetric, flow_clifford, flow_geodesic_sphere, sample_profile, write_trace_csv,
    DtPolicy, Homogeneous, Tracked,
};
use pinchflow::model_geometry::{classify, curvature_of, Classification, CurvatureSummary, ModelSubmanifold};
use pinchflow::rigor::{lookup, verify_lemma, Budget, ExtremumReport, Mode, Sense, VerificationReport, VerifyOptions};
use pinchflow::thresholds::threshold_value;
use pinchflow::{DeltaConvention, SphereContext, ThresholdProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use config::*;
use output::{emit, to_json};

/// Overrides the worker count used by `verify`.
const THREADS_VAR: &str = "PINCHFLOW_THREADS";

#[derive(Parser)]
#[command(name = "pinchflow", version, about = "Curvature pinching thresholds and mean curvature flow in round spheres")]
struct Cli {
    /// JSON experiment config; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the effective config (file plus flags) to this path
    #[arg(long, global = true)]
    save_config: Option<PathBuf>,

    /// Output file, written atomically; stdout when absent
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Seed for random perturbations of initial data
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Ctx {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    kbar: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a lemma (or a single item) with interval bisection
    Verify {
        #[arg(long)]
        lemma: Option<String>,
        /// Dimension, list or range such as `7-50`
        #[arg(long, value_parser = |s: &str| parse_dims(s).map(Dims))]
        n: Option<Dims>,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
        #[arg(long)]
        max_cells: Option<usize>,
        #[arg(long)]
        min_width: Option<f64>,
        /// Include wall-clock timings in the report
        #[arg(long)]
        timing: bool,
    },
    /// Locate the extremum of a registered expression
    Extrema {
        #[arg(long)]
        expr: Option<String>,
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, value_enum)]
        mode: Option<ExtremumMode>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// CSV table of threshold profiles on [0, xmax]
    Thresholds {
        #[command(flatten)]
        ctx: Ctx,
        /// Comma-separated names: huisken, baker, alpha, gamma, sqrt-a, b, b-restricted
        #[arg(long, value_delimiter = ',')]
        profiles: Option<Vec<ThresholdProfile>>,
        #[arg(long)]
        xmax: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Classify a model hypersurface against a threshold profile
    Classify {
        /// `sphere:<rho>`, `torus:<psi>` or `equator`
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        profile: Option<ThresholdProfile>,
        #[command(flatten)]
        ctx: Ctx,
    },
    /// Run a flow and write its diagnostics as CSV
    Flow {
        #[arg(long, value_enum)]
        kind: Option<FlowKind>,
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        rho0: Option<f64>,
        #[arg(long)]
        psi0: Option<f64>,
        #[arg(long)]
        base: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        amplitude: Option<f64>,
        #[arg(long)]
        mode: Option<u32>,
        #[arg(long)]
        noise: Option<f64>,
        /// `cfl:<c>` or `fixed:<dt>`
        #[arg(long, value_parser = parse_dt)]
        dt_policy: Option<DtPolicy>,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        blowup: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        profile: Option<ThresholdProfile>,
        #[arg(long)]
        record_stride: Option<usize>,
    },
    /// Residual of the |H|^2 or |A|^2 evolution equation on an exact solution
    Consistency {
        #[arg(long, value_enum)]
        kind: Option<ConsistencyKind>,
        #[arg(long, value_enum)]
        which: Option<Which>,
        #[arg(long)]
        r1_factor: Option<f64>,
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        rho0: Option<f64>,
        #[arg(long)]
        psi0: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
}

#[derive(Clone)]
struct Dims(Vec<u32>);

#[derive(Clone, Copy, clap::ValueEnum)]
enum Convention {
    Restricted,
    Piecewise,
}

fn parse_dt(s: &str) -> Result<DtPolicy, String> {
    let (kind, v) = s.split_once(':').ok_or_else(|| format!("expected cfl:<c> or fixed:<dt>, got `{s}`"))?;
    let v: f64 = v.parse().map_err(|_| format!("bad number in `{s}`"))?;
    match kind {
        "cfl" => Ok(DtPolicy::Cfl(v)),
        "fixed" => Ok(DtPolicy::Fixed(v)),
        _ => Err(format!("expected cfl:<c> or fixed:<dt>, got `{s}`")),
    }
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn merge_ctx(cfg: &mut ExperimentConfig, c: Ctx) {
    if c.n.is_some() {
        cfg.context.n = c.n;
    }
    set(&mut cfg.context.kbar, c.kbar);
}

#[derive(Clone, Copy)]
enum Task {
    Verify,
    Extrema,
    Thresholds,
    Classify,
    Flow,
    Consistency,
}

/// Folds the subcommand flags into `cfg`.
fn merge(cfg: &mut ExperimentConfig, cmd: Command) -> Task {
    match cmd {
        Command::Verify { lemma, n, convention, max_cells, min_width, timing } => {
            let v = &mut cfg.verify;
            if lemma.is_some() {
                v.lemma = lemma;
            }
            set(&mut v.n, n.map(|d| d.0));
            set(
                &mut v.convention,
                convention.map(|c| match c {
                    Convention::Restricted => DeltaConvention::Restricted,
                    Convention::Piecewise => DeltaConvention::Piecewise,
                }),
            );
            set(&mut v.max_cells, max_cells);
            set(&mut v.min_width, min_width);
            v.timing |= timing;
            Task::Verify
        }
        Command::Extrema { expr, ctx, mode, lo, hi, tol } => {
            merge_ctx(cfg, ctx);
            let e = &mut cfg.extrema;
            if expr.is_some() {
                e.expr = expr;
            }
            if mode.is_some() {
                e.mode = mode;
            }
            set(&mut e.lo, lo);
            set(&mut e.hi, hi);
            set(&mut e.tol, tol);
            Task::Extrema
        }
        Command::Thresholds { ctx, profiles, xmax, steps } => {
            merge_ctx(cfg, ctx);
            let t = &mut cfg.thresholds;
            set(&mut t.profiles, profiles);
            set(&mut t.xmax, xmax);
            set(&mut t.steps, steps);
            Task::Thresholds
        }
        Command::Classify { model, profile, ctx } => {
            merge_ctx(cfg, ctx);
            if model.is_some() {
                cfg.classify.model = model;
            }
            set(&mut cfg.classify.profile, profile);
            Task::Classify
        }
        Command::Flow {
            kind,
            ctx,
            rho0,
            psi0,
            base,
            amplitude,
            mode,
            noise,
            dt_policy,
            grid_size,
            t_max,
            blowup,
            eps,
            sigma,
            profile,
            record_stride,
        } => {
            merge_ctx(cfg, ctx);
            let f = &mut cfg.flow;
            if kind.is_some() {
                f.kind = kind;
            }
            if rho0.is_some() {
                f.rho0 = rho0;
            }
            if psi0.is_some() {
                f.psi0 = psi0;
            }
            set(&mut f.base, base);
            set(&mut f.amplitude, amplitude);
            set(&mut f.mode, mode);
            set(&mut f.noise, noise);
            let c = &mut f.config;
            set(&mut c.dt_policy, dt_policy);
            set(&mut c.grid_size, grid_size);
            set(&mut c.t_max, t_max);
            set(&mut c.blowup_threshold, blowup);
            if eps.is_some() {
                c.eps = eps;
            }
            if sigma.is_some() {
                c.sigma = sigma;
            }
            set(&mut c.profile, profile);
            set(&mut c.record_stride, record_stride);
            Task::Flow
        }
        Command::Consistency { kind, which, r1_factor, ctx, rho0, psi0, dt, steps } => {
            merge_ctx(cfg, ctx);
            let c = &mut cfg.consistency;
            if kind.is_some() {
                c.kind = kind;
            }
            if which.is_some() {
                c.which = which;
            }
            set(&mut c.r1_factor, r1_factor);
            if rho0.is_some() {
                c.rho0 = rho0;
            }
            if psi0.is_some() {
                c.psi0 = psi0;
            }
            set(&mut c.dt, dt);
            set(&mut c.steps, steps);
            Task::Consistency
        }
    }
}

fn threads() -> anyhow::Result<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => bail!("{THREADS_VAR} must be a positive integer, got `{s}`"),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

enum Status {
    Ok,
    GoalFailed,
}

fn run_verify(cfg: &ExperimentConfig) -> anyhow::Result<(Vec<u8>, Status)> {
    let v = &cfg.verify;
    let lemma = v.lemma.as_deref().ok_or_else(|| anyhow!("missing --lemma"))?;
    let dims = if v.n.is_empty() { cfg.context.n.into_iter().collect() } else { v.n.clone() };
    if dims.is_empty() {
        bail!("missing dimension: pass --n");
    }
    let threads = threads()?;
    let budget = Budget { max_cells: v.max_cells, min_width: v.min_width };
    // several dimensions run side by side; a single one spreads its items instead
    let inner = if dims.len() == 1 { threads } else { 1 };
    let opts = VerifyOptions { budget, convention: v.convention, threads: inner };
    let mut slots: Vec<Option<pinchflow::Result<VerificationReport>>> = vec![None; dims.len()];
    let per = dims.len().div_ceil(threads.min(dims.len()));
    std::thread::scope(|s| {
        for (chunk, ns) in slots.chunks_mut(per).zip(dims.chunks(per)) {
            s.spawn(move || {
                for (slot, &n) in chunk.iter_mut().zip(ns) {
                    *slot = Some(verify_lemma(lemma, n, &opts));
                }
            });
        }
    });
    let mut reports = Vec::with_capacity(dims.len());
    for r in slots {
        let mut value = serde_json::to_value(r.expect("every slot is filled")?)?;
        if !v.timing {
            value.as_object_mut().map(|m| m.remove("wall_time_ms"));
        }
        reports.push(value);
    }
    let all = reports.iter().all(|r| r["verified"] == serde_json::Value::Bool(true));
    let bytes = if reports.len() == 1 { to_json(&reports[0])? } else { to_json(&reports)? };
    Ok((bytes, if all { Status::Ok } else { Status::GoalFailed }))
}

#[derive(Serialize)]
struct ExtremaOut<'a> {
    expr: &'a str,
    n: u32,
    #[serde(flatten)]
    report: ExtremumReport,
}

fn run_extrema(cfg: &ExperimentConfig) -> anyhow::Result<Vec<u8>> {
    let e = &cfg.extrema;
    let id = e.expr.as_deref().ok_or_else(|| anyhow!("missing --expr"))?;
    let ctx = cfg.context.context()?;
    let expr = lookup(id)?;
    let mode = match e.mode {
        Some(ExtremumMode::Min) => Mode::Min,
        Some(ExtremumMode::Max) => Mode::Max,
        None if expr.sense == Sense::Positive => Mode::Min,
        None => Mode::Max,
    };
    let inst = pinchflow::rigor::Instance::new(ctx.n);
    let report = expr.find_extremum(&inst, mode, e.lo, e.hi, e.tol)?;
    to_json(&ExtremaOut { expr: id, n: ctx.n, report })
}

fn run_thresholds(cfg: &ExperimentConfig) -> anyhow::Result<Vec<u8>> {
    let t = &cfg.thresholds;
    let ctx = cfg.context.context()?;
    if !(t.xmax > 0.0 && t.xmax.is_finite()) || t.steps == 0 {
        bail!("need xmax > 0 and steps >= 1");
    }
    let profiles: Vec<ThresholdProfile> = if t.profiles.is_empty() {
        ThresholdProfile::ALL.into_iter().filter(|p| p.check(&ctx).is_ok()).collect()
    } else {
        t.profiles.clone()
    };
    for p in &profiles {
        p.check(&ctx)?;
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(std::iter::once("x").chain(profiles.iter().map(|p| p.name())))?;
    for i in 0..=t.steps {
        let x = if i == t.steps { t.xmax } else { t.xmax * i as f64 / t.steps as f64 };
        let mut row = vec![pinchflow::flow_sim::fmt_f64(x)];
        for &p in &profiles {
            row.push(pinchflow::flow_sim::fmt_f64(threshold_value(p, &ctx, x)?));
        }
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| anyhow!("{}", e.error()))?)
}

fn parse_model(text: &str, n: u32) -> anyhow::Result<ModelSubmanifold> {
    let (kind, arg) = match text.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (text, None),
    };
    let value = || -> anyhow::Result<f64> {
        let a = arg.ok_or_else(|| anyhow!("model `{text}` needs a parameter, e.g. {kind}:0.5"))?;
        a.parse().with_context(|| format!("bad parameter in model `{text}`"))
    };
    Ok(match kind {
        "sphere" => ModelSubmanifold::GeodesicSphere { n, rho: value()? },
        "torus" => ModelSubmanifold::CliffordTorus { n, psi: value()? },
        "equator" if arg.is_none() => ModelSubmanifold::Equator { n },
        _ => bail!("unknown model `{text}`; use sphere:<rho>, torus:<psi> or equator"),
    })
}

#[derive(Serialize)]
struct ClassifyOut {
    model: ModelSubmanifold,
    profile: &'static str,
    kbar: f64,
    threshold: f64,
    classification: Classification,
    summary: CurvatureSummary,
}

fn run_classify(cfg: &ExperimentConfig) -> anyhow::Result<Vec<u8>> {
    let ctx = cfg.context.context()?;
    let text = cfg.classify.model.as_deref().ok_or_else(|| anyhow!("missing --model"))?;
    let model = parse_model(text, ctx.n)?;
    let profile = cfg.classify.profile;
    let summary = curvature_of(&model, &ctx)?;
    let threshold = profile.value(&ctx, summary.norm_h2)?;
    let classification = classify(&summary, profile, &ctx)?;
    to_json(&ClassifyOut { model, profile: profile.name(), kbar: ctx.kbar, threshold, classification, summary })
}

fn initial_profile(f: &FlowParams, seed: u64) -> anyhow::Result<Vec<f64>> {
    if !(f.noise >= 0.0) {
        bail!("noise must be nonnegative");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> =
        (1..=8).map(|k| if f.noise > 0.0 { rng.random_range(-f.noise..=f.noise) / (k * k) as f64 } else { 0.0 }).collect();
    let mode = f.mode as f64;
    Ok(sample_profile(f.config.grid_size, |v| {
        let extra: f64 = coeffs.iter().enumerate().map(|(k, c)| c * ((k + 1) as f64 * v).cos()).sum();
        f.base + f.amplitude * (mode * v).cos() + extra
    }))
}

fn run_flow(cfg: &ExperimentConfig) -> anyhow::Result<Vec<u8>> {
    let f = &cfg.flow;
    let ctx = cfg.context.context()?;
    let kind = f.kind.ok_or_else(|| anyhow!("missing --kind"))?;
    let trace = match kind {
        FlowKind::Sphere => {
            let rho0 = f.rho0.ok_or_else(|| anyhow!("missing --rho0"))?;
            flow_geodesic_sphere(&ctx, rho0, &f.config)?
        }
        FlowKind::Clifford => {
            let psi0 = f.psi0.ok_or_else(|| anyhow!("missing --psi0"))?;
            flow_clifford(&ctx, psi0, &f.config)?
        }
        FlowKind::Axisym => flow_axisymmetric(&ctx, &initial_profile(f, cfg.seed)?, &f.config)?,
    };
    let mut buf = Vec::new();
    write_trace_csv(&trace, &mut buf)?;
    Ok(buf)
}

#[derive(Serialize)]
struct ConsistencyOut {
    kind: ConsistencyKind,
    which: Which,
    n: u32,
    kbar: f64,
    start: f64,
    r1_factor: f64,
    dt: f64,
    steps: usize,
    residual: f64,
}

fn run_consistency(cfg: &ExperimentConfig) -> anyhow::Result<Vec<u8>> {
    let c = &cfg.consistency;
    let ctx: SphereContext = cfg.context.context()?;
    let kind = c.kind.ok_or_else(|| anyhow!("missing --kind"))?;
    let which = c.which.ok_or_else(|| anyhow!("missing --which"))?;
    let (flow, start) = match kind {
        ConsistencyKind::Sphere => {
            let rho0 = c.rho0.unwrap_or(PI / (3.0 * ctx.kbar.sqrt()));
            (Homogeneous::GeodesicSphere { rho0 }, rho0)
        }
        ConsistencyKind::Clifford => {
            let psi0 = c.psi0.unwrap_or(0.9);
            (Homogeneous::Clifford { psi0 }, psi0)
        }
    };
    let tracked = match which {
        Which::H2 => Tracked::H2,
        Which::A2 => Tracked::A2,
    };
    let residual = evolution_consistency(&ctx, flow, tracked, c.r1_factor, c.dt, c.steps)?;
    to_json(&ConsistencyOut {
        kind,
        which,
        n: ctx.n,
        kbar: ctx.kbar,
        start,
        r1_factor: c.r1_factor,
        dt: c.dt,
        steps: c.steps,
        residual,
    })
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if cli.output.is_some() {
        cfg.output = cli.output;
    }
    set(&mut cfg.seed, cli.seed);
    let task = merge(&mut cfg, cli.command);
    if let Some(p) = &cli.save_config {
        emit(Some(p), &to_json(&cfg)?)?;
    }
    let (bytes, status) = match task {
        Task::Verify => run_verify(&cfg)?,
        Task::Extrema => (run_extrema(&cfg)?, Status::Ok),
        Task::Thresholds => (run_thresholds(&cfg)?, Status::Ok),
        Task::Classify => (run_classify(&cfg)?, Status::Ok),
        Task::Flow => (run_flow(&cfg)?, Status::Ok),
        Task::Consistency => (run_consistency(&cfg)?, Status::Ok),
    };
    emit(cfg.output.as_deref(), &bytes)?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::GoalFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
