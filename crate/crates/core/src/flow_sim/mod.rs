//! Mean curvature flow of model hypersurfaces: exact ODE reductions for
//! geodesic spheres and Clifford tori, and a method-of-lines scheme for
//! axially symmetric spheres written as graphs over the polar angle.

mod axisym;
mod homogeneous;

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::model_geometry::{pinching_margin_u, CurvatureSummary};
use crate::thresholds::{admissible_sigma, omega, SphereContext, ThresholdProfile};

pub use axisym::{flow_axisymmetric, graph_principal, sample_profile};
pub use homogeneous::{evolution_consistency, flow_clifford, flow_geodesic_sphere, Homogeneous, Tracked};

/// Step used by the ODE integrators when the policy is CFL based.
pub const ODE_DT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DtPolicy {
    Fixed(f64),
    /// `dt = c * dv^2 * min W^2 / n` for the PDE; the ODEs fall back to [`ODE_DT`].
    Cfl(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    pub dt_policy: DtPolicy,
    pub grid_size: usize,
    pub t_max: f64,
    /// Absolute bound on `max |A|^2`.
    pub blowup_threshold: f64,
    /// `None` picks half the initial margin, capped at `1/(2n^2)`.
    pub eps: Option<f64>,
    /// `None` takes the admissible exponent for the chosen `eps`.
    pub sigma: Option<f64>,
    pub profile: ThresholdProfile,
    pub record_stride: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            dt_policy: DtPolicy::Cfl(0.2),
            grid_size: 256,
            t_max: 1.0,
            blowup_threshold: 1e12,
            eps: None,
            sigma: None,
            profile: ThresholdProfile::SqrtA,
            record_stride: 50,
        }
    }
}

impl FlowConfig {
    pub fn check(&self, ctx: &SphereContext) -> Result<()> {
        match self.dt_policy {
            DtPolicy::Fixed(dt) if !(dt > 0.0 && dt.is_finite()) => {
                return Err(param(format!("fixed step must be positive, got {dt}")))
            }
            DtPolicy::Cfl(c) if !(c > 0.0 && c <= 0.5) => {
                return Err(param(format!("CFL coefficient must lie in (0, 0.5], got {c}")))
            }
            _ => {}
        }
        let nf = ctx.n as f64;
        if let Some(e) = self.eps {
            if !(e >= 0.0 && e < 1.0 / (nf * nf)) {
                return Err(param(format!("eps must lie in [0, 1/n^2), got {e}")));
            }
        }
        if let Some(s) = self.sigma {
            if !(s >= 0.0 && s < 1.0) {
                return Err(param(format!("sigma must lie in [0, 1), got {s}")));
            }
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(param(format!("t_max must be positive, got {}", self.t_max)));
        }
        if !(self.blowup_threshold > 0.0) {
            return Err(param("blowup threshold must be positive"));
        }
        if self.record_stride == 0 {
            return Err(param("record stride must be at least 1"));
        }
        self.profile.check(ctx)
    }

    pub(crate) fn ode_dt(&self) -> f64 {
        match self.dt_policy {
            DtPolicy::Fixed(dt) => dt,
            DtPolicy::Cfl(_) => ODE_DT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    #[serde(rename = "max_A2")]
    pub max_a2: f64,
    #[serde(rename = "min_H2")]
    pub min_h2: f64,
    #[serde(rename = "max_H2")]
    pub max_h2: f64,
    #[serde(rename = "sup_U")]
    pub sup_u: f64,
    pub sup_f_sigma: f64,
    /// `min_H2 / max_H2`, or 0 when `max_H2 = 0`.
    pub roundness: f64,
    #[serde(rename = "sup_gradH2")]
    pub sup_grad_h2: f64,
    #[serde(rename = "sup_Aring2_over_H2")]
    pub sup_aring2_over_h2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    RoundPoint,
    TotallyGeodesic,
    Collapse,
    BudgetExhausted,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowTrace {
    pub records: Vec<DiagnosticsRecord>,
    pub outcome: Outcome,
    pub extinction_time: Option<f64>,
    pub eps: f64,
    pub sigma: f64,
    /// Largest deviation from the exact solution, where one is known.
    pub exact_error: Option<f64>,
}

/// Numerical criteria behind [`verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub round_tol: f64,
    pub min_roundness: f64,
    /// Round points need `max_H2 > h2_factor * kbar`.
    pub h2_factor: f64,
    /// Totally geodesic needs `max_A2 < geodesic_factor * kbar`.
    pub geodesic_factor: f64,
    pub blowup_threshold: f64,
    pub kbar: f64,
}

impl Tolerances {
    pub fn new(ctx: &SphereContext, blowup_threshold: f64) -> Self {
        Self {
            round_tol: 1e-3,
            min_roundness: 0.99,
            h2_factor: 1e4,
            geodesic_factor: 1e-6,
            blowup_threshold,
            kbar: ctx.kbar,
        }
    }

    pub(crate) fn is_round(&self, r: &DiagnosticsRecord) -> bool {
        r.sup_aring2_over_h2 < self.round_tol
            && r.roundness > self.min_roundness
            && r.max_h2 > self.h2_factor * self.kbar
    }

    pub(crate) fn is_flat(&self, r: &DiagnosticsRecord) -> bool {
        r.max_a2 < self.geodesic_factor * self.kbar
    }
}

pub fn verdict(records: &[DiagnosticsRecord], tol: &Tolerances) -> Result<Outcome> {
    let last = records.last().ok_or(Error::EmptyTrace)?;
    if tol.is_round(last) {
        return Ok(Outcome::RoundPoint);
    }
    let tail = (records.len() / 10).max(1);
    if records[records.len() - tail..].iter().all(|r| tol.is_flat(r)) {
        return Ok(Outcome::TotallyGeodesic);
    }
    Ok(if last.max_a2 >= tol.blowup_threshold { Outcome::Collapse } else { Outcome::BudgetExhausted })
}

/// Consecutive flat records needed before a run stops as stationary.
pub(crate) fn flat_run_done(flat_run: usize, total: usize) -> bool {
    flat_run >= 10 && flat_run * 10 >= total
}

/// Resolved pinching margin and decay exponent for a run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Margins {
    pub eps: f64,
    pub sigma: f64,
}

impl Margins {
    /// `states` are the initial pointwise summaries.
    pub fn resolve(cfg: &FlowConfig, ctx: &SphereContext, states: &[CurvatureSummary]) -> Result<Self> {
        let nf = ctx.n as f64;
        let eps = match cfg.eps {
            Some(e) => e,
            None => {
                let mut worst = f64::INFINITY;
                for s in states {
                    let x = s.norm_h2;
                    worst = worst.min((cfg.profile.ring(ctx, x)? - s.norm_aring2) / omega(ctx, x)?);
                }
                // unpinched data gets no margin
                (0.5 / (nf * nf)).min(0.5 * worst).max(0.0)
            }
        };
        let sigma = match cfg.sigma {
            Some(s) => s,
            None if eps > 0.0 => {
                let floor = admissible_sigma(ctx.n, eps, 2.0)?.p_floor;
                admissible_sigma(ctx.n, eps, floor)?.sigma
            }
            None => 0.0,
        };
        Ok(Self { eps, sigma })
    }
}

/// Accumulates pointwise suprema into a record.
pub(crate) struct Accumulator {
    rec: DiagnosticsRecord,
}

impl Accumulator {
    pub fn new(t: f64) -> Self {
        Self {
            rec: DiagnosticsRecord {
                t,
                max_a2: 0.0,
                min_h2: f64::INFINITY,
                max_h2: 0.0,
                sup_u: f64::NEG_INFINITY,
                sup_f_sigma: 0.0,
                roundness: 0.0,
                sup_grad_h2: 0.0,
                sup_aring2_over_h2: 0.0,
            },
        }
    }

    pub fn add(&mut self, s: &CurvatureSummary, cfg: &FlowConfig, ctx: &SphereContext, m: Margins) -> Result<()> {
        let (u, f) = pinching_margin_u(s, cfg.profile, ctx, m.eps, m.sigma)?;
        let r = &mut self.rec;
        r.max_a2 = r.max_a2.max(s.norm_a2);
        r.min_h2 = r.min_h2.min(s.norm_h2);
        r.max_h2 = r.max_h2.max(s.norm_h2);
        r.sup_u = r.sup_u.max(u);
        r.sup_f_sigma = r.sup_f_sigma.max(f);
        let ratio = if s.norm_aring2 == 0.0 { 0.0 } else { s.norm_aring2 / s.norm_h2 };
        r.sup_aring2_over_h2 = r.sup_aring2_over_h2.max(ratio);
        Ok(())
    }

    pub fn grad(&mut self, g: f64) {
        self.rec.sup_grad_h2 = self.rec.sup_grad_h2.max(g);
    }

    pub fn finish(mut self) -> DiagnosticsRecord {
        let r = &mut self.rec;
        r.roundness = if r.max_h2 > 0.0 { r.min_h2 / r.max_h2 } else { 0.0 };
        self.rec
    }
}

/// Kahan-compensated running time, so that ~1e6 small steps do not drift.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Clock {
    sum: f64,
    carry: f64,
}

impl Clock {
    pub fn add(&mut self, h: f64) {
        let y = h - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn get(&self) -> f64 {
        self.sum
    }
}

/// Remaining lifetime of a geodesic sphere with mean curvature squared `h2`.
pub(crate) fn remaining_time(ctx: &SphereContext, h2: f64) -> f64 {
    let n = ctx.n as f64;
    (n * n * ctx.kbar / h2).ln_1p() / (2.0 * n * ctx.kbar)
}

pub const CSV_HEADER: [&str; 9] =
    ["t", "max_A2", "min_H2", "max_H2", "sup_U", "sup_f_sigma", "roundness", "sup_gradH2", "sup_Aring2_over_H2"];

/// Seventeen significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn write_trace_csv<W: Write>(trace: &FlowTrace, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &trace.records {
        let row = [
            r.t,
            r.max_a2,
            r.min_h2,
            r.max_h2,
            r.sup_u,
            r.sup_f_sigma,
            r.roundness,
            r.sup_grad_h2,
            r.sup_aring2_over_h2,
        ];
        w.write_record(row.iter().map(|&v| fmt_f64(v)))?;
    }
    let mut out = w.into_inner().map_err(|e| e.into_error())?;
    let ext = trace.extinction_time.map_or_else(|| "NA".to_string(), fmt_f64);
    writeln!(out, "# outcome={} extinction_time={ext}", trace.outcome)?;
    out.flush()
}
