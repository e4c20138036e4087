//! Axially symmetric spheres as graphs `u(v)` over the polar angle, where `u`
//! is the distance from a fixed point of the unit sphere. The ambient metric is
//! `du^2 + sin^2 u (dv^2 + sin^2 v g)` with `g` the round metric on `S^{n-1}`.

use std::f64::consts::PI;

use super::{flat_run_done, Clock, verdict, Accumulator, DtPolicy, FlowConfig, FlowTrace, Margins, Outcome, Tolerances};
use crate::error::{param, Error, Result};
use crate::model_geometry::{CurvatureSummary, R1_FACTOR};
use crate::thresholds::SphereContext;

const MAX_HALVINGS: usize = 20;
/// Largest change of `u` accepted in one step.
const MAX_JUMP: f64 = 0.05;

/// Principal curvatures `(profile, orbit)` of the graph in the unit sphere,
/// for the inward normal. At the poles the orbit curvature takes its limit
/// `u_v cot v -> u_vv`.
pub fn graph_principal(u: f64, uv: f64, uvv: f64, v: f64) -> (f64, f64) {
    let (su, cu) = u.sin_cos();
    let w2 = su * su + uv * uv;
    let w = w2.sqrt();
    let kp = (su * su * cu + 2.0 * uv * uv * cu - uvv * su) / (w2 * w);
    let sv = v.sin();
    let drift = if sv.abs() < 1e-12 { uvv } else { uv * v.cos() / sv };
    let ko = (cu - drift / su) / w;
    (kp, ko)
}

struct Grid {
    dv: f64,
    n: f64,
}

impl Grid {
    /// Central differences with even reflection across both poles.
    fn derivs(&self, u: &[f64], i: usize) -> (f64, f64) {
        let last = u.len() - 1;
        let (um, up) = match i {
            0 => (u[1], u[1]),
            _ if i == last => (u[last - 1], u[last - 1]),
            _ => (u[i - 1], u[i + 1]),
        };
        ((up - um) / (2.0 * self.dv), (up - 2.0 * u[i] + um) / (self.dv * self.dv))
    }

    fn v(&self, i: usize, len: usize) -> f64 {
        if i == len - 1 {
            PI
        } else {
            i as f64 * self.dv
        }
    }

    /// Returns `(kp, ko, W)` at node `i`.
    fn local(&self, u: &[f64], i: usize) -> (f64, f64, f64) {
        let (uv, uvv) = self.derivs(u, i);
        let (kp, ko) = graph_principal(u[i], uv, uvv, self.v(i, u.len()));
        (kp, ko, (u[i].sin().powi(2) + uv * uv).sqrt())
    }

    /// `du/dtau = -H W / sin u` in units with `kbar = 1`; returns `min W^2`.
    fn rate(&self, u: &[f64], out: &mut [f64]) -> f64 {
        let mut w2 = f64::INFINITY;
        for i in 0..u.len() {
            let (kp, ko, w) = self.local(u, i);
            out[i] = -(kp + (self.n - 1.0) * ko) * w / u[i].sin();
            w2 = w2.min(w * w);
        }
        w2
    }
}

fn summaries(grid: &Grid, u: &[f64], ctx: &SphereContext) -> (Vec<CurvatureSummary>, Vec<f64>) {
    let k = ctx.kbar.sqrt();
    let m = ctx.n - 1;
    let mut out = Vec::with_capacity(u.len());
    let mut grad = vec![0.0; u.len()];
    let mut hs = Vec::with_capacity(u.len());
    let mut ws = Vec::with_capacity(u.len());
    for i in 0..u.len() {
        let (kp, ko, w) = grid.local(u, i);
        out.push(CurvatureSummary::from_principal(vec![(k * kp, 1), (k * ko, m)], R1_FACTOR));
        hs.push(kp + (ctx.n as f64 - 1.0) * ko);
        ws.push(w);
    }
    // |grad H|^2 = H_v^2 / W^2 in the induced metric, which scales like kbar^2
    for i in 1..u.len() - 1 {
        let hv = (hs[i + 1] - hs[i - 1]) / (2.0 * grid.dv);
        grad[i] = ctx.kbar * ctx.kbar * hv * hv / (ws[i] * ws[i]);
    }
    (out, grad)
}

/// Geodesic radius of the round sphere enclosing the same first moment,
/// weighted by the volume density `sin^{n-1} v`.
fn mean_radius(grid: &Grid, u: &[f64]) -> f64 {
    let len = u.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (i, &ui) in u.iter().enumerate() {
        let w = grid.v(i, len).sin().abs().powf(grid.n - 1.0) * if i == 0 || i == len - 1 { 0.5 } else { 1.0 };
        num += w * ui;
        den += w;
    }
    num / den
}

/// Samples `f` on `grid_size` equispaced nodes of `[0, pi]`.
pub fn sample_profile(grid_size: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let dv = PI / (grid_size.max(2) - 1) as f64;
    (0..grid_size).map(|i| f(if i + 1 == grid_size { PI } else { i as f64 * dv })).collect()
}

/// Method of lines with Heun steps on the nodes `v_i = i pi/(N-1)` of `u0`.
/// `u0` is given in units where `kbar = 1`; rejected steps are retried with
/// half the step, and [`Error::StepCollapse`] is raised after 20 in a row.
pub fn flow_axisymmetric(ctx: &SphereContext, u0: &[f64], cfg: &FlowConfig) -> Result<FlowTrace> {
    cfg.check(ctx)?;
    if u0.len() < 5 {
        return Err(param(format!("need at least 5 grid nodes, got {}", u0.len())));
    }
    if let Some((i, v)) = u0.iter().enumerate().find(|(_, &v)| !(v > 0.0 && v < PI)) {
        return Err(param(format!("profile value {v} at node {i} outside (0, pi)")));
    }
    let len = u0.len();
    let grid = Grid { dv: PI / (len - 1) as f64, n: ctx.n as f64 };
    let k = ctx.kbar;
    let tol = Tolerances::new(ctx, cfg.blowup_threshold);

    let (init, _) = summaries(&grid, u0, ctx);
    let margins = Margins::resolve(cfg, ctx, &init)?;
    let record = |t: f64, u: &[f64]| -> Result<_> {
        let (states, grad) = summaries(&grid, u, ctx);
        let mut acc = Accumulator::new(t);
        for (s, g) in states.iter().zip(grad) {
            acc.add(s, cfg, ctx, margins)?;
            acc.grad(g);
        }
        Ok(acc.finish())
    };

    let mut u = u0.to_vec();
    let mut k1 = vec![0.0; len];
    let mut k2 = vec![0.0; len];
    let mut trial = vec![0.0; len];
    let mut clock = Clock::default();
    let tau_max = cfg.t_max * k;
    let mut records = vec![record(0.0, &u)?];
    let mut flat_run = 0usize;
    let mut step = 0usize;
    loop {
        let tau = clock.get();
        let last = records.last().unwrap();
        if tol.is_round(last)
            || last.max_a2 >= cfg.blowup_threshold
            || flat_run_done(flat_run, records.len())
            || tau >= tau_max
        {
            break;
        }
        let min_w2 = grid.rate(&u, &mut k1);
        let mut h = match cfg.dt_policy {
            DtPolicy::Fixed(dt) => dt * k,
            DtPolicy::Cfl(c) => c * grid.dv * grid.dv * min_w2 / grid.n,
        }
        .min(tau_max - tau);
        let mut halvings = 0;
        loop {
            for i in 0..len {
                trial[i] = u[i] + h * k1[i];
            }
            let mut ok = trial.iter().all(|&x| x > 0.0 && x < PI);
            if ok {
                grid.rate(&trial, &mut k2);
                for i in 0..len {
                    trial[i] = u[i] + 0.5 * h * (k1[i] + k2[i]);
                }
                ok = trial.iter().zip(&u).all(|(&x, &y)| x > 0.0 && x < PI && (x - y).abs() <= MAX_JUMP);
            }
            if ok {
                break;
            }
            halvings += 1;
            if halvings >= MAX_HALVINGS {
                return Err(Error::StepCollapse(halvings));
            }
            h *= 0.5;
        }
        std::mem::swap(&mut u, &mut trial);
        clock.add(h);
        let tau = clock.get();
        step += 1;
        if step % cfg.record_stride == 0 || tau >= tau_max {
            let r = record(tau / k, &u)?;
            flat_run = if tol.is_flat(&r) { flat_run + 1 } else { 0 };
            records.push(r);
        }
    }
    let outcome = verdict(&records, &tol)?;
    let extinction_time = match outcome {
        Outcome::RoundPoint => {
            let c = mean_radius(&grid, &u).cos().abs();
            Some(records.last().unwrap().t - c.ln() / (grid.n * k))
        }
        _ => None,
    };
    Ok(FlowTrace { records, outcome, extinction_time, eps: margins.eps, sigma: margins.sigma, exact_error: None })
}
