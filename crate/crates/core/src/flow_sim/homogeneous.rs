//! Flows that stay inside a one-parameter family of homogeneous hypersurfaces.
//!
//! Angles are measured in units where `kbar = 1`, so the state `theta` is
//! `sqrt(kbar) * rho` for spheres and `psi` for tori, and `d theta / d(kbar t)`
//! depends on `theta` alone.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::{flat_run_done, Clock, remaining_time, verdict, Accumulator, FlowConfig, FlowTrace, Margins, Outcome, Tolerances};
use crate::error::{param, Result};
use crate::model_geometry::{curvature_of, CurvatureSummary, ModelSubmanifold};
use crate::thresholds::SphereContext;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homogeneous {
    GeodesicSphere { rho0: f64 },
    Clifford { psi0: f64 },
    Equator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tracked {
    H2,
    A2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    Sphere,
    Torus,
    Equator,
}

impl Family {
    fn rate(self, n: f64, th: f64) -> f64 {
        match self {
            Family::Sphere => -n / th.tan(),
            // moving along the torus normal, which points towards growing psi
            Family::Torus => th.tan() - (n - 1.0) / th.tan(),
            Family::Equator => 0.0,
        }
    }

    fn end(self) -> f64 {
        match self {
            Family::Sphere => PI,
            _ => FRAC_PI_2,
        }
    }

    /// Distance to the nearest singular end and the stiffness there.
    fn cap(self, n: f64, th: f64) -> f64 {
        let d = th.min(self.end() - th);
        let stiff = match self {
            Family::Sphere => n,
            _ => (n - 1.0).max(1.0),
        };
        0.01 * d * d / stiff
    }

    fn model(self, ctx: &SphereContext, th: f64) -> ModelSubmanifold {
        match self {
            Family::Sphere => ModelSubmanifold::GeodesicSphere { n: ctx.n, rho: th / ctx.kbar.sqrt() },
            Family::Torus => ModelSubmanifold::CliffordTorus { n: ctx.n, psi: th },
            Family::Equator => ModelSubmanifold::Equator { n: ctx.n },
        }
    }
}

fn rk4(f: impl Fn(f64) -> f64, y: f64, h: f64) -> f64 {
    let k1 = f(y);
    let k2 = f(y + 0.5 * h * k1);
    let k3 = f(y + 0.5 * h * k2);
    let k4 = f(y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

fn integrate(
    ctx: &SphereContext,
    fam: Family,
    th0: f64,
    cfg: &FlowConfig,
    exact: Option<&dyn Fn(f64) -> f64>,
) -> Result<FlowTrace> {
    cfg.check(ctx)?;
    let n = ctx.n as f64;
    let k = ctx.kbar;
    let tol = Tolerances::new(ctx, cfg.blowup_threshold);
    let summary = |th: f64| -> Result<CurvatureSummary> { curvature_of(&fam.model(ctx, th), ctx) };
    let margins = Margins::resolve(cfg, ctx, &[summary(th0)?])?;
    let record = |t: f64, s: &CurvatureSummary| -> Result<_> {
        let mut acc = Accumulator::new(t);
        acc.add(s, cfg, ctx, margins)?;
        Ok(acc.finish())
    };

    let dt = cfg.ode_dt() * k;
    let mut th = th0;
    let mut clock = Clock::default();
    let mut s = summary(th)?;
    let mut records = vec![record(0.0, &s)?];
    let mut err: f64 = 0.0;
    let mut flat_run = 0usize;
    let mut step = 0usize;
    loop {
        let tau = clock.get();
        let h = dt.min(fam.cap(n, th)).min(cfg.t_max * k - tau);
        let next = rk4(|y| fam.rate(n, y), th, h);
        // the step cap keeps `next` in range; the check is a guard
        let stuck = !(next > 0.0 && next < fam.end());
        if stuck
            || s.norm_a2 >= cfg.blowup_threshold
            || tau / k >= cfg.t_max
            || flat_run_done(flat_run, records.len())
        {
            if records.last().unwrap().t != tau / k {
                records.push(record(tau / k, &s)?);
            }
            break;
        }
        th = next;
        clock.add(h);
        let tau = clock.get();
        step += 1;
        s = summary(th)?;
        if let Some(ex) = exact {
            err = err.max((th - ex(tau)).abs() / k.sqrt());
        }
        if step % cfg.record_stride == 0 {
            let r = record(tau / k, &s)?;
            flat_run = if tol.is_flat(&r) { flat_run + 1 } else { 0 };
            records.push(r);
        }
    }
    let outcome = verdict(&records, &tol)?;
    let last = records.last().unwrap();
    let extinction_time = match (fam, outcome) {
        (Family::Sphere, Outcome::RoundPoint | Outcome::Collapse) => Some(last.t + remaining_time(ctx, last.max_h2)),
        _ => None,
    };
    Ok(FlowTrace {
        records,
        outcome,
        extinction_time,
        eps: margins.eps,
        sigma: margins.sigma,
        exact_error: exact.map(|_| err),
    })
}

/// RK4 for `d rho/dt = -n sqrt(kbar) cot(sqrt(kbar) rho)`, compared against
/// `cos(sqrt(kbar) rho) = cos(sqrt(kbar) rho0) exp(n kbar t)`.
pub fn flow_geodesic_sphere(ctx: &SphereContext, rho0: f64, cfg: &FlowConfig) -> Result<FlowTrace> {
    let th0 = ctx.kbar.sqrt() * rho0;
    if !(th0 > 0.0 && th0 < PI) {
        return Err(param(format!("rho0 must lie in (0, pi/sqrt(kbar)), got {rho0}")));
    }
    let n = ctx.n as f64;
    let c0 = th0.cos();
    // 1 - cos(theta) = -expm1(ln|c0| + n tau), which stays accurate near extinction
    let exact = move |tau: f64| {
        if c0 == 0.0 {
            return FRAC_PI_2;
        }
        let gap = -(c0.abs().ln() + n * tau).exp_m1();
        let th = 2.0 * (0.5 * gap.max(0.0)).sqrt().asin();
        if c0 > 0.0 {
            th
        } else {
            PI - th
        }
    };
    integrate(ctx, Family::Sphere, th0, cfg, Some(&exact))
}

/// Clifford tori `S^1(cos psi) x S^{n-1}(sin psi)` scaled by `1/sqrt(kbar)`.
pub fn flow_clifford(ctx: &SphereContext, psi0: f64, cfg: &FlowConfig) -> Result<FlowTrace> {
    if !(psi0 > 0.0 && psi0 < FRAC_PI_2) {
        return Err(param(format!("psi0 must lie in (0, pi/2), got {psi0}")));
    }
    integrate(ctx, Family::Torus, psi0, cfg, None)
}

/// Largest relative residual of the evolution equation for `which` along
/// `steps` RK4 steps of size `dt`, with the time derivative taken by central
/// differences:
///
/// `d|H|^2/dt = 2 R2 + 2 n kbar |H|^2`, `d|A|^2/dt = 2 R1 + 4 kbar |H|^2 - 2 n kbar |A|^2`,
/// where `R1 = r1_factor |A|^4`.
pub fn evolution_consistency(
    ctx: &SphereContext,
    flow: Homogeneous,
    which: Tracked,
    r1_factor: f64,
    dt: f64,
    steps: usize,
) -> Result<f64> {
    if !(r1_factor.is_finite() && r1_factor > 0.0) {
        return Err(param(format!("r1 factor must be positive, got {r1_factor}")));
    }
    if !(dt > 0.0) || steps < 2 {
        return Err(param("need a positive step and at least two steps"));
    }
    let (fam, th0) = match flow {
        Homogeneous::GeodesicSphere { rho0 } => (Family::Sphere, ctx.kbar.sqrt() * rho0),
        Homogeneous::Clifford { psi0 } => (Family::Torus, psi0),
        Homogeneous::Equator => (Family::Equator, FRAC_PI_2),
    };
    if fam != Family::Equator && !(th0 > 0.0 && th0 < fam.end()) {
        return Err(param("initial state out of range"));
    }
    let n = ctx.n as f64;
    let k = ctx.kbar;
    let mut states = Vec::with_capacity(steps + 1);
    let mut th = th0;
    for _ in 0..=steps {
        states.push(curvature_of(&fam.model(ctx, th), ctx)?);
        th = rk4(|y| fam.rate(n, y), th, dt * k);
        if fam != Family::Equator && !(th > 0.0 && th < fam.end()) {
            break;
        }
    }
    if states.len() < 3 {
        return Err(param("flow left the family before three states were produced"));
    }
    let q = |s: &CurvatureSummary| match which {
        Tracked::H2 => s.norm_h2,
        Tracked::A2 => s.norm_a2,
    };
    let mut worst: f64 = 0.0;
    for i in 1..states.len() - 1 {
        let s = &states[i];
        let d = (q(&states[i + 1]) - q(&states[i - 1])) / (2.0 * dt);
        let rhs = match which {
            Tracked::H2 => 2.0 * s.r2 + 2.0 * n * k * s.norm_h2,
            Tracked::A2 => {
                2.0 * r1_factor * s.norm_a2 * s.norm_a2 + 4.0 * k * s.norm_h2 - 2.0 * n * k * s.norm_a2
            }
        };
        let diff = (d - rhs).abs();
        if diff > 0.0 {
            worst = worst.max(diff / rhs.abs().max(d.abs()));
        }
    }
    Ok(worst)
}
