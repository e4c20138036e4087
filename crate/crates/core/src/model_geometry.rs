//! Closed-form extrinsic invariants of geodesic spheres, Clifford tori and equators.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{param, Error, Result};
use crate::thresholds::{omega, SphereContext, ThresholdProfile};

/// Coefficient of the quartic term in the reaction quantity `R1`. The flow
/// consistency check in `flow_sim` accepts any value, so the alternative can
/// be shown to fail.
pub const R1_FACTOR: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ModelSubmanifold {
    GeodesicSphere { n: u32, rho: f64 },
    CliffordTorus { n: u32, psi: f64 },
    Equator { n: u32 },
}

impl ModelSubmanifold {
    pub fn n(&self) -> u32 {
        match *self {
            ModelSubmanifold::GeodesicSphere { n, .. }
            | ModelSubmanifold::CliffordTorus { n, .. }
            | ModelSubmanifold::Equator { n } => n,
        }
    }
}

/// Pointwise invariants of a hypersurface. `p2` and `norm_rm_perp2` vanish in
/// codimension one and are kept for the general formulas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureSummary {
    pub principal: Vec<(f64, u32)>,
    pub h: f64,
    pub norm_h2: f64,
    pub norm_a2: f64,
    pub norm_aring2: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub p2: f64,
    pub norm_rm_perp2: f64,
}

impl CurvatureSummary {
    /// Aggregates principal curvatures of a hypersurface, with `R1 = r1_factor |A|^4`.
    pub fn from_principal(principal: Vec<(f64, u32)>, r1_factor: f64) -> Self {
        let sum = |k: i32| principal.iter().map(|&(v, m)| m as f64 * v.powi(k)).sum::<f64>();
        let h = sum(1);
        let a2 = sum(2);
        let dim: u32 = principal.iter().map(|p| p.1).sum();
        let h2 = h * h;
        let mean = h / dim.max(1) as f64;
        // exact zero at umbilic points, unlike |A|^2 - |H|^2/n
        let aring2 = if principal.len() < 2 {
            0.0
        } else {
            principal.iter().map(|&(v, m)| m as f64 * (v - mean).powi(2)).sum()
        };
        Self {
            r1: r1_factor * a2 * a2,
            r2: h2 * a2,
            r3: h * sum(3),
            principal,
            h,
            norm_h2: h2,
            norm_a2: a2,
            norm_aring2: aring2,
            p2: 0.0,
            norm_rm_perp2: 0.0,
        }
    }

    pub fn dimension(&self) -> u32 {
        self.principal.iter().map(|p| p.1).sum()
    }
}

fn check_model(model: &ModelSubmanifold, ctx: &SphereContext) -> Result<()> {
    if model.n() != ctx.n {
        return Err(param(format!("model dimension {} differs from context n = {}", model.n(), ctx.n)));
    }
    match *model {
        ModelSubmanifold::GeodesicSphere { rho, .. } => {
            let top = PI / ctx.kbar.sqrt();
            if !(rho > 0.0 && rho < top) {
                return Err(param(format!("geodesic radius must lie in (0, {top}), got {rho}")));
            }
        }
        ModelSubmanifold::CliffordTorus { psi, .. } => {
            if !(psi > 0.0 && psi < FRAC_PI_2) {
                return Err(param(format!("torus angle must lie in (0, pi/2), got {psi}")));
            }
        }
        ModelSubmanifold::Equator { .. } => {}
    }
    Ok(())
}

/// Principal curvatures with the inward normal, so small spheres have `H > 0`.
pub fn principal_curvatures(model: &ModelSubmanifold, ctx: &SphereContext) -> Result<Vec<(f64, u32)>> {
    check_model(model, ctx)?;
    let k = ctx.kbar.sqrt();
    Ok(match *model {
        ModelSubmanifold::GeodesicSphere { n, rho } => vec![(k / (k * rho).tan(), n)],
        ModelSubmanifold::CliffordTorus { n, psi } => {
            if n == 1 {
                vec![(k * psi.tan(), 1)]
            } else {
                vec![(k * psi.tan(), 1), (-k / psi.tan(), n - 1)]
            }
        }
        ModelSubmanifold::Equator { n } => vec![(0.0, n)],
    })
}

pub fn curvature_of(model: &ModelSubmanifold, ctx: &SphereContext) -> Result<CurvatureSummary> {
    Ok(CurvatureSummary::from_principal(principal_curvatures(model, ctx)?, R1_FACTOR))
}

/// Both sides of the identity
/// `|A|^4 - (|H|^2/(n-1) + 2)^2 - (2n-4) = ((n-1)^2 - 1)/(n-1)^2 * tan^4(psi)`
/// on the Clifford torus in the unit sphere. The left side cancels badly for
/// small `psi` and is accumulated in double-double.
pub fn sharpness_gap(n: u32, psi: f64, ctx: &SphereContext) -> Result<(f64, f64)> {
    if ctx.kbar != 1.0 {
        return Err(param("the sharpness identity is stated for kbar = 1"));
    }
    if n < 2 {
        return Err(Error::Dimension { what: "sharpness_gap", n });
    }
    check_model(&ModelSubmanifold::CliffordTorus { n, psi }, ctx)?;
    let m = (n - 1) as f64;
    let t = TwoFloat::from(psi.tan());
    // the library quotient is only good to binary64 here, so refine once
    let c0 = TwoFloat::from(1.0 / psi.tan());
    let c = c0 + c0 * (TwoFloat::from(1.0) - t * c0);
    let a2 = t * t + c * c * m;
    let h = t - c * m;
    let base = h * h / m + 2.0;
    let lhs = a2 * a2 - base * base - (2.0 * n as f64 - 4.0);
    let (s, r) = psi.sin_cos();
    let rhs = (m * m - 1.0) / (m * m) * (s / r).powi(4);
    Ok((f64::from(lhs), rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Classification {
    StrictlyInside,
    Boundary(f64),
    Outside,
}

/// Compares `|A|^2` with the threshold at `|H|^2`, with tolerance `1e-12 (1 + threshold)`.
pub fn classify(
    summary: &CurvatureSummary,
    profile: ThresholdProfile,
    ctx: &SphereContext,
) -> Result<Classification> {
    let thr = profile.value(ctx, summary.norm_h2)?;
    let tol = 1e-12 * (1.0 + thr.abs());
    Ok(if (summary.norm_a2 - thr).abs() <= tol {
        Classification::Boundary(tol)
    } else if summary.norm_a2 < thr {
        Classification::StrictlyInside
    } else {
        Classification::Outside
    })
}

/// `U = |Å|^2 - ring(|H|^2) + eps * omega` and `f_sigma = |Å|^2 / ring^(1 - sigma)`.
pub fn pinching_margin_u(
    summary: &CurvatureSummary,
    profile: ThresholdProfile,
    ctx: &SphereContext,
    eps: f64,
    sigma: f64,
) -> Result<(f64, f64)> {
    let nf = ctx.n as f64;
    if !(eps >= 0.0 && eps < 1.0 / (nf * nf)) {
        return Err(param(format!("eps must lie in [0, 1/n^2), got {eps}")));
    }
    if !(sigma >= 0.0 && sigma < 1.0) {
        return Err(param(format!("sigma must lie in [0, 1), got {sigma}")));
    }
    let x = summary.norm_h2;
    let ring = profile.ring(ctx, x)?;
    let u = summary.norm_aring2 - ring + eps * omega(ctx, x)?;
    Ok((u, summary.norm_aring2 / ring.powf(1.0 - sigma)))
}

pub fn ricci_lower_bound(summary: &CurvatureSummary, ctx: &SphereContext) -> f64 {
    let n = ctx.n as f64;
    let h = summary.norm_h2.sqrt();
    let ar = summary.norm_aring2;
    (n - 1.0) / n
        * (n * ctx.kbar + summary.norm_h2 / n - ar - (n - 2.0) / (n * (n - 1.0)).sqrt() * h * ar.sqrt())
}

/// Slack (left minus right) of the reaction-term estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateSlacks {
    /// `n K|Å|^2 - R1 + R3 >= (n/2)|Å|^2 (eps |A|^2 - sqrt(2n) K)`
    pub reaction_sqrt_profile: f64,
    /// Same with `4 K` in place of `sqrt(2n) K`.
    pub reaction_blend_profile: f64,
    /// `R1 - R2/n <= |Å|^4 + |Å|^2|H|^2/n + 2 P2|Å|^2 - 3/2 P2^2 - P2|H|^2/n`
    pub r1_upper: f64,
    /// `R3 - R1 >= |Å|^2|H|^2/(2(n-1)) - n/2 (|Å|^2 - P2)^2 - max(4, (n+2)/2)(|Å|^2 - P2)P2 - 3/2 P2^2`
    pub r3_lower: f64,
}

pub fn estimate_checks(summary: &CurvatureSummary, ctx: &SphereContext, eps: f64) -> EstimateSlacks {
    let n = ctx.n as f64;
    let k = ctx.kbar;
    let (ar, h2, a2, p2) = (summary.norm_aring2, summary.norm_h2, summary.norm_a2, summary.p2);
    let core = n * k * ar - summary.r1 + summary.r3;
    let q = ar - p2;
    EstimateSlacks {
        reaction_sqrt_profile: core - 0.5 * n * ar * (eps * a2 - (2.0 * n).sqrt() * k),
        reaction_blend_profile: core - 0.5 * n * ar * (eps * a2 - 4.0 * k),
        r1_upper: ar * ar + ar * h2 / n + 2.0 * p2 * ar - 1.5 * p2 * p2 - p2 * h2 / n
            - (summary.r1 - summary.r2 / n),
        r3_lower: summary.r3 - summary.r1
            - (ar * h2 / (2.0 * (n - 1.0)) - 0.5 * n * q * q - 4f64.max(0.5 * (n + 2.0)) * q * p2 - 1.5 * p2 * p2),
    }
}
