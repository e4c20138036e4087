//! Closed-form pinching thresholds `|A|^2 <= f(|H|^2)` in a round sphere of
//! sectional curvature `kbar`, their traceless forms `f(x) - x/n`, and
//! derivatives.
//!
//! Every profile is homogeneous of degree one in `(x, kbar)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Dimension of the submanifold and curvature of the ambient sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereContext {
    pub n: u32,
    pub kbar: f64,
}

impl SphereContext {
    pub fn new(n: u32, kbar: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension { what: "a submanifold", n });
        }
        if !(kbar > 0.0 && kbar.is_finite()) {
            return Err(param(format!("kbar must be positive and finite, got {kbar}")));
        }
        Ok(Self { n, kbar })
    }

    pub fn unit(n: u32) -> Result<Self> {
        Self::new(n, 1.0)
    }

    pub(crate) fn nf(&self) -> f64 {
        self.n as f64
    }

    pub(crate) fn m(&self) -> f64 {
        self.n as f64 - 1.0
    }
}

/// Which definition of the blending coefficient of [`ThresholdProfile::Blend`] is used.
///
/// `Restricted` is the closed form `(sqrt(12n+9) - 7) / (2(n-2))` offered only for
/// n = 4, 5, 6 as a profile. `Piecewise` uses the same closed form up to n = 12
/// and `2(2n-5)/(n^2-2)` from n = 13 on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaConvention {
    Restricted,
    #[default]
    Piecewise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdProfile {
    LinearHuisken,
    LinearBaker,
    Alpha,
    Gamma,
    SqrtA,
    Blend(DeltaConvention),
}

impl ThresholdProfile {
    pub const ALL: [ThresholdProfile; 7] = [
        ThresholdProfile::LinearHuisken,
        ThresholdProfile::LinearBaker,
        ThresholdProfile::Alpha,
        ThresholdProfile::Gamma,
        ThresholdProfile::SqrtA,
        ThresholdProfile::Blend(DeltaConvention::Restricted),
        ThresholdProfile::Blend(DeltaConvention::Piecewise),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ThresholdProfile::LinearHuisken => "huisken",
            ThresholdProfile::LinearBaker => "baker",
            ThresholdProfile::Alpha => "alpha",
            ThresholdProfile::Gamma => "gamma",
            ThresholdProfile::SqrtA => "sqrt-a",
            ThresholdProfile::Blend(DeltaConvention::Piecewise) => "b",
            ThresholdProfile::Blend(DeltaConvention::Restricted) => "b-restricted",
        }
    }

    /// Rejects dimensions outside the range where the profile is defined.
    pub fn check(&self, ctx: &SphereContext) -> Result<()> {
        let n = ctx.n;
        let ok = match self {
            ThresholdProfile::Gamma => n >= 6,
            ThresholdProfile::Blend(DeltaConvention::Restricted) => (4..=6).contains(&n),
            ThresholdProfile::Blend(DeltaConvention::Piecewise) => n >= 4,
            _ => n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension { what: self.name(), n })
        }
    }

    pub fn value(&self, ctx: &SphereContext, x: f64) -> Result<f64> {
        self.check(ctx)?;
        check_x(x)?;
        let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
        Ok(match self {
            ThresholdProfile::LinearHuisken => {
                if ctx.n == 2 {
                    0.75 * x + 4.0 / 3.0 * k
                } else {
                    x / m + 2.0 * k
                }
            }
            ThresholdProfile::LinearBaker => {
                if ctx.n <= 3 {
                    4.0 * x / (3.0 * n) + 2.0 * m * k / 3.0
                } else {
                    x / m + 2.0 * k
                }
            }
            ThresholdProfile::Alpha => alpha(ctx, x),
            ThresholdProfile::Gamma => {
                let x0 = gamma_anchor(ctx)?;
                let (a0, d1, d2) = (alpha(ctx, x0), alpha_d1(ctx, x0), alpha_d2(ctx, x0));
                let beta = a0 + d1 * (x - x0) + 0.5 * d2 * (x - x0).powi(2);
                alpha(ctx, x).min(beta)
            }
            ThresholdProfile::SqrtA => sqrt_a(ctx, x),
            ThresholdProfile::Blend(conv) => {
                let d = delta_coefficient(ctx.n, *conv)?;
                (1.0 - d) * (x / m + 2.0 * k) + d * alpha(ctx, x)
            }
        })
    }

    /// `f(x) - x/n`.
    pub fn ring(&self, ctx: &SphereContext, x: f64) -> Result<f64> {
        Ok(self.value(ctx, x)? - x / ctx.nf())
    }

    /// First and second derivative of the traceless form. Only the three
    /// curved profiles have them in closed form here.
    pub fn ring_derivatives(&self, ctx: &SphereContext, x: f64) -> Result<(f64, f64)> {
        self.check(ctx)?;
        check_x(x)?;
        let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
        match self {
            ThresholdProfile::SqrtA => {
                let a = sqrt_a(ctx, x);
                let l = x / m + 2.0 * k;
                let d1 = l / (m * a) - 1.0 / n;
                let d2 = 2.0 * (n - 2.0) * k * k / (m * m * a.powi(3));
                Ok((d1, d2))
            }
            ThresholdProfile::Alpha | ThresholdProfile::Blend(_) => {
                if x == 0.0 {
                    return Err(Error::DerivativeSingular(self.name()));
                }
                let d = match self {
                    ThresholdProfile::Blend(conv) => delta_coefficient(ctx.n, *conv)?,
                    _ => 1.0,
                };
                let d1 = (1.0 - d) / m + d * alpha_d1(ctx, x) - 1.0 / n;
                Ok((d1, d * alpha_d2(ctx, x)))
            }
            _ => Err(Error::Unsupported(format!(
                "no closed-form derivatives for profile {}",
                self.name()
            ))),
        }
    }
}

impl fmt::Display for ThresholdProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThresholdProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ThresholdProfile::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| param(format!("unknown profile `{s}`")))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(param(format!("x = |H|^2 must be finite and nonnegative, got {x}")))
    }
}

pub fn threshold_value(profile: ThresholdProfile, ctx: &SphereContext, x: f64) -> Result<f64> {
    profile.value(ctx, x)
}

pub fn ring_value(profile: ThresholdProfile, ctx: &SphereContext, x: f64) -> Result<f64> {
    profile.ring(ctx, x)
}

pub fn ring_derivatives(
    profile: ThresholdProfile,
    ctx: &SphereContext,
    x: f64,
) -> Result<(f64, f64)> {
    profile.ring_derivatives(ctx, x)
}

fn sqrt_a(ctx: &SphereContext, x: f64) -> f64 {
    let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
    let l = x / m + 2.0 * k;
    (l * l + (2.0 * n - 4.0) * k * k).sqrt()
}

fn alpha(ctx: &SphereContext, x: f64) -> f64 {
    let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
    n * k + n * x / (2.0 * m) - (n - 2.0) / (2.0 * m) * (x * x + 4.0 * m * k * x).sqrt()
}

fn alpha_d1(ctx: &SphereContext, x: f64) -> f64 {
    let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
    let r = (x * x + 4.0 * m * k * x).sqrt();
    n / (2.0 * m) - (n - 2.0) / (2.0 * m) * (x + 2.0 * m * k) / r
}

fn alpha_d2(ctx: &SphereContext, x: f64) -> f64 {
    let (n, m, k) = (ctx.nf(), ctx.m(), ctx.kbar);
    let r = (x * x + 4.0 * m * k * x).sqrt();
    2.0 * m * (n - 2.0) * k * k / r.powi(3)
}

/// Expansion point of the quadratic that caps `alpha` from below in the
/// `Gamma` profile.
pub fn gamma_anchor(ctx: &SphereContext) -> Result<f64> {
    if ctx.n < 6 {
        return Err(Error::Dimension { what: "gamma", n: ctx.n });
    }
    let (n, m) = (ctx.nf(), ctx.m());
    let s = m.sqrt();
    Ok((2.0 * n + 2.0) / (n - 4.0) * s * (s - (n - 4.0) / (2.0 * n + 2.0)).powi(2) * ctx.kbar)
}

/// Blending weight of the `b` profile.
pub fn delta_coefficient(n: u32, convention: DeltaConvention) -> Result<f64> {
    if n < 4 {
        return Err(Error::Dimension { what: "delta", n });
    }
    let nf = n as f64;
    let closed = ((12.0 * nf + 9.0).sqrt() - 7.0) / (2.0 * (nf - 2.0));
    Ok(match convention {
        DeltaConvention::Piecewise if n >= 13 => 2.0 * (2.0 * nf - 5.0) / (nf * nf - 2.0),
        _ => closed,
    })
}

/// Weight `x/(n-1) + 2 n kbar` of the pinching margin.
pub fn omega(ctx: &SphereContext, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(x / ctx.m() + 2.0 * ctx.nf() * ctx.kbar)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaChoice {
    pub sigma: f64,
    pub p_floor: f64,
}

/// Largest decay exponent allowed for a given pinching margin `eps` and
/// integrability exponent `p`, together with the smallest admissible `p`.
pub fn admissible_sigma(n: u32, eps: f64, p: f64) -> Result<SigmaChoice> {
    if n < 2 {
        return Err(Error::Dimension { what: "admissible_sigma", n });
    }
    let nf = n as f64;
    if !(eps > 0.0 && eps < 1.0 / (nf * nf)) {
        return Err(param(format!("eps must lie in (0, 1/n^2), got {eps}")));
    }
    if !(p > 1.0) || !p.is_finite() {
        return Err(param(format!("p must exceed 1, got {p}")));
    }
    let sigma = (eps * eps / (3.0 * (2.0 * nf).sqrt()))
        .min(nf * eps * eps / 60.0)
        .min(nf * eps * eps.sqrt() / (24.0 * (p - 1.0).sqrt()));
    Ok(SigmaChoice { sigma, p_floor: nf.powi(3) / (32.0 * eps) + 1.0 })
}
