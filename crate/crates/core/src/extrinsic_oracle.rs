//! Finite-difference second fundamental form of rotationally symmetric
//! hypersurfaces in the round sphere, independent of the closed forms in
//! [`crate::model_geometry`].
//!
//! Sphere class: `F(v, ζ) = r (cos u, sin u cos v, sin u sin v ζ)`, `v ∈ [0, π]`.
//! Torus class: `F(α, ζ) = r (cos ψ cos α, cos ψ sin α, sin ψ ζ)`, `α ∈ [0, 2π)`.
//! Here `ζ ∈ S^{n-1}` and `r = 1/sqrt(kbar)`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{param, Error, Result};
use crate::model_geometry::{CurvatureSummary, R1_FACTOR};

pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    SphereClass,
    TorusClass,
}

/// A profile sampled on a uniform grid, evaluated between grid points
/// through its trigonometric interpolant (cosine series for the sphere
/// class, full Fourier series for the periodic torus class).
#[derive(Debug, Clone)]
pub struct AxisymmetricImmersion {
    pub family: Family,
    pub n: u32,
    pub kbar: f64,
    pub profile: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl AxisymmetricImmersion {
    pub fn sphere_class(n: u32, kbar: f64, profile: Vec<f64>) -> Result<Self> {
        Self::checked(n, kbar, &profile, 3, PI)?;
        let m = profile.len() - 1;
        let weight = |j: usize| if j == 0 || j == m { 0.5 } else { 1.0 };
        let cos = (0..=m)
            .map(|k| {
                2.0 / m as f64
                    * (0..=m)
                        .map(|j| weight(j) * profile[j] * (PI * (k * j) as f64 / m as f64).cos())
                        .sum::<f64>()
                    * weight(k)
            })
            .collect();
        Ok(Self { family: Family::SphereClass, n, kbar, profile, cos, sin: Vec::new() })
    }

    pub fn torus_class(n: u32, kbar: f64, profile: Vec<f64>) -> Result<Self> {
        Self::checked(n, kbar, &profile, 1, FRAC_PI_2)?;
        let len = profile.len();
        let top = len / 2;
        let mut cos = Vec::with_capacity(top + 1);
        let mut sin = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let (mut a, mut b) = (0.0, 0.0);
            for (j, &p) in profile.iter().enumerate() {
                let (s, c) = (2.0 * PI * (k * j) as f64 / len as f64).sin_cos();
                a += p * c;
                b += p * s;
            }
            let w = if k == 0 || 2 * k == len { 1.0 } else { 2.0 };
            cos.push(w * a / len as f64);
            sin.push(if 2 * k == len { 0.0 } else { w * b / len as f64 });
        }
        Ok(Self { family: Family::TorusClass, n, kbar, profile, cos, sin })
    }

    /// Samples `f` at `points` grid nodes.
    pub fn sphere_class_fn(n: u32, kbar: f64, points: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if points < 3 {
            return Err(param("a sphere-class grid needs at least 3 points"));
        }
        let h = PI / (points - 1) as f64;
        Self::sphere_class(n, kbar, (0..points).map(|i| f(i as f64 * h)).collect())
    }

    pub fn torus_class_fn(n: u32, kbar: f64, points: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if points < 1 {
            return Err(param("a torus-class grid needs at least 1 point"));
        }
        let h = 2.0 * PI / points as f64;
        Self::torus_class(n, kbar, (0..points).map(|i| f(i as f64 * h)).collect())
    }

    fn checked(n: u32, kbar: f64, profile: &[f64], min_len: usize, top: f64) -> Result<()> {
        if n < 2 {
            return Err(Error::Dimension { what: "axisymmetric immersion", n });
        }
        if !(kbar > 0.0 && kbar.is_finite()) {
            return Err(param(format!("kbar must be positive, got {kbar}")));
        }
        if profile.len() < min_len {
            return Err(param(format!("profile needs at least {min_len} samples")));
        }
        if let Some(bad) = profile.iter().find(|&&p| !(p > 0.0 && p < top)) {
            return Err(param(format!("profile value {bad} outside (0, {top})")));
        }
        Ok(())
    }

    /// Parameter of grid node `i`.
    pub fn node(&self, i: usize) -> f64 {
        match self.family {
            Family::SphereClass => PI * i as f64 / (self.profile.len() - 1) as f64,
            Family::TorusClass => 2.0 * PI * i as f64 / self.profile.len() as f64,
        }
    }

    pub fn spacing(&self) -> f64 {
        self.node(1) - self.node(0)
    }

    /// Interpolated profile value.
    pub fn profile_at(&self, s: f64) -> f64 {
        let c: f64 = self.cos.iter().enumerate().map(|(k, a)| a * (k as f64 * s).cos()).sum();
        let d: f64 = self.sin.iter().enumerate().map(|(k, b)| b * (k as f64 * s).sin()).sum();
        c + d
    }

    fn radius(&self) -> f64 {
        1.0 / self.kbar.sqrt()
    }

    /// Coordinates in `span{e0, e1, (0, 0, ζ)}` of the point and of the
    /// derivative with respect to the profile value, plus the orbit radius.
    fn planar(&self, s: f64) -> ([f64; 3], [f64; 3], f64) {
        let r = self.radius();
        let p = self.profile_at(s);
        let (sp, cp) = p.sin_cos();
        let (ss, cs) = s.sin_cos();
        match self.family {
            Family::SphereClass => (
                [r * cp, r * sp * cs, r * sp * ss],
                [-r * sp, r * cp * cs, r * cp * ss],
                r * sp * ss,
            ),
            Family::TorusClass => (
                [r * cp * cs, r * cp * ss, r * sp],
                [-r * sp * cs, -r * sp * ss, r * cp],
                r * sp,
            ),
        }
    }
}

fn check_zeta(n: u32, zeta: &[f64]) -> Result<()> {
    if zeta.len() != n as usize {
        return Err(param(format!("zeta must have {n} components, got {}", zeta.len())));
    }
    let norm: f64 = zeta.iter().map(|z| z * z).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(param(format!("zeta must be a unit vector, norm {norm}")));
    }
    Ok(())
}

fn lift(w: [f64; 3], zeta: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(zeta.len() + 2);
    out.push(w[0]);
    out.push(w[1]);
    out.extend(zeta.iter().map(|z| w[2] * z));
    out
}

/// Point of the ambient `R^{n+2}`.
pub fn embed(imm: &AxisymmetricImmersion, s: f64, zeta: &[f64]) -> Result<Vec<f64>> {
    check_zeta(imm.n, zeta)?;
    let ok = match imm.family {
        Family::SphereClass => (0.0..=PI).contains(&s),
        Family::TorusClass => (0.0..2.0 * PI).contains(&s),
    };
    if !ok {
        return Err(param(format!("coordinate {s} outside the parameter domain")));
    }
    Ok(lift(imm.planar(s).0, zeta))
}

/// Orthonormal frame at a point: profile tangent, orbit tangents, normal.
#[derive(Debug, Clone)]
pub struct OracleFrame {
    pub point: Vec<f64>,
    pub profile_tangent: Vec<f64>,
    pub orbit_tangents: Vec<Vec<f64>>,
    pub normal: Vec<f64>,
}

impl OracleFrame {
    /// Largest deviation of the Gram matrix of `{tangents, normal, point/|point|}` from the identity.
    pub fn gram_defect(&self) -> f64 {
        let pn: f64 = self.point.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut vs: Vec<Vec<f64>> = vec![self.point.iter().map(|x| x / pn).collect(), self.profile_tangent.clone()];
        vs.extend(self.orbit_tangents.iter().cloned());
        vs.push(self.normal.clone());
        let mut worst = 0.0f64;
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

/// Unit vectors completing `zeta` to an orthonormal basis of `R^n`.
fn complement(zeta: &[f64]) -> Vec<Vec<f64>> {
    let n = zeta.len();
    let mut basis: Vec<Vec<f64>> = vec![zeta.to_vec()];
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis.split_off(1)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Local {
    fs: [f64; 3],
    fss: [f64; 3],
    nu: [f64; 3],
    orbit_radius: f64,
    point: [f64; 3],
}

fn local(imm: &AxisymmetricImmersion, s: f64, h: f64) -> Result<Local> {
    if !(h > 0.0) {
        return Err(param(format!("step must be positive, got {h}")));
    }
    let (p0, dp, b) = imm.planar(s);
    let (pp, _, _) = imm.planar(s + h);
    let (pm, _, _) = imm.planar(s - h);
    let mut fs = [0.0; 3];
    let mut fss = [0.0; 3];
    for k in 0..3 {
        fs[k] = (pp[k] - pm[k]) / (2.0 * h);
        fss[k] = (pp[k] - 2.0 * p0[k] + pm[k]) / (h * h);
    }
    let r = imm.radius();
    if dot3(fs, fs).sqrt() < 1e-12 * r || b.abs() < 1e-12 * r {
        return Err(Error::DegenerateFrame(0));
    }
    let mut nu = cross(p0, fs);
    let norm = dot3(nu, nu).sqrt();
    nu.iter_mut().for_each(|x| *x /= norm);
    // inward for the sphere class, towards growing ψ for the torus class
    let sign = match imm.family {
        Family::SphereClass => -1.0,
        Family::TorusClass => 1.0,
    };
    if sign * dot3(nu, dp) < 0.0 {
        nu.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(Local { fs, fss, nu, orbit_radius: b, point: p0 })
}

pub fn frame_at(imm: &AxisymmetricImmersion, s: f64, h: f64, zeta: &[f64]) -> Result<OracleFrame> {
    check_zeta(imm.n, zeta)?;
    let l = local(imm, s, h)?;
    // the difference quotient leaves the sphere at O(h^2); project it back
    let along = dot3(l.fs, l.point) / dot3(l.point, l.point);
    let fs = [0, 1, 2].map(|k| l.fs[k] - along * l.point[k]);
    let fsn = dot3(fs, fs).sqrt();
    let t = fs.map(|v| v / fsn);
    let orbit = complement(zeta)
        .into_iter()
        .map(|e| {
            let mut v = vec![0.0, 0.0];
            v.extend(e);
            v
        })
        .collect();
    Ok(OracleFrame { point: lift(l.point, zeta), profile_tangent: lift(t, zeta), orbit_tangents: orbit, normal: lift(l.nu, zeta) })
}

/// Principal curvatures `(profile, orbit)` at parameter `s`.
///
/// The orbit directions are great circles `ζ cos θ + e sin θ`, along which
/// `∂²F/∂θ² = -b (0, 0, ζ)` with `b` the orbit radius.
pub fn principal_at(imm: &AxisymmetricImmersion, s: f64, h: f64) -> Result<(f64, f64)> {
    let l = local(imm, s, h)?;
    let kp = dot3(l.fss, l.nu) / dot3(l.fs, l.fs);
    let ko = -l.orbit_radius * l.nu[2] / (l.orbit_radius * l.orbit_radius);
    Ok((kp, ko))
}

/// Summary at an arbitrary parameter. `zeta` only selects the orbit point and
/// does not change the result.
pub fn oracle_curvature_at(imm: &AxisymmetricImmersion, s: f64, h: f64, zeta: &[f64]) -> Result<CurvatureSummary> {
    check_zeta(imm.n, zeta)?;
    let (kp, ko) = principal_at(imm, s, h)?;
    let principal = if imm.n == 1 { vec![(kp, 1)] } else { vec![(kp, 1), (ko, imm.n - 1)] };
    Ok(CurvatureSummary::from_principal(principal, R1_FACTOR))
}

/// Summary at grid node `index`. Sphere-class nodes closer than ten grid
/// spacings to a pole are rejected, since the orbits degenerate there.
pub fn oracle_curvature(imm: &AxisymmetricImmersion, index: usize, h: f64) -> Result<CurvatureSummary> {
    if index >= imm.profile.len() {
        return Err(param(format!("grid index {index} out of range")));
    }
    let s = imm.node(index);
    if imm.family == Family::SphereClass {
        let margin = 10.0 * imm.spacing();
        if s < margin || s > PI - margin {
            return Err(Error::DegenerateFrame(index));
        }
    }
    let mut zeta = vec![0.0; imm.n as usize];
    zeta[0] = 1.0;
    oracle_curvature_at(imm, s, h, &zeta).map_err(|e| match e {
        Error::DegenerateFrame(_) => Error::DegenerateFrame(index),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolant_reproduces_nodes() {
        let imm = AxisymmetricImmersion::sphere_class_fn(4, 1.0, 33, |v| 1.0 + 0.1 * v.cos() + 0.05 * (3.0 * v).cos())
            .unwrap();
        for i in 0..33 {
            assert!((imm.profile_at(imm.node(i)) - imm.profile[i]).abs() < 1e-13);
        }
        let tor = AxisymmetricImmersion::torus_class_fn(3, 1.0, 16, |a| 0.6 + 0.1 * a.sin() + 0.02 * (2.0 * a).cos())
            .unwrap();
        for i in 0..16 {
            assert!((tor.profile_at(tor.node(i)) - tor.profile[i]).abs() < 1e-13);
        }
        assert!((tor.profile_at(0.3) - (0.6 + 0.1 * 0.3f64.sin() + 0.02 * 0.6f64.cos())).abs() < 1e-13);
    }

    #[test]
    fn equator_point() {
        let imm = AxisymmetricImmersion::sphere_class(3, 1.0, vec![FRAC_PI_2; 9]).unwrap();
        let p = embed(&imm, FRAC_PI_2, &[1.0, 0.0, 0.0]).unwrap();
        let want = [0.0, 0.0, 1.0, 0.0, 0.0];
        assert!(p.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn torus_point() {
        let imm = AxisymmetricImmersion::torus_class(2, 1.0, vec![PI / 4.0; 4]).unwrap();
        let p = embed(&imm, 0.0, &[1.0, 0.0]).unwrap();
        let h = 0.5f64.sqrt();
        let want = [h, 0.0, h, 0.0];
        assert!(p.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(AxisymmetricImmersion::sphere_class(3, 1.0, vec![1.0, 3.5, 1.0]).is_err());
        assert!(AxisymmetricImmersion::torus_class(3, 1.0, vec![1.7]).is_err());
        assert!(AxisymmetricImmersion::sphere_class(3, -1.0, vec![1.0; 5]).is_err());
        let imm = AxisymmetricImmersion::sphere_class(3, 1.0, vec![1.0; 65]).unwrap();
        assert!(embed(&imm, 4.0, &[1.0, 0.0, 0.0]).is_err());
        assert!(embed(&imm, 1.0, &[1.0, 1.0, 0.0]).is_err());
        assert!(matches!(oracle_curvature(&imm, 1, DEFAULT_STEP), Err(Error::DegenerateFrame(1))));
        assert!(oracle_curvature(&imm, 99, DEFAULT_STEP).is_err());
    }
}
