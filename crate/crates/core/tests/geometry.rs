use std::f64::consts::PI;

use pinchflow::extrinsic_oracle::{oracle_curvature_at, AxisymmetricImmersion, DEFAULT_STEP};
use pinchflow::model_geometry::*;
use pinchflow::{SphereContext, ThresholdProfile};

fn unit(n: u32) -> SphereContext {
    SphereContext::unit(n).unwrap()
}

fn e1(n: u32) -> Vec<f64> {
    let mut z = vec![0.0; n as usize];
    z[0] = 1.0;
    z
}

fn torus_oracle(n: u32, psi: f64, kbar: f64) -> CurvatureSummary {
    let imm = AxisymmetricImmersion::torus_class(n, kbar, vec![psi; 8]).unwrap();
    oracle_curvature_at(&imm, 0.7, DEFAULT_STEP, &e1(n)).unwrap()
}

#[test]
fn minimal_torus_in_four_dimensions() {
    let psi = PI / 3.0;
    let s = curvature_of(&ModelSubmanifold::CliffordTorus { n: 4, psi }, &unit(4)).unwrap();
    assert!((s.principal[0].0 - 3f64.sqrt()).abs() < 1e-14);
    assert!((s.principal[1].0 + 1.0 / 3f64.sqrt()).abs() < 1e-14 && s.principal[1].1 == 3);
    assert!((s.norm_a2 - 4.0).abs() < 1e-13 && s.h.abs() < 1e-14);
    let o = torus_oracle(4, psi, 1.0);
    assert!((o.norm_a2 - 4.0).abs() < 1e-6 && o.h.abs() < 1e-6);
}

#[test]
fn sphere_of_radius_quarter_turn_against_oracle() {
    let imm = AxisymmetricImmersion::sphere_class(7, 1.0, vec![PI / 4.0; 65]).unwrap();
    let o = oracle_curvature_at(&imm, 1.1, DEFAULT_STEP, &e1(7)).unwrap();
    assert!((o.norm_a2 - 7.0).abs() < 1e-6 && (o.h - 7.0).abs() < 1e-6 && o.norm_aring2 < 1e-6);
}

#[test]
fn minimal_tori_for_all_dimensions() {
    for n in 2..=30u32 {
        let psi = ((n - 1) as f64).sqrt().atan();
        let s = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &unit(n)).unwrap();
        assert!(s.h.abs() < 1e-12 * n as f64, "n = {n}");
        assert!((s.norm_a2 - n as f64).abs() < 1e-12 * n as f64, "n = {n}");
    }
}

#[test]
fn sharpness_identity_example() {
    let (l, r) = sharpness_gap(4, PI / 4.0, &unit(4)).unwrap();
    assert!((l - 8.0 / 9.0).abs() < 1e-13 && (r - 8.0 / 9.0).abs() < 1e-13);
}

#[test]
fn sharpness_identity_on_grid() {
    for n in [3u32, 7, 15, 30] {
        for j in 1..50 {
            let psi = 0.5 * PI * j as f64 / 50.0;
            let (l, r) = sharpness_gap(n, psi, &unit(n)).unwrap();
            assert!(l > 0.0 && ((l - r) / r).abs() < 1e-10, "n={n} psi={psi}: {l} {r}");
        }
    }
}

#[test]
fn tori_are_outside_the_sqrt_region() {
    for n in 3..=12u32 {
        // below psi ~ 0.04 the gap drops under the 1e-12 classification tolerance
        for j in 0..40 {
            let psi = PI / 20.0 + 0.4 * PI * j as f64 / 39.0;
            let s = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &unit(n)).unwrap();
            assert_eq!(classify(&s, ThresholdProfile::SqrtA, &unit(n)).unwrap(), Classification::Outside);
        }
    }
}

#[test]
fn sphere_inside_sqrt_region() {
    let ctx = unit(7);
    let s = curvature_of(&ModelSubmanifold::GeodesicSphere { n: 7, rho: PI / 4.0 }, &ctx).unwrap();
    assert_eq!(classify(&s, ThresholdProfile::SqrtA, &ctx).unwrap(), Classification::StrictlyInside);
    // a(49) = sqrt((49/6 + 2)^2 + 10)
    let a49 = ThresholdProfile::SqrtA.value(&ctx, 49.0).unwrap();
    assert!((a49 - ((49.0f64 / 6.0 + 2.0).powi(2) + 10.0).sqrt()).abs() < 1e-13);
}

#[test]
fn margins() {
    let ctx = unit(7);
    let eq = curvature_of(&ModelSubmanifold::Equator { n: 7 }, &ctx).unwrap();
    for p in [ThresholdProfile::SqrtA, ThresholdProfile::Alpha, ThresholdProfile::Blend(Default::default())] {
        let (u, f) = pinching_margin_u(&eq, p, &ctx, 0.0, 0.2).unwrap();
        assert!((u + p.ring(&ctx, 0.0).unwrap()).abs() < 1e-14 && f == 0.0);
    }
    let sph = curvature_of(&ModelSubmanifold::GeodesicSphere { n: 7, rho: 0.3 }, &ctx).unwrap();
    for sigma in [0.0, 0.4, 0.9] {
        assert_eq!(pinching_margin_u(&sph, ThresholdProfile::SqrtA, &ctx, 0.01, sigma).unwrap().1, 0.0);
    }
    let tor = curvature_of(&ModelSubmanifold::CliffordTorus { n: 7, psi: PI / 4.0 }, &ctx).unwrap();
    assert!(pinching_margin_u(&tor, ThresholdProfile::SqrtA, &ctx, 0.0, 0.0).unwrap().0 > 0.0);
}

#[test]
fn ricci_bound_examples() {
    let eq = curvature_of(&ModelSubmanifold::Equator { n: 7 }, &unit(7)).unwrap();
    assert!((ricci_lower_bound(&eq, &unit(7)) - 6.0).abs() < 1e-14);
    let s = curvature_of(&ModelSubmanifold::GeodesicSphere { n: 7, rho: PI / 4.0 }, &unit(7)).unwrap();
    assert!((ricci_lower_bound(&s, &unit(7)) - 12.0).abs() < 1e-12);
    let t = curvature_of(&ModelSubmanifold::CliffordTorus { n: 4, psi: PI / 4.0 }, &unit(4)).unwrap();
    assert!(ricci_lower_bound(&t, &unit(4)).abs() < 1e-12);
}

/// A round sphere of radius sin(rho) has Ricci curvature (n-1)/sin^2(rho).
#[test]
fn ricci_bound_is_sharp_on_umbilic_spheres() {
    for n in [3u32, 5, 9] {
        for kbar in [0.5, 1.0, 3.0] {
            let ctx = SphereContext::new(n, kbar).unwrap();
            for rho in [0.2, 0.9, 1.5] {
                let rho = rho / kbar.sqrt();
                let s = curvature_of(&ModelSubmanifold::GeodesicSphere { n, rho }, &ctx).unwrap();
                let intrinsic = (n - 1) as f64 * kbar / (kbar.sqrt() * rho).sin().powi(2);
                assert!((ricci_lower_bound(&s, &ctx) - intrinsic).abs() < 1e-11 * intrinsic);
            }
        }
    }
}

#[test]
fn estimate_slacks_on_models() {
    let ctx = unit(7);
    let eq = curvature_of(&ModelSubmanifold::Equator { n: 7 }, &ctx).unwrap();
    let e = estimate_checks(&eq, &ctx, 0.001);
    for v in [e.reaction_sqrt_profile, e.reaction_blend_profile, e.r1_upper, e.r3_lower] {
        assert!(v >= 0.0);
    }
    let s = curvature_of(&ModelSubmanifold::GeodesicSphere { n: 7, rho: PI / 4.0 }, &ctx).unwrap();
    let e = estimate_checks(&s, &ctx, 0.001);
    assert!(e.reaction_sqrt_profile.abs() < 1e-10);
    // in codimension one the R1 bound is an identity
    for psi in [0.3, 0.8, 1.2] {
        let t = curvature_of(&ModelSubmanifold::CliffordTorus { n: 7, psi }, &ctx).unwrap();
        let e = estimate_checks(&t, &ctx, 0.0);
        assert!(e.r1_upper.abs() < 1e-9 * t.norm_a2.powi(2));
        assert!(e.r3_lower >= -1e-9 * t.norm_a2.powi(2));
    }
}

#[test]
fn homogeneity_in_kbar() {
    for n in [2u32, 5] {
        for psi in [0.3, 1.1] {
            let a = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &unit(n)).unwrap();
            let b = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &SphereContext::new(n, 4.0).unwrap())
                .unwrap();
            assert!((b.norm_a2 - 4.0 * a.norm_a2).abs() < 1e-12 * b.norm_a2);
            let o = torus_oracle(n, psi, 4.0);
            assert!((o.norm_a2 - b.norm_a2).abs() < 1e-5 * b.norm_a2);
        }
    }
}
