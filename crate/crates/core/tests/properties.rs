use std::f64::consts::PI;

use pinchflow::extrinsic_oracle::{embed, AxisymmetricImmersion};
use pinchflow::flow_sim::{flow_geodesic_sphere, FlowConfig, Outcome};
use pinchflow::model_geometry::{classify, curvature_of, Classification, ModelSubmanifold};
use pinchflow::rigor::{interval_op, lookup, Budget, Instance, Interval, IntervalOp, REGISTRY};
use pinchflow::thresholds::{admissible_sigma, omega};
use pinchflow::{DeltaConvention, SphereContext, ThresholdProfile};
use proptest::prelude::*;

fn profiles_for(n: u32) -> Vec<ThresholdProfile> {
    let ctx = SphereContext::unit(n).unwrap();
    ThresholdProfile::ALL.into_iter().filter(|p| p.check(&ctx).is_ok()).collect()
}

fn interval() -> impl Strategy<Value = Interval> {
    (-50.0..50.0f64, 0.0..10.0f64).prop_map(|(lo, w)| Interval::new(lo, lo + w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn profiles_are_homogeneous(n in 2u32..40, x in 0.0..1e4f64, lambda in 0.05..20.0f64) {
        let one = SphereContext::unit(n).unwrap();
        let scaled = SphereContext::new(n, lambda).unwrap();
        for p in profiles_for(n) {
            let a = p.value(&scaled, x).unwrap();
            let b = lambda * p.value(&one, x / lambda).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "{p} {a} {b}");
        }
    }

    #[test]
    fn curved_profiles_exceed_the_linear_one(n in 4u32..40, x in 0.0..1e6f64) {
        let ctx = SphereContext::unit(n).unwrap();
        let lin = x / (n - 1) as f64 + 2.0;
        prop_assert!(ThresholdProfile::SqrtA.value(&ctx, x).unwrap() > lin);
        prop_assert!(ThresholdProfile::Blend(DeltaConvention::Piecewise).value(&ctx, x).unwrap() > lin);
    }

    #[test]
    fn traceless_profiles_are_positive(n in 2u32..40, x in 0.0..1e6f64) {
        let ctx = SphereContext::unit(n).unwrap();
        for p in profiles_for(n) {
            prop_assert!(p.ring(&ctx, x).unwrap() > 0.0, "{p}");
        }
        prop_assert!(omega(&ctx, x).unwrap() > ThresholdProfile::SqrtA.value(&ctx, x).unwrap());
    }

    #[test]
    fn sigma_grows_with_eps(n in 2u32..30, a in 0.01..0.99f64, b in 0.01..0.99f64, p in 1.5..5e3f64) {
        let cap = 1.0 / (n * n) as f64;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s1 = admissible_sigma(n, lo * cap, p).unwrap().sigma;
        let s2 = admissible_sigma(n, hi * cap, p).unwrap().sigma;
        prop_assert!(s1 <= s2);
    }

    #[test]
    fn interval_ops_contain_point_results(a in interval(), b in interval(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let x = a.lo + s * (a.hi - a.lo);
        let y = b.lo + t * (b.hi - b.lo);
        prop_assert!(interval_op(a, b, IntervalOp::Add).unwrap().contains(x + y));
        prop_assert!(interval_op(a, b, IntervalOp::Sub).unwrap().contains(x - y));
        prop_assert!(interval_op(a, b, IntervalOp::Mul).unwrap().contains(x * y));
        if !b.contains_zero() {
            prop_assert!(interval_op(a, b, IntervalOp::Div).unwrap().contains(x / y));
        }
        if a.lo >= 0.0 {
            prop_assert!(interval_op(a, b, IntervalOp::Sqrt).unwrap().contains(x.sqrt()));
        }
        prop_assert!(interval_op(a, b, IntervalOp::Min).unwrap().contains(x.min(y)));
        prop_assert!(a.powi(3).contains(x.powi(3)) && a.powi(2).contains(x * x));
    }

    #[test]
    fn registry_enclosures_contain_point_values(idx in 0usize..64, n in 3u32..60, lo in 0.0..500.0f64, w in 0.0..3.0f64, s in 0.0..1.0f64) {
        let e = &REGISTRY[idx % REGISTRY.len()];
        prop_assume!(e.valid_n(n));
        let inst = Instance::new(n);
        let x = lo + s * w;
        if let (Ok(enc), Ok(v)) = (e.enclose(&inst, Interval::new(lo, lo + w).unwrap()), e.eval(&inst, x)) {
            prop_assert!(enc.contains(v), "{} n={n}: {v} not in {enc:?}", e.id);
        }
    }

    #[test]
    fn curvature_invariants(n in 2u32..20, psi in 0.05..1.5f64, rho in 0.05..3.0f64, k in 0.1..10.0f64) {
        let ctx = SphereContext::new(n, k).unwrap();
        let one = SphereContext::unit(n).unwrap();
        let t = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &ctx).unwrap();
        let t1 = curvature_of(&ModelSubmanifold::CliffordTorus { n, psi }, &one).unwrap();
        prop_assert!(t.norm_aring2 >= 0.0);
        prop_assert!((t.norm_a2 - t.norm_aring2 - t.norm_h2 / n as f64).abs() <= 1e-12 * t.norm_a2);
        prop_assert!((t.norm_a2 - k * t1.norm_a2).abs() <= 1e-12 * t.norm_a2);
        let rho = rho / k.sqrt();
        let s = curvature_of(&ModelSubmanifold::GeodesicSphere { n, rho }, &ctx).unwrap();
        prop_assert_eq!(s.norm_aring2, 0.0);
        prop_assert_eq!(classify(&s, ThresholdProfile::SqrtA, &ctx).unwrap(), Classification::StrictlyInside);
    }

    #[test]
    fn embedded_points_stay_on_the_sphere(n in 2u32..8, k in 0.2..5.0f64, s in 0.0..PI, seed in prop::collection::vec(-1.0..1.0f64, 8)) {
        let z: Vec<f64> = seed.iter().take(n as usize).copied().collect();
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let z: Vec<f64> = z.iter().map(|v| v / norm).collect();
        let imm = AxisymmetricImmersion::sphere_class_fn(n, k, 33, |v| 1.0 + 0.1 * (2.0 * v).cos()).unwrap();
        let p = embed(&imm, s, &z).unwrap();
        let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((r - 1.0 / k.sqrt()).abs() <= 1e-12 / k.sqrt());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sphere_flow_extinction(n in 2u32..12, th in 0.1..1.5f64) {
        let ctx = SphereContext::unit(n).unwrap();
        let mut cfg = FlowConfig::default();
        cfg.blowup_threshold = 1e6;
        let tr = flow_geodesic_sphere(&ctx, th, &cfg).unwrap();
        prop_assert_eq!(tr.outcome, Outcome::RoundPoint);
        let exact = -th.cos().ln() / n as f64;
        prop_assert!((tr.extinction_time.unwrap() - exact).abs() < 1e-9);
        for r in &tr.records {
            prop_assert!(r.roundness >= 0.0 && r.roundness <= 1.0);
        }
        for w in tr.records.windows(2) {
            prop_assert!(w[1].t > w[0].t);
        }
    }

    #[test]
    fn proofs_are_deterministic(idx in 0usize..64, n in 3u32..30) {
        let e = &REGISTRY[idx % REGISTRY.len()];
        prop_assume!(e.valid_n(n));
        let inst = Instance::new(n);
        let a = e.prove(&inst, &Budget::default()).unwrap();
        let b = lookup(e.id).unwrap().prove(&inst, &Budget::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
