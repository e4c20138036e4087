use pinchflow::rigor::{
    self, find_extremum_fn, interval_op, lookup, verify_lemma, Body, Budget, Domain, Goal, Instance, Interval,
    IntervalOp, Mode, VerifyOptions, REGISTRY,
};
use pinchflow::{DeltaConvention, Error};

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn sample_ns(e: &rigor::LemmaExpression) -> Vec<u32> {
    [3u32, 4, 5, 7, 8, 9, 12, 13, 20, 30].into_iter().filter(|&n| e.valid_n(n)).collect()
}

#[test]
fn interval_op_examples() {
    let s = interval_op(iv(1.0, 2.0), iv(3.0, 4.0), IntervalOp::Add).unwrap();
    assert!(s.contains(4.0) && s.contains(6.0) && s.width() < 2.0 + 1e-14);
    let p = interval_op(iv(-1.0, 2.0), iv(3.0, 4.0), IntervalOp::Mul).unwrap();
    assert!(p.contains(-4.0) && p.contains(8.0) && p.width() < 12.0 + 1e-13);
    let r = interval_op(iv(4.0, 9.0), iv(0.0, 0.0), IntervalOp::Sqrt).unwrap();
    assert!(r.contains(2.0) && r.contains(3.0));
    assert!(r.lo >= 2.0 - 4.0 * f64::EPSILON && r.hi <= 3.0 + 4.0 * f64::EPSILON);
    assert_eq!(interval_op(iv(1.0, 2.0), iv(-1.0, 1.0), IntervalOp::Div), Err(Error::DivisionByZero));
    assert_eq!(interval_op(iv(-2.0, -1.0), iv(0.0, 0.0), IntervalOp::Sqrt), Err(Error::NegativeSqrt));
}

/// The cleared forms must agree with the inequalities evaluated as written.
/// The literal route cancels large terms, so the tolerance scales with `1 + x`.
#[test]
fn cleared_forms_match_literal_expressions() {
    for e in REGISTRY {
        let Body::Curve(f) = e.body else { continue };
        let Some(lit) = f.literal else { continue };
        for n in sample_ns(e) {
            for conv in [DeltaConvention::Restricted, DeltaConvention::Piecewise] {
                if conv == DeltaConvention::Restricted && n > 6 {
                    continue;
                }
                let inst = Instance { n, convention: conv };
                for x in [0.01, 0.3, 1.0, 2.5, 7.0, 20.4, 55.0, 300.0, 2e3] {
                    let a = (f.main_point)(&inst, x);
                    let b = lit(&inst, x);
                    assert!(
                        (a - b).abs() <= 1e-10 * (1.0 + x) * (1.0 + b.abs()),
                        "{} n={n} {conv:?} x={x}: {a} vs {b}",
                        e.id
                    );
                }
            }
        }
    }
}

#[test]
fn tail_forms_match_main_forms() {
    for e in REGISTRY {
        let Body::Curve(f) = e.body else { continue };
        for n in sample_ns(e) {
            let inst = Instance::new(n);
            let p = (f.tail_power)(n);
            for x in [0.7, 5.0, 40.0, 800.0, 1e4] {
                let lhs = (f.tail_point)(&inst, 1.0 / x);
                let rhs = x.powi(p) * (f.main_point)(&inst, x);
                assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1e-3), "{} n={n} x={x}: {lhs} vs {rhs}", e.id);
            }
        }
    }
}

#[test]
fn point_values_lie_in_enclosures() {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for e in REGISTRY {
        let Body::Curve(f) = e.body else { continue };
        for n in sample_ns(e) {
            let inst = Instance::new(n);
            for _ in 0..200 {
                let lo = 100.0 * next() * next();
                let hi = lo + 5.0 * next() * next();
                let x = lo + (hi - lo) * next();
                let enc = (f.main)(&inst, iv(lo, hi));
                let v = (f.main_point)(&inst, x);
                assert!(enc.contains(v), "{} n={n} x={x} in [{lo},{hi}]: {v} not in {enc:?}", e.id);
                let u = 1.0 / (1.0 + hi);
                let ue = (f.tail)(&inst, iv(0.5 * u, u));
                let uv = (f.tail_point)(&inst, 0.75 * u);
                assert!(ue.contains(uv), "{} tail n={n}", e.id);
            }
        }
    }
}

#[test]
fn custom_expressions() {
    let minus_one = |_x: Interval| Interval::point(-1.0);
    let r = rigor::prove_nonpositive_on(&minus_one, Domain::Bounded(iv(0.0, 1.0)), Goal::Strict, &Budget::default())
        .unwrap();
    assert!(r.verified);
    assert_eq!(r.cells_explored, 1);

    let shifted = |x: Interval| x - Interval::point(1.0);
    let r = rigor::prove_nonpositive_on(&shifted, Domain::Bounded(iv(0.0, 2.0)), Goal::Strict, &Budget::default())
        .unwrap();
    assert!(!r.verified);
    let b = r.counterexample_box.unwrap();
    assert!(b.lo >= 1.0 && b.hi <= 2.0 + 1e-12);
}

#[test]
fn lemma_2_3_at_n10() {
    let r = verify_lemma("L2.3", 10, &VerifyOptions::default()).unwrap();
    assert_eq!(r.items.len(), 6);
    assert!(r.verified, "{r:?}");
    for it in &r.items {
        assert!(it.counterexample.is_none());
    }
}

#[test]
fn strict_items_have_negative_bounds() {
    let r = verify_lemma("L5.2", 13, &VerifyOptions::default()).unwrap();
    assert!(r.verified);
    for it in &r.items {
        let e = lookup(&it.id).unwrap();
        if e.goal(&Instance::new(13)) == Goal::Strict {
            assert!(it.max_upper_bound < 0.0, "{}", it.id);
        }
    }
}

#[test]
fn hypothesis_of_second_item_holds_for_piecewise_delta() {
    let e = lookup("L5.2.ii.hypothesis").unwrap();
    for n in 4..=200 {
        let r = e.prove(&Instance::new(n), &Budget::default()).unwrap();
        assert!(r.verified, "n = {n}");
    }
}

#[test]
fn discriminant_at_n9_for_both_conventions() {
    let r = verify_lemma("P5.3", 9, &VerifyOptions::default()).unwrap();
    let ids: Vec<_> = r.items.iter().map(|i| i.id.as_str()).collect();
    assert_eq!(ids, ["P5.3.discriminant[restricted]", "P5.3.discriminant[piecewise]", "P5.3.root"]);
    assert!(r.verified);
    // exactly zero at the closed-form root, up to rounding
    assert!(r.items[0].max_upper_bound.abs() < 1e-9);
}

#[test]
fn discriminant_strictly_negative_on_second_branch() {
    for n in 13..=40 {
        let e = lookup("P5.3.discriminant").unwrap();
        let r = e.prove(&Instance::new(n), &Budget::default()).unwrap();
        assert!(r.verified && r.max_upper_bound < 0.0, "n = {n}");
    }
}

#[test]
fn extrema_reproduce_quoted_values() {
    let d = lookup("L3.1.delta").unwrap();
    let r = d.find_extremum(&Instance::new(7), Mode::Max, 0.0, 200.0, 1e-10).unwrap();
    assert!((r.f_star + 0.264).abs() <= 0.005 && (r.x_star - 20.399).abs() <= 0.05, "{r:?}");
    let c = lookup("L3.1.n8cubic").unwrap();
    let r = c.find_extremum(&Instance::new(8), Mode::Min, 0.0, 200.0, 1e-10).unwrap();
    assert!((r.f_star - 86.697).abs() <= 0.01 && (r.x_star - 19.827).abs() <= 0.05, "{r:?}");
    let r = find_extremum_fn(&|x| x * x, Mode::Min, -1.0, 1.0, 1e-9).unwrap();
    assert!(r.x_star.abs() < 1e-6 && r.f_star < 1e-12);
}

#[test]
fn extremum_value_is_reevaluated() {
    let d = lookup("L3.1.delta").unwrap();
    let inst = Instance::new(9);
    let r = d.find_extremum(&inst, Mode::Max, 0.0, 300.0, 1e-8).unwrap();
    assert!((d.eval(&inst, r.x_star).unwrap() - r.f_star).abs() <= r.refinement_tolerance);
}

#[test]
fn finer_cells_keep_verified_items_verified() {
    let e = lookup("L2.3.v").unwrap();
    let inst = Instance::new(6);
    let coarse = e.prove(&inst, &Budget { max_cells: 2_000_000, min_width: 1e-9 }).unwrap();
    let fine = e.prove(&inst, &Budget { max_cells: 2_000_000, min_width: 1e-14 }).unwrap();
    assert!(coarse.verified && fine.verified);
}

#[test]
fn errors() {
    assert!(matches!(verify_lemma("L7.7", 8, &VerifyOptions::default()), Err(Error::UnknownLemma(_))));
    assert!(matches!(verify_lemma("L3.1", 6, &VerifyOptions::default()), Err(Error::Dimension { .. })));
    let d = lookup("L3.1.delta").unwrap();
    assert!(d.find_extremum(&Instance::new(7), Mode::Max, 5.0, 5.0, 1e-6).is_err());
    assert!(d.find_extremum(&Instance::new(7), Mode::Max, 0.0, 5.0, -1.0).is_err());
}

#[test]
fn report_serializes_to_documented_shape() {
    let r = verify_lemma("L3.1", 8, &VerifyOptions::default()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for k in ["lemma", "n", "items", "wall_time_ms"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    let item = &v["items"][0];
    for k in ["id", "verified", "cells", "max_upper_bound"] {
        assert!(item.get(k).is_some(), "{k}");
    }
    assert!(item.get("counterexample").is_none());
}
