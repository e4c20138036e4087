//! Interval arithmetic, a bisection prover, and the registry of certified inequalities.

pub mod extremum;
pub mod forms;
pub mod interval;
pub mod prover;

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::thresholds::DeltaConvention;

pub use extremum::{find_extremum_fn, ExtremumReport, Mode};
pub use forms::{restricted_delta_is_exact_root, Instance};
pub use interval::{interval_op, Interval, IntervalOp, Real};
pub use prover::{prove_nonpositive_on, prove_scalar, Budget, Domain, Goal, ProofResult, NONSTRICT_TOL};

use forms::{Forms, ScalarFn};

#[derive(Clone, Copy)]
pub enum Body {
    /// A function of `x = |H|^2` on `[0, inf)`.
    Curve(Forms),
    /// A constant depending only on the instance.
    Scalar(ScalarFn),
}

/// Whether the registered function should be nonpositive or positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    NonPositive,
    Positive,
}

#[derive(Clone, Copy)]
pub struct LemmaExpression {
    pub id: &'static str,
    /// Always 1 here; `P2` is eliminated at the vertex of its quadratic.
    pub arity: u8,
    pub min_n: u32,
    pub max_n: Option<u32>,
    pub sense: Sense,
    pub body: Body,
    goal: fn(&Instance) -> Goal,
}

impl LemmaExpression {
    pub fn valid_n(&self, n: u32) -> bool {
        n >= self.min_n && self.max_n.map_or(true, |m| n <= m)
    }

    pub fn goal(&self, inst: &Instance) -> Goal {
        (self.goal)(inst)
    }

    fn check(&self, inst: &Instance) -> Result<()> {
        if self.valid_n(inst.n) {
            Ok(())
        } else {
            Err(Error::Dimension { what: self.id, n: inst.n })
        }
    }

    fn sign(&self) -> f64 {
        match self.sense {
            Sense::NonPositive => 1.0,
            Sense::Positive => -1.0,
        }
    }

    /// Point value of the expression as registered (before any sign flip).
    pub fn eval(&self, inst: &Instance, x: f64) -> Result<f64> {
        self.check(inst)?;
        match self.body {
            Body::Curve(f) => {
                if !(x >= 0.0) {
                    return Err(crate::error::param(format!("x must be nonnegative, got {x}")));
                }
                Ok((f.main_point)(inst, x))
            }
            Body::Scalar(s) => Ok(s(inst).mid()),
        }
    }

    /// Enclosure of the expression on `x` (before any sign flip).
    pub fn enclose(&self, inst: &Instance, x: Interval) -> Result<Interval> {
        self.check(inst)?;
        Ok(match self.body {
            Body::Curve(f) => (f.main)(inst, x.nonneg()),
            Body::Scalar(s) => s(inst),
        })
    }

    pub fn prove(&self, inst: &Instance, budget: &Budget) -> Result<ProofResult> {
        self.check(inst)?;
        let goal = self.goal(inst);
        let sign = Interval::point(self.sign());
        match self.body {
            Body::Scalar(s) => Ok(prove_scalar(sign * s(inst), goal)),
            Body::Curve(f) => {
                let inst = *inst;
                let main = move |x: Interval| sign * (f.main)(&inst, x);
                let tail = move |u: Interval| sign * (f.tail)(&inst, u);
                let scale = 4.0 * (inst.n as f64 - 1.0);
                prove_nonpositive_on(&main, Domain::HalfLine { scale, tail: &tail }, goal, budget)
            }
        }
    }

    pub fn find_extremum(
        &self,
        inst: &Instance,
        mode: Mode,
        lo: f64,
        hi: f64,
        tol: f64,
    ) -> Result<ExtremumReport> {
        self.check(inst)?;
        let Body::Curve(f) = self.body else {
            return Err(Error::Unsupported(format!("{} does not depend on x", self.id)));
        };
        if lo < 0.0 {
            return Err(crate::error::param("extremum domain must lie in [0, inf)"));
        }
        let inst = *inst;
        find_extremum_fn(&move |x| (f.main_point)(&inst, x), mode, lo, hi, tol)
    }
}

fn strict(_: &Instance) -> Goal {
    Goal::Strict
}

fn nonstrict(_: &Instance) -> Goal {
    Goal::NonStrict
}

fn discriminant_goal(inst: &Instance) -> Goal {
    if inst.convention == DeltaConvention::Piecewise && inst.n >= 13 {
        Goal::Strict
    } else {
        Goal::NonStrict
    }
}

fn discriminant(inst: &Instance) -> Interval {
    forms::p53_discriminant::<Interval>(inst)
}

const fn curve(id: &'static str, min_n: u32, forms: Forms, goal: fn(&Instance) -> Goal) -> LemmaExpression {
    LemmaExpression { id, arity: 1, min_n, max_n: None, sense: Sense::NonPositive, body: Body::Curve(forms), goal }
}

const fn scalar(id: &'static str, min_n: u32, f: ScalarFn, goal: fn(&Instance) -> Goal) -> LemmaExpression {
    LemmaExpression { id, arity: 1, min_n, max_n: None, sense: Sense::NonPositive, body: Body::Scalar(f), goal }
}

pub static REGISTRY: &[LemmaExpression] = &[
    curve("L2.3.i", 3, forms::F_23_I, strict),
    curve("L2.3.ii", 3, forms::F_23_II, strict),
    curve("L2.3.iii", 3, forms::F_23_III, strict),
    curve("L2.3.iv", 3, forms::F_23_IV, nonstrict),
    curve("L2.3.v", 3, forms::F_23_V, nonstrict),
    curve("L2.3.vi", 3, forms::F_23_VI, strict),
    curve("L3.1.delta", 7, forms::F_31_DELTA, strict),
    LemmaExpression {
        id: "L3.1.n8cubic",
        arity: 1,
        min_n: 8,
        max_n: Some(8),
        sense: Sense::Positive,
        body: Body::Curve(forms::F_31_CUBIC),
        goal: strict,
    },
    curve("L3.1.reduced", 8, forms::F_31_REDUCED, strict),
    scalar("L3.1.vertex", 9, forms::l31_vertex, strict),
    scalar("L3.1.band.upper", 9, forms::l31_band_upper, strict),
    scalar("L3.1.band.lower", 9, forms::l31_band_lower, strict),
    curve("L4.3.core", 3, forms::F_43, nonstrict),
    curve("L5.2.i", 4, forms::F_52_I, strict),
    curve("L5.2.ii", 4, forms::F_52_II, strict),
    scalar("L5.2.ii.hypothesis", 4, forms::b52_ii_hypothesis, strict),
    curve("L5.2.iii", 4, forms::F_52_III, strict),
    curve("L5.2.iv", 4, forms::F_52_IV, strict),
    curve("L5.2.v", 4, forms::F_52_V, strict),
    curve("L5.2.vi", 4, forms::F_52_VI, nonstrict),
    curve("L5.4.core", 4, forms::F_54, nonstrict),
    scalar("P5.3.discriminant", 4, discriminant, discriminant_goal),
];

pub fn lookup(id: &str) -> Result<&'static LemmaExpression> {
    REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownLemma(id.to_string()))
}

/// Items belonging to a group id such as `L2.3`, or the single item with that id.
pub fn members(id: &str) -> Result<Vec<&'static LemmaExpression>> {
    if let Ok(e) = lookup(id) {
        return Ok(vec![e]);
    }
    let prefix = format!("{id}.");
    let v: Vec<_> = REGISTRY.iter().filter(|e| e.id.starts_with(&prefix)).collect();
    if v.is_empty() {
        Err(Error::UnknownLemma(id.to_string()))
    } else {
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemReport {
    pub id: String,
    pub verified: bool,
    pub cells: usize,
    pub max_upper_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Interval>,
    #[serde(skip)]
    pub result: Option<ProofResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub n: u32,
    pub verified: bool,
    pub items: Vec<ItemReport>,
    pub wall_time_ms: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub convention: DeltaConvention,
    /// Worker threads; items are independent and results keep registry order.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { budget: Budget::default(), convention: DeltaConvention::Piecewise, threads: 1 }
    }
}

fn item(label: String, r: ProofResult) -> ItemReport {
    ItemReport {
        id: label,
        verified: r.verified,
        cells: r.cells_explored,
        max_upper_bound: r.max_upper_bound,
        counterexample: r.counterexample_box,
        result: Some(r),
    }
}

/// Runs every registered item of `lemma_id` valid at `n`.
///
/// The discriminant item runs once per delta convention, and its closed-form
/// root is also checked in exact integer arithmetic.
pub fn verify_lemma(lemma_id: &str, n: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let all = members(lemma_id)?;
    let single = all.len() == 1 && all[0].id == lemma_id;
    let chosen: Vec<_> = all.into_iter().filter(|e| e.valid_n(n)).collect();
    if chosen.is_empty() {
        return Err(Error::Dimension { what: "verify_lemma", n });
    }

    let mut jobs: Vec<(String, &LemmaExpression, Instance)> = Vec::new();
    for e in chosen {
        if e.id == "P5.3.discriminant" {
            for conv in [DeltaConvention::Restricted, DeltaConvention::Piecewise] {
                let tag = conv_tag(conv);
                jobs.push((format!("{}[{tag}]", e.id), e, Instance { n, convention: conv }));
            }
        } else {
            jobs.push((e.id.to_string(), e, Instance { n, convention: opts.convention }));
        }
    }

    let run = |(label, e, inst): &(String, &LemmaExpression, Instance)| -> Result<ItemReport> {
        Ok(item(label.clone(), e.prove(inst, &opts.budget)?))
    };
    let threads = opts.threads.max(1).min(jobs.len());
    let mut items: Vec<ItemReport> = if threads <= 1 {
        jobs.iter().map(run).collect::<Result<_>>()?
    } else {
        let mut slots: Vec<Option<Result<ItemReport>>> = vec![None; jobs.len()];
        std::thread::scope(|s| {
            let chunks: Vec<_> = slots.chunks_mut(jobs.len().div_ceil(threads)).collect();
            let mut start = 0;
            for chunk in chunks {
                let lo = start;
                start += chunk.len();
                let jobs = &jobs;
                let run = &run;
                s.spawn(move || {
                    for (k, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(run(&jobs[lo + k]));
                    }
                });
            }
        });
        slots.into_iter().map(|s| s.expect("worker filled every slot")).collect::<Result<_>>()?
    };

    if jobs.iter().any(|j| j.1.id == "P5.3.discriminant") {
        let exact = restricted_delta_is_exact_root(n);
        items.push(ItemReport {
            id: "P5.3.root".to_string(),
            verified: exact,
            cells: 0,
            max_upper_bound: if exact { 0.0 } else { f64::NAN },
            counterexample: None,
            result: None,
        });
    }

    let verified = items.iter().all(|i| i.verified);
    let lemma = if single { lemma_id.to_string() } else { lemma_id.trim_end_matches('.').to_string() };
    Ok(VerificationReport { lemma, n, verified, items, wall_time_ms: start.elapsed().as_millis() })
}

pub(crate) fn conv_tag(c: DeltaConvention) -> &'static str {
    match c {
        DeltaConvention::Restricted => "restricted",
        DeltaConvention::Piecewise => "piecewise",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_groups() {
        assert!(lookup("L2.3.i").is_ok());
        assert!(matches!(lookup("L9.9"), Err(Error::UnknownLemma(_))));
        assert_eq!(members("L2.3").unwrap().len(), 6);
        assert!(members("L9").is_err());
    }

    #[test]
    fn group_respects_dimension() {
        let r = verify_lemma("L3.1", 7, &VerifyOptions::default()).unwrap();
        assert_eq!(r.items.len(), 1);
        assert!(r.verified);
        assert!(verify_lemma("L3.1.reduced", 7, &VerifyOptions::default()).is_err());
    }

    #[test]
    fn threads_do_not_change_results() {
        let one = verify_lemma("L2.3", 5, &VerifyOptions::default()).unwrap();
        let four = verify_lemma("L2.3", 5, &VerifyOptions { threads: 4, ..Default::default() }).unwrap();
        let strip = |r: &VerificationReport| -> Vec<(String, bool, usize)> {
            r.items.iter().map(|i| (i.id.clone(), i.verified, i.cells)).collect()
        };
        assert_eq!(strip(&one), strip(&four));
    }
}
