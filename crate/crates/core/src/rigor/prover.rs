//! Adaptive bisection prover for claims of the form `f <= 0` on an interval or on `[0, inf)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rigor::interval::Interval;

/// Slack allowed for non-strict goals.
pub const NONSTRICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Goal {
    /// Upper bound strictly below zero.
    Strict,
    /// Upper bound at most [`NONSTRICT_TOL`].
    NonStrict,
}

impl Goal {
    fn accepts(self, upper: f64) -> bool {
        match self {
            Goal::Strict => upper < 0.0,
            Goal::NonStrict => upper <= NONSTRICT_TOL,
        }
    }

    fn refutes(self, lower: f64) -> bool {
        match self {
            Goal::Strict => lower >= 0.0,
            Goal::NonStrict => lower > NONSTRICT_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_cells: usize,
    /// Smallest cell width, in the bisected coordinate.
    pub min_width: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_cells: 2_000_000, min_width: 1e-13 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofResult {
    pub verified: bool,
    pub cells_explored: usize,
    pub min_cell_width: f64,
    /// Cell in `x` on which the claim fails everywhere.
    pub counterexample_box: Option<Interval>,
    pub max_upper_bound: f64,
}

impl ProofResult {
    /// No counterexample, but not verified either.
    pub fn inconclusive(&self) -> bool {
        !self.verified && self.counterexample_box.is_none()
    }
}

pub type Enclosure<'a> = &'a (dyn Fn(Interval) -> Interval + Sync);

/// Where the claim is posed.
#[derive(Clone, Copy)]
pub enum Domain<'a> {
    /// A closed bounded interval, bisected directly.
    Bounded(Interval),
    /// `[0, inf)`, bisected in `t` with `x = scale t / (1 - t)`. Cells with
    /// `t >= 1/2` are evaluated through `tail`, which takes `u = 1/x` and must
    /// have the same sign as the claim.
    HalfLine { scale: f64, tail: Enclosure<'a> },
}

struct Cell {
    lo: f64,
    hi: f64,
}

/// Bisects until every cell has an enclosure meeting `goal`, some cell violates
/// it throughout, or the budget runs out. Cells are visited depth first in
/// a fixed order, so the outcome does not depend on scheduling.
pub fn prove_nonpositive_on(
    f: Enclosure<'_>,
    domain: Domain<'_>,
    goal: Goal,
    budget: &Budget,
) -> Result<ProofResult> {
    if !(budget.min_width > 0.0) || budget.max_cells == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut stack = match domain {
        Domain::Bounded(iv) => {
            if !(iv.lo.is_finite() && iv.hi.is_finite()) {
                return Err(Error::EmptyDomain);
            }
            vec![Cell { lo: iv.lo, hi: iv.hi }]
        }
        Domain::HalfLine { scale, .. } => {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::EmptyDomain);
            }
            vec![Cell { lo: 0.5, hi: 1.0 }, Cell { lo: 0.0, hi: 0.5 }]
        }
    };

    let eval = |c: &Cell| -> (Interval, Interval) {
        match domain {
            Domain::Bounded(_) => {
                let x = Interval { lo: c.lo, hi: c.hi };
                (f(x), x)
            }
            Domain::HalfLine { scale, tail } => {
                let s = Interval::point(scale);
                if c.hi <= 0.5 {
                    let xl = s * Interval::point(c.lo) / (Interval::point(1.0) - Interval::point(c.lo));
                    let xh = s * Interval::point(c.hi) / (Interval::point(1.0) - Interval::point(c.hi));
                    let x = Interval { lo: xl.lo, hi: xh.hi }.nonneg();
                    (f(x), x)
                } else {
                    let one = Interval::point(1.0);
                    let ul = (one - Interval::point(c.hi)) / (s * Interval::point(c.hi));
                    let uh = (one - Interval::point(c.lo)) / (s * Interval::point(c.lo));
                    let u = Interval { lo: ul.lo, hi: uh.hi }.nonneg();
                    let x = Interval {
                        lo: 1.0 / u.hi,
                        hi: if u.lo > 0.0 { 1.0 / u.lo } else { f64::INFINITY },
                    };
                    (tail(u), x)
                }
            }
        }
    };

    let mut cells = 0usize;
    let mut min_w = f64::INFINITY;
    let mut max_upper = f64::NEG_INFINITY;
    let mut inconclusive = false;

    while let Some(c) = stack.pop() {
        if cells >= budget.max_cells {
            inconclusive = true;
            break;
        }
        cells += 1;
        let w = c.hi - c.lo;
        min_w = min_w.min(w);
        let (enc, xbox) = eval(&c);
        if goal.accepts(enc.hi) {
            max_upper = max_upper.max(enc.hi);
            continue;
        }
        if goal.refutes(enc.lo) {
            return Ok(ProofResult {
                verified: false,
                cells_explored: cells,
                min_cell_width: min_w,
                counterexample_box: Some(xbox),
                max_upper_bound: max_upper.max(enc.hi),
            });
        }
        let mid = 0.5 * (c.lo + c.hi);
        if w <= budget.min_width || mid <= c.lo || mid >= c.hi {
            inconclusive = true;
            max_upper = max_upper.max(enc.hi);
            continue;
        }
        stack.push(Cell { lo: mid, hi: c.hi });
        stack.push(Cell { lo: c.lo, hi: mid });
    }

    Ok(ProofResult {
        verified: !inconclusive,
        cells_explored: cells,
        min_cell_width: min_w,
        counterexample_box: None,
        max_upper_bound: max_upper,
    })
}

/// Certifies a single enclosure, such as a constant depending only on `n`.
pub fn prove_scalar(value: Interval, goal: Goal) -> ProofResult {
    let verified = goal.accepts(value.hi);
    ProofResult {
        verified,
        cells_explored: 1,
        min_cell_width: 0.0,
        counterexample_box: if !verified && goal.refutes(value.lo) { Some(value) } else { None },
        max_upper_bound: value.hi,
    }
}
