use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Ulps added to each endpoint after `+ - * /`.
pub const ARITH_ULPS: u32 = 4;
/// Ulps added after `sqrt`; IEEE sqrt is correctly rounded.
pub const SQRT_ULPS: u32 = 2;

/// Closed interval `[lo, hi]` with outward-rounded arithmetic.
///
/// The operator impls never fail: dividing by an interval that contains zero
/// yields the whole real line. Use [`Interval::checked_div`] or
/// [`interval_op`] to get an error instead.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn down(mut v: f64, k: u32) -> f64 {
    for _ in 0..k {
        v = v.next_down();
    }
    v
}

fn up(mut v: f64, k: u32) -> f64 {
    for _ in 0..k {
        v = v.next_up();
    }
    v
}

impl Interval {
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(param(format!("interval endpoints out of order: [{lo}, {hi}]")))
        }
    }

    pub const fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    fn widened(lo: f64, hi: f64, ulps: u32) -> Self {
        if lo.is_nan() || hi.is_nan() {
            return Self::ENTIRE;
        }
        Self { lo: down(lo, ulps), hi: up(hi, ulps) }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Intersection with `[0, inf)`, for quantities known to be nonnegative.
    pub fn nonneg(self) -> Interval {
        Interval { lo: self.lo.max(0.0), hi: self.hi.max(0.0) }
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    pub fn checked_sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            Err(Error::NegativeSqrt)
        } else {
            Ok(self.sqrt_clamped())
        }
    }

    /// Square root of `[max(0, lo), hi]`. Sound only when the exact quantity
    /// is known to be nonnegative.
    pub fn sqrt_clamped(self) -> Interval {
        if self.hi < 0.0 {
            return Interval { lo: f64::NAN, hi: f64::NAN };
        }
        let lo = self.lo.max(0.0).sqrt();
        let w = Self::widened(lo, self.hi.sqrt(), SQRT_ULPS);
        Interval { lo: w.lo.max(0.0), hi: w.hi }
    }

    pub fn min(self, o: Interval) -> Interval {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }

    pub fn max(self, o: Interval) -> Interval {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }

    fn pow_nonneg(self, k: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc.nonneg()
    }

    /// Integer power with the exact image for even exponents over sign changes.
    pub fn powi(self, k: i32) -> Interval {
        if k < 0 {
            return Interval::point(1.0) / self.powi(-k);
        }
        let k = k as u32;
        if k == 0 {
            return Interval::point(1.0);
        }
        if k % 2 == 0 {
            self.abs().pow_nonneg(k)
        } else if self.lo >= 0.0 {
            self.pow_nonneg(k)
        } else if self.hi <= 0.0 {
            -((-self).pow_nonneg(k))
        } else {
            let neg = Interval { lo: 0.0, hi: -self.lo }.pow_nonneg(k);
            let pos = Interval { lo: 0.0, hi: self.hi }.pow_nonneg(k);
            Interval { lo: -neg.hi, hi: pos.hi }
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, r: Interval) -> Interval {
        Interval::widened(self.lo + r.lo, self.hi + r.hi, ARITH_ULPS)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, r: Interval) -> Interval {
        Interval::widened(self.lo - r.hi, self.hi - r.lo, ARITH_ULPS)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

fn mul_end(a: f64, b: f64) -> f64 {
    // 0 * inf counts as 0 for enclosure purposes
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, r: Interval) -> Interval {
        let c = [
            mul_end(self.lo, r.lo),
            mul_end(self.lo, r.hi),
            mul_end(self.hi, r.lo),
            mul_end(self.hi, r.hi),
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi, ARITH_ULPS)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, r: Interval) -> Interval {
        if r.contains_zero() {
            return Interval::ENTIRE;
        }
        let c = [self.lo / r.lo, self.lo / r.hi, self.hi / r.lo, self.hi / r.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi, ARITH_ULPS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Min,
    Max,
    /// `a^k` where `b` must be a degenerate interval holding the integer `k`.
    Pow,
}

/// Checked binary (or unary, for `Sqrt`) interval operation.
pub fn interval_op(a: Interval, b: Interval, op: IntervalOp) -> Result<Interval> {
    match op {
        IntervalOp::Add => Ok(a + b),
        IntervalOp::Sub => Ok(a - b),
        IntervalOp::Mul => Ok(a * b),
        IntervalOp::Div => a.checked_div(b),
        IntervalOp::Sqrt => a.checked_sqrt(),
        IntervalOp::Min => Ok(a.min(b)),
        IntervalOp::Max => Ok(a.max(b)),
        IntervalOp::Pow => {
            if b.lo != b.hi || b.lo.fract() != 0.0 || b.lo.abs() > i32::MAX as f64 {
                return Err(param("pow exponent must be a degenerate integer interval"));
            }
            let k = b.lo as i32;
            if k < 0 && a.contains_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(a.powi(k))
        }
    }
}

/// Scalar field shared by point (`f64`) and enclosure (`Interval`) evaluation,
/// so each expression is written once.
pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// Must be exactly representable.
    fn int(k: i64) -> Self;
    fn sqrt(self) -> Self;
    fn powi(self, k: i32) -> Self;
    fn min(self, o: Self) -> Self;
    fn max(self, o: Self) -> Self;
    fn upper(self) -> f64;

    fn ratio(p: i64, q: i64) -> Self {
        Self::int(p) / Self::int(q)
    }
    fn sq(self) -> Self {
        self * self
    }
}

impl Real for f64 {
    fn int(k: i64) -> Self {
        k as f64
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self.max(0.0))
    }
    fn powi(self, k: i32) -> Self {
        f64::powi(self, k)
    }
    fn min(self, o: Self) -> Self {
        f64::min(self, o)
    }
    fn max(self, o: Self) -> Self {
        f64::max(self, o)
    }
    fn upper(self) -> f64 {
        self
    }
}

impl Real for Interval {
    fn int(k: i64) -> Self {
        Interval::point(k as f64)
    }
    fn sqrt(self) -> Self {
        self.sqrt_clamped()
    }
    fn powi(self, k: i32) -> Self {
        Interval::powi(self, k)
    }
    fn min(self, o: Self) -> Self {
        Interval::min(self, o)
    }
    fn max(self, o: Self) -> Self {
        Interval::max(self, o)
    }
    fn upper(self) -> f64 {
        self.hi
    }
    fn sq(self) -> Self {
        self.powi(2)
    }
}
