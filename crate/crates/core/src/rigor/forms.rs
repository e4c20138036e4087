//! Registered inequalities in a form suitable for interval evaluation.
//!
//! Each one-variable item carries a `main` form on `x in [0, scale]`, with
//! cancellations at `x = 0` removed, and a `tail` form in `u = 1/x` that equals
//! `x^p * f(x)` for a fixed power `p` and has a finite nonzero limit at `u = 0`.
//! `literal` evaluates the inequality exactly as written, through the
//! threshold module.

use crate::rigor::interval::{Interval, Real};
use crate::thresholds::{delta_coefficient, DeltaConvention, SphereContext, ThresholdProfile};

/// Dimension and blending convention an expression is evaluated at (`kbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instance {
    pub n: u32,
    pub convention: DeltaConvention,
}

impl Instance {
    pub fn new(n: u32) -> Self {
        Self { n, convention: DeltaConvention::Piecewise }
    }
}

/// Dimension constants shared by the forms below.
#[derive(Clone, Copy)]
struct Dims<T> {
    n: T,
    m: T,
    q: T,
    s0: T,
    r0: T,
    c1: T,
    delta: T,
}

fn dims<T: Real>(inst: &Instance) -> Dims<T> {
    let ni = inst.n as i64;
    let s0 = T::int(2 * ni).sqrt();
    let delta = match inst.convention {
        DeltaConvention::Piecewise if ni >= 13 => T::ratio(2 * (2 * ni - 5), ni * ni - 2),
        _ => (T::int(12 * ni + 9).sqrt() - T::int(7)) / T::int(2 * (ni - 2)),
    };
    Dims {
        n: T::int(ni),
        m: T::int(ni - 1),
        q: T::int(2 * ni - 4),
        s0,
        r0: (T::int(2) + s0).sqrt(),
        c1: T::int(ni - 2) / T::int(ni * (ni - 1)).sqrt(),
        delta,
    }
}

/// Quantities of the square-root profile and of `alpha` at a finite `x`.
#[derive(Clone, Copy)]
struct Near<T> {
    y: T,
    l: T,
    s: T,
    d: T,
    r: T,
    e: T,
}

fn near<T: Real>(k: &Dims<T>, x: T) -> Near<T> {
    let two = T::int(2);
    let y = x / k.m;
    let l = y + two;
    let s = (l.sq() + k.q).sqrt();
    let r = (x.sq() + T::int(4) * k.m * x).sqrt();
    Near { y, l, s, d: k.q / (s + l), r, e: k.q / (l + r / k.m) }
}

/// The same quantities multiplied by `u = 1/x` where they grow linearly.
#[derive(Clone, Copy)]
struct Far<T> {
    /// `L u`
    l: T,
    /// `S u`
    s: T,
    /// `R u`
    rho: T,
    /// `D`, bounded
    d: T,
    /// `E u`
    eu: T,
}

fn far<T: Real>(k: &Dims<T>, u: T) -> Far<T> {
    let one = T::int(1);
    let l = one / k.m + T::int(2) * u;
    let s = (l.sq() + k.q * u.sq()).sqrt();
    let rho = (one + T::int(4) * k.m * u).sqrt();
    let d = k.q * u / (s + l);
    let eu = k.q * u.sq() / (l + rho / k.m);
    Far { l, s, rho, d, eu }
}

pub type MainFn = fn(&Instance, Interval) -> Interval;
pub type PointFn = fn(&Instance, f64) -> f64;

#[derive(Clone, Copy)]
pub struct Forms {
    pub main_point: PointFn,
    pub main: MainFn,
    pub tail_point: PointFn,
    pub tail: MainFn,
    /// `tail(u) = x^p * main(x)` with `x = 1/u`.
    pub tail_power: fn(u32) -> i32,
    pub literal: Option<PointFn>,
}

macro_rules! forms {
    ($main:ident, $tail:ident, $p:expr, $lit:expr) => {
        Forms {
            main_point: $main::<f64>,
            main: $main::<Interval>,
            tail_point: $tail::<f64>,
            tail: $tail::<Interval>,
            tail_power: $p,
            literal: $lit,
        }
    };
}

pub type ScalarFn = fn(&Instance) -> Interval;

// ---------------------------------------------------------------------------
// square-root profile

fn a23_i<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let d1 = v.l / (k.m * v.s) - T::int(1) / k.n;
    T::int(4) * x * d1.sq() - (v.s - x / k.n)
}

fn a23_i_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let d1 = w.l / (k.m * w.s) - T::int(1) / k.n;
    T::int(4) * d1.sq() - (w.s - T::int(1) / k.n)
}

fn a23_ii<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let d1 = v.l / (k.m * v.s) - T::int(1) / k.n;
    let d2 = k.q / (k.m.sq() * v.s.powi(3));
    T::int(2) * x * d2 + d1 - T::int(2) * k.m / (k.n * (k.n + T::int(2)))
}

fn a23_ii_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let d1 = w.l / (k.m * w.s) - T::int(1) / k.n;
    let x_d2 = k.q * u.sq() / (k.m.sq() * w.s.powi(3));
    T::int(2) * x_d2 + d1 - T::int(2) * k.m / (k.n * (k.n + T::int(2)))
}

fn a23_iii<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let ring = v.s - x / k.n;
    let ring_alpha = v.l + v.e - x / k.n;
    let gap = T::int(4) * k.n * (k.n - T::int(2)) * k.m
        / ((v.r + k.m * v.s) * (v.s + v.l) * (v.l + v.r / k.m));
    -gap * (T::int(1) + k.c1 * x.sqrt() / (ring.sqrt() + ring_alpha.sqrt()))
}

fn a23_iii_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let inv_n = T::int(1) / k.n;
    let ring = w.s - inv_n;
    let ring_alpha = w.l + w.eu - inv_n;
    let gap = T::int(4) * k.n * (k.n - T::int(2)) * k.m
        / ((w.rho + k.m * w.s) * (w.s + w.l) * (w.l + w.rho / k.m));
    -gap * (T::int(1) + k.c1 / (ring.sqrt() + ring_alpha.sqrt()))
}

/// Coefficients of the cleared numerator of the fourth item.
fn a23_iv_coeffs<T: Real>(k: &Dims<T>) -> (T, T, T, T) {
    let two = T::int(2);
    let c = k.r0 - two;
    let g2 = -(T::int(4) * c + k.q);
    let g1 = two * (k.q - c.sq() - c * k.q) - T::int(4) * c * k.s0;
    (c, g2, g1, k.q - two * c.sq())
}

fn a23_iv<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let (c, g2, g1, a0) = a23_iv_coeffs(&k);
    let two = T::int(2);
    let alpha = a0 - T::int(4) * c * v.l;
    let phi = g2 * v.l + g1 + two * g2 + alpha * (v.l + two) / (v.s + k.s0);
    k.n * k.q * v.y * phi / ((v.s + v.l).sq() * v.s * (v.l + c).sq())
}

fn a23_iv_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let (c, g2, g1, a0) = a23_iv_coeffs(&k);
    let two = T::int(2);
    let mu = k.m * u;
    let lam = T::int(1) + two * mu;
    let sig = (lam.sq() + k.q * mu.sq()).sqrt();
    let alpha = a0 * mu - T::int(4) * c * lam;
    let phi = g2 * lam + (g1 + two * g2) * mu + alpha * (lam + two * mu) / (sig + k.s0 * mu);
    k.n * k.q * k.m.powi(3) * phi / ((sig + lam).sq() * sig * (lam + c * mu).sq())
}

fn a23_v<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let two = T::int(2);
    let d0 = k.s0 - two;
    let g = T::int(6) * k.m * d0 / (T::int(3) * x + two * k.s0 * k.m)
        - v.d / v.s
        - v.d * d0 * ((v.l + two) / (v.s + k.s0) + T::int(1)) / (k.n - two);
    v.y * g
}

fn a23_v_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let two = T::int(2);
    let xd = k.q / (w.s + w.l);
    xd * (two - T::int(1) / (k.m * w.s))
        - T::int(4) * k.s0 * (k.s0 - two) * k.m / (T::int(3) + two * k.s0 * k.m * u)
}

fn a23_vi<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let twon = T::int(2) * k.n;
    -v.d * ((v.y + twon) * x / (k.m * v.s) + v.y + twon + twon)
}

fn a23_vi_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let inv_m = T::int(1) / k.m;
    let nu = k.n * u;
    -(k.q / (w.s + w.l)) * ((inv_m + T::int(2) * nu) / (k.m * w.s) + inv_m + T::int(4) * nu)
}

fn l31_delta<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let two = T::int(2);
    let g = k.n * v.d * (two + v.d) / v.s;
    T::int(4) - (k.n - T::int(4)) * x / (k.n * k.m) + v.d * (two - v.y / v.s)
        - (T::int(6) * g).sqrt()
}

fn l31_delta_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let two = T::int(2);
    let u2 = u.sq();
    T::int(4) * u - (k.n - T::int(4)) / (k.n * k.m)
        + k.q * u2 / (w.s + w.l) * (two - T::int(1) / (k.m * w.s))
        - u2 * (T::int(6) * k.n * k.q * (two + w.d) / ((w.s + w.l) * w.s)).sqrt()
}

fn l31_reduced<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let (two, three) = (T::int(2), T::int(3));
    let ni = inst.n as i64;
    (x + k.r0 * k.m)
        * (two * k.s0
            - (k.n - T::int(4)) * x / (k.n * k.m)
            - T::int(6) * (k.s0 - two) * x / (three * x + two * k.s0 * k.m))
        - two * T::int(3 * ni * (ni - 2)).sqrt() * k.m
}

fn l31_reduced_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let (two, three) = (T::int(2), T::int(3));
    let ni = inst.n as i64;
    (T::int(1) + k.r0 * k.m * u)
        * (two * k.s0 * u
            - (k.n - T::int(4)) / (k.n * k.m)
            - T::int(6) * (k.s0 - two) * u / (three + two * k.s0 * k.m * u))
        - two * T::int(3 * ni * (ni - 2)).sqrt() * k.m * u.sq()
}

fn cubic_coeffs<T: Real>() -> [T; 4] {
    let r6 = T::int(6).sqrt();
    [
        T::ratio(3, 14),
        -(T::int(8) - T::ratio(3, 2) * r6),
        -(T::int(56) * (r6 - T::int(1))),
        T::int(3136) * (T::int(3) - r6),
    ]
}

/// Cubic whose positivity is the reduced inequality at n = 8.
fn l31_cubic<T: Real>(_: &Instance, x: T) -> T {
    let [c3, c2, c1, c0] = cubic_coeffs::<T>();
    ((c3 * x + c2) * x + c1) * x + c0
}

fn l31_cubic_tail<T: Real>(_: &Instance, u: T) -> T {
    let [c3, c2, c1, c0] = cubic_coeffs::<T>();
    ((c0 * u + c1) * u + c2) * u + c3
}

fn l43_core<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let two = T::int(2);
    let d0 = k.s0 - two;
    -v.d * d0 * v.y * ((v.l + two) / (v.s + k.s0) + T::int(1)) / k.q
}

fn l43_core_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    far(&k, u).d - (k.s0 - T::int(2))
}

// ---------------------------------------------------------------------------
// blended profile

fn b52_i<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let c = T::int(1) / (k.n * k.m);
    let ring = v.l + k.delta * v.e - x / k.n;
    let root = c * x.sqrt() - k.delta * v.e / (x + T::int(4) * k.m).sqrt();
    T::int(4) * root.sq() - ring
}

fn b52_i_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let c = T::int(1) / (k.n * k.m);
    let e_over_r = k.q * u.sq() / ((w.l + w.rho / k.m) * w.rho);
    let ring_u = w.l + k.delta * w.eu - T::int(1) / k.n;
    T::int(4) * (c - k.delta * e_over_r).sq() - ring_u
}

fn b52_ii_const<T: Real>(k: &Dims<T>) -> T {
    let (two, n) = (T::int(2), k.n);
    (k.delta * n * n - two * k.delta * n + two) / (two * k.m * n) - two * k.m / (n * (n + two))
}

fn b52_ii<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let w4 = x + T::int(4) * k.m;
    b52_ii_const(&k)
        - k.delta * (k.n - T::int(2)) / (T::int(2) * k.m) * x.sqrt() * (x + T::int(6) * k.m)
            / (w4 * w4.sqrt())
}

fn b52_ii_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w4 = T::int(1) + T::int(4) * k.m * u;
    b52_ii_const(&k)
        - k.delta * (k.n - T::int(2)) / (T::int(2) * k.m) * (T::int(1) + T::int(6) * k.m * u)
            / (w4 * w4.sqrt())
}

fn b52_iii<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let one = T::int(1);
    let ring_b = v.l + k.delta * v.e - x / k.n;
    let ring_alpha = v.l + v.e - x / k.n;
    -(one - k.delta) * v.e * (one + k.c1 * x.sqrt() / (ring_b.sqrt() + ring_alpha.sqrt()))
}

fn b52_iii_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let one = T::int(1);
    let inv_n = one / k.n;
    let ring_b = w.l + k.delta * w.eu - inv_n;
    let ring_alpha = w.l + w.eu - inv_n;
    -(one - k.delta) * (k.q / (w.l + w.rho / k.m))
        * (one + k.c1 / (ring_b.sqrt() + ring_alpha.sqrt()))
}

fn b52_iv_coeff<T: Real>(k: &Dims<T>) -> T {
    let one = T::int(1);
    -(one - k.delta) * k.delta * (k.n - T::int(2)).sq() / k.m * T::int(4) * k.m.powi(3)
}

fn b52_iv<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let (m, three) = (k.m, T::int(3));
    b52_iv_coeff(&k) / ((x + T::int(4) * m) * (x + m) + v.r * (x + three * m))
}

fn b52_iv_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let (one, mu) = (T::int(1), k.m * u);
    b52_iv_coeff(&k) / ((one + T::int(4) * mu) * (one + mu) + w.rho * (one + T::int(3) * mu))
}

fn b52_v<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let v = near(&k, x);
    let twon = T::int(2) * k.n;
    let x_over_r = (x / (x + T::int(4) * k.m)).sqrt();
    -k.delta * v.e * ((v.y + twon) * x_over_r + v.y + twon + twon)
}

fn b52_v_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let one = T::int(1);
    let nmu = k.n * k.m * u;
    -k.delta * k.q / (one + T::int(2) * k.m * u + w.rho)
        * ((one + T::int(2) * nmu) / w.rho + one + T::int(4) * nmu)
}

fn b52_vi<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let (rx, rw) = (x.sqrt(), (x + T::int(4) * k.m).sqrt());
    -(k.n - T::int(4)) * x / (k.n * k.m)
        - k.delta * (k.n - T::int(2)) * rx / rw * (T::int(5) * rw - rx) / (rw + rx)
}

fn b52_vi_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    let one = T::int(1);
    let shape = k.delta * (k.n - T::int(2)) * (T::int(5) * w.rho - one) / (w.rho * (w.rho + one));
    if inst.n == 4 {
        -shape
    } else {
        -(k.n - T::int(4)) / (k.n * k.m) - u * shape
    }
}

fn b54_core<T: Real>(inst: &Instance, x: T) -> T {
    let k = dims::<T>(inst);
    let rx = x.sqrt();
    -T::int(2) * k.delta * (k.n - T::int(2)) * rx / (rx + (x + T::int(4) * k.m).sqrt())
}

fn b54_core_tail<T: Real>(inst: &Instance, u: T) -> T {
    let k = dims::<T>(inst);
    let w = far(&k, u);
    -T::int(2) * k.delta * (k.n - T::int(2)) / (T::int(1) + w.rho)
}

// ---------------------------------------------------------------------------
// scalar claims

fn band_lhs<T: Real>(k: &Dims<T>) -> T {
    let (one, two) = (T::int(1), T::int(2));
    one - (two - two / k.n - T::int(3) / k.s0) * ((two + k.s0) / (two * k.n)).sqrt()
}

fn band_rhs2<T: Real>(inst: &Instance, k: &Dims<T>) -> T {
    let ni = inst.n as i64;
    let four = T::int(4);
    (k.n - four) / (k.n * k.n.sqrt())
        * (T::int(3 * (ni - 2)).sqrt() - (four + T::int(2) * k.s0).sqrt())
}

/// Vertex condition of the concave quadratic bounding the reduced inequality.
pub(crate) fn l31_vertex(inst: &Instance) -> Interval {
    let k = dims::<Interval>(inst);
    band_lhs(&k) - band_rhs2(inst, &k).sqrt()
}

pub(crate) fn l31_band_constant(n: u32) -> Option<Interval> {
    match n {
        9..=12 => Some(Interval::ratio(1814, 10_000)),
        13..=65 => Some(Interval::ratio(3555, 10_000)),
        66.. => Some(Interval::point(1.0)),
        _ => None,
    }
}

/// Left side of the vertex condition against the square root of the band constant.
pub(crate) fn l31_band_upper(inst: &Instance) -> Interval {
    let k = dims::<Interval>(inst);
    let c = l31_band_constant(inst.n).unwrap_or(Interval::ENTIRE);
    band_lhs(&k) - c.sqrt()
}

/// Band constant against the squared right side of the vertex condition.
pub(crate) fn l31_band_lower(inst: &Instance) -> Interval {
    let k = dims::<Interval>(inst);
    let c = l31_band_constant(inst.n).unwrap_or(Interval::ENTIRE);
    c - band_rhs2(inst, &k)
}

pub(crate) fn p53_discriminant<T: Real>(inst: &Instance) -> T {
    let k = dims::<T>(inst);
    let (one, two) = (T::int(1), T::int(2));
    let nm2 = k.n - two;
    (k.delta * nm2 + two).sq() - T::int(3) * (one - k.delta) * nm2
}

pub(crate) fn b52_ii_hypothesis(inst: &Instance) -> Interval {
    let k = dims::<Interval>(inst);
    let ni = inst.n as i64;
    k.delta - Interval::ratio(2 * (2 * ni - 5), ni * ni - 4)
}

/// Checks in exact arithmetic that `(sqrt(12n+9) - 7) / (2(n-2))` is a root of
/// `d^2 (n-2)^2 + 7 d (n-2) + 4 - 3(n-2)`.
///
/// With `y = d (n-2)`, `2y = sqrt(D) - 7`, and `4 * poly = (2y)^2 + 14 (2y) + 4 (10 - 3n)`,
/// evaluated as `p + q sqrt(D)` over the integers.
pub fn restricted_delta_is_exact_root(n: u32) -> bool {
    if n < 4 {
        return false;
    }
    let n = n as i128;
    let disc = 12 * n + 9;
    let (p, q) = (-7i128, 1i128);
    let (sp, sq) = (p * p + q * q * disc, 2 * p * q);
    let rational = sp + 14 * p + 4 * (10 - 3 * n);
    let surd = sq + 14 * q;
    rational == 0 && surd == 0
}

// ---------------------------------------------------------------------------
// literal evaluation

fn unit(n: u32) -> SphereContext {
    SphereContext { n, kbar: 1.0 }
}

fn lit_sqrt_a(n: u32, x: f64) -> (f64, f64, f64, f64) {
    let ctx = unit(n);
    let p = ThresholdProfile::SqrtA;
    let a = p.value(&ctx, x).unwrap_or(f64::NAN);
    let r = p.ring(&ctx, x).unwrap_or(f64::NAN);
    let (d1, d2) = p.ring_derivatives(&ctx, x).unwrap_or((f64::NAN, f64::NAN));
    (a, r, d1, d2)
}

fn lit_blend(inst: &Instance, x: f64) -> (f64, f64, f64, f64) {
    let ctx = unit(inst.n);
    let p = ThresholdProfile::Blend(inst.convention);
    let b = p.value(&ctx, x).unwrap_or(f64::NAN);
    let r = p.ring(&ctx, x).unwrap_or(f64::NAN);
    let (d1, d2) = p.ring_derivatives(&ctx, x).unwrap_or((f64::NAN, f64::NAN));
    (b, r, d1, d2)
}

fn okumura(n: f64, x: f64, ring: f64) -> f64 {
    (n - 2.0) / (n * (n - 1.0)).sqrt() * (x * ring).sqrt() + ring - x / n - n
}

fn flux(n: f64, x: f64, v: f64, ring: f64, d1: f64) -> f64 {
    let m = n - 1.0;
    x / m * (v + n) - (x / m + 2.0 * n) * (ring + v - n - x * d1) - (-2.0 * x / m + 2.0 * n * (n - 4.0))
}

fn lit_23_i(inst: &Instance, x: f64) -> f64 {
    let (_, r, d1, _) = lit_sqrt_a(inst.n, x);
    4.0 * x * d1 * d1 - r
}
fn lit_23_ii(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let (_, _, d1, d2) = lit_sqrt_a(inst.n, x);
    2.0 * x * d2 + d1 - 2.0 * (n - 1.0) / (n * (n + 2.0))
}
fn lit_23_iii(inst: &Instance, x: f64) -> f64 {
    let (_, r, _, _) = lit_sqrt_a(inst.n, x);
    okumura(inst.n as f64, x, r)
}
fn lit_23_iv(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let m = n - 1.0;
    let (a, r, d1, _) = lit_sqrt_a(inst.n, x);
    let r0 = (2.0 + (2.0 * n).sqrt()).sqrt();
    2.0 * n * (n - 2.0) * m * m / (x + r0 * m).powi(2) - (n * (r + x * d1) - a * (r - x * d1))
}
fn lit_23_v(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let m = n - 1.0;
    let s0 = (2.0 * n).sqrt();
    let (_, r, d1, _) = lit_sqrt_a(inst.n, x);
    2.0 * r - x / n + x * d1
        - (2.0 * s0 - (n - 4.0) * x / (n * m) - 6.0 * (s0 - 2.0) * x / (3.0 * x + 2.0 * s0 * m))
}
fn lit_23_vi(inst: &Instance, x: f64) -> f64 {
    let (a, r, d1, _) = lit_sqrt_a(inst.n, x);
    flux(inst.n as f64, x, a, r, d1)
}
fn lit_31_delta(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let (a, r, d1, _) = lit_sqrt_a(inst.n, x);
    let b = 2.0 * r - x / n + x * d1;
    b - (6.0 * (n * (r + x * d1) - a * (r - x * d1))).sqrt()
}
fn lit_43(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let (a, _, _, _) = lit_sqrt_a(inst.n, x);
    a - (x / (n - 1.0) + 2.0) - ((2.0 * n).sqrt() - 2.0)
}
fn lit_52_i(inst: &Instance, x: f64) -> f64 {
    let (_, r, d1, _) = lit_blend(inst, x);
    4.0 * x * d1 * d1 - r
}
fn lit_52_ii(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let (_, _, d1, d2) = lit_blend(inst, x);
    2.0 * x * d2 + d1 - 2.0 * (n - 1.0) / (n * (n + 2.0))
}
fn lit_52_iii(inst: &Instance, x: f64) -> f64 {
    let (_, r, _, _) = lit_blend(inst, x);
    okumura(inst.n as f64, x, r)
}
fn lit_52_iv(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let d = delta_coefficient(inst.n, inst.convention).unwrap_or(f64::NAN);
    let (b, r, d1, _) = lit_blend(inst, x);
    r * (b - n) - x * d1 * (b + n) + 2.0 * (1.0 - d) * (n - 2.0)
}
fn lit_52_v(inst: &Instance, x: f64) -> f64 {
    let (b, r, d1, _) = lit_blend(inst, x);
    flux(inst.n as f64, x, b, r, d1)
}
fn lit_52_vi(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let d = delta_coefficient(inst.n, inst.convention).unwrap_or(f64::NAN);
    let (_, r, d1, _) = lit_blend(inst, x);
    2.0 * r - x / n + x * d1 - 2.0 * (d * (n - 2.0) + 2.0)
}
fn lit_54(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let d = delta_coefficient(inst.n, inst.convention).unwrap_or(f64::NAN);
    let (b, _, _, _) = lit_blend(inst, x);
    b - (x / (n - 1.0) + 2.0) - d * (n - 2.0)
}
fn lit_31_reduced(inst: &Instance, x: f64) -> f64 {
    let n = inst.n as f64;
    let m = n - 1.0;
    let s0 = (2.0 * n).sqrt();
    let r0 = (2.0 + s0).sqrt();
    (x + r0 * m) * (2.0 * s0 - (n - 4.0) * x / (n * m) - 6.0 * (s0 - 2.0) * x / (3.0 * x + 2.0 * s0 * m))
        - 2.0 * (3.0 * n * (n - 2.0)).sqrt() * m
}
fn lit_31_cubic(_: &Instance, x: f64) -> f64 {
    let r6 = 6f64.sqrt();
    3.0 / 14.0 * x.powi(3) - (8.0 - 1.5 * r6) * x * x - 56.0 * (r6 - 1.0) * x + 3136.0 * (3.0 - r6)
}

fn p0(_: u32) -> i32 {
    0
}
fn pm1(_: u32) -> i32 {
    -1
}
fn pm2(_: u32) -> i32 {
    -2
}
fn pm3(_: u32) -> i32 {
    -3
}
fn p1(_: u32) -> i32 {
    1
}
fn p2(_: u32) -> i32 {
    2
}
fn p3(_: u32) -> i32 {
    3
}
fn p_b52_vi(n: u32) -> i32 {
    if n == 4 {
        0
    } else {
        -1
    }
}

pub(crate) const F_23_I: Forms = forms!(a23_i, a23_i_tail, pm1, Some(lit_23_i));
pub(crate) const F_23_II: Forms = forms!(a23_ii, a23_ii_tail, p0, Some(lit_23_ii));
pub(crate) const F_23_III: Forms = forms!(a23_iii, a23_iii_tail, p3, Some(lit_23_iii));
pub(crate) const F_23_IV: Forms = forms!(a23_iv, a23_iv_tail, p3, Some(lit_23_iv));
pub(crate) const F_23_V: Forms = forms!(a23_v, a23_v_tail, p1, Some(lit_23_v));
pub(crate) const F_23_VI: Forms = forms!(a23_vi, a23_vi_tail, p0, Some(lit_23_vi));
pub(crate) const F_31_DELTA: Forms = forms!(l31_delta, l31_delta_tail, pm1, Some(lit_31_delta));
pub(crate) const F_31_REDUCED: Forms =
    forms!(l31_reduced, l31_reduced_tail, pm2, Some(lit_31_reduced));
pub(crate) const F_31_CUBIC: Forms = forms!(l31_cubic, l31_cubic_tail, pm3, Some(lit_31_cubic));
pub(crate) const F_43: Forms = forms!(l43_core, l43_core_tail, p0, Some(lit_43));
pub(crate) const F_52_I: Forms = forms!(b52_i, b52_i_tail, pm1, Some(lit_52_i));
pub(crate) const F_52_II: Forms = forms!(b52_ii, b52_ii_tail, p0, Some(lit_52_ii));
pub(crate) const F_52_III: Forms = forms!(b52_iii, b52_iii_tail, p1, Some(lit_52_iii));
pub(crate) const F_52_IV: Forms = forms!(b52_iv, b52_iv_tail, p2, Some(lit_52_iv));
pub(crate) const F_52_V: Forms = forms!(b52_v, b52_v_tail, p0, Some(lit_52_v));
pub(crate) const F_52_VI: Forms = forms!(b52_vi, b52_vi_tail, p_b52_vi, Some(lit_52_vi));
pub(crate) const F_54: Forms = forms!(b54_core, b54_core_tail, p0, Some(lit_54));
