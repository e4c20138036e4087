use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumReport {
    pub x_star: f64,
    pub f_star: f64,
    pub mode: Mode,
    pub refinement_tolerance: f64,
}

const GRID: usize = 2000;

/// Grid scan of `[lo, hi]` followed by golden-section search around the best
/// grid point, stopped once the bracket is narrower than `tol`.
pub fn find_extremum_fn(
    f: &dyn Fn(f64) -> f64,
    mode: Mode,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ExtremumReport> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || !(tol > 0.0) {
        return Err(Error::EmptyDomain);
    }
    let sign = match mode {
        Mode::Min => 1.0,
        Mode::Max => -1.0,
    };
    let g = |x: f64| {
        let v = sign * f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let h = (hi - lo) / GRID as f64;
    let at = |i: usize| if i == GRID { hi } else { lo + h * i as f64 };
    let best = (0..=GRID)
        .map(|i| (i, g(at(i))))
        .fold((0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let (mut a, mut b) = (at(best.0.saturating_sub(1)), at((best.0 + 1).min(GRID)));

    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
    }
    let mut x = 0.5 * (a + b);
    let mut v = g(x);
    // the optimum may sit on the boundary
    for cand in [lo, hi, at(best.0)] {
        let gv = g(cand);
        if gv < v {
            x = cand;
            v = gv;
        }
    }
    Ok(ExtremumReport { x_star: x, f_star: f(x), mode, refinement_tolerance: tol })
}
