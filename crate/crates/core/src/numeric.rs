//! Scalar numerical routines shared by the bound assembly and the optimizer.

use crate::error::{Error, Result};

const MAX_SIMPSON_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[lo, hi]` with absolute error
/// target `tol`.
///
/// Each panel is accepted once the two-half estimate differs from the
/// whole-panel estimate by at most `15 * tol_panel`, and the Richardson
/// correction is added. The tolerance is split evenly between halves.
pub fn adaptive_simpson<F>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Quadrature { lo, hi, tol });
    }
    if lo == hi {
        return Ok(0.0);
    }
    let fa = f(lo);
    let fb = f(hi);
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, lo, hi, fa, fm, fb, whole, tol, MAX_SIMPSON_DEPTH)
        .ok_or(Error::Quadrature { lo, hi, tol })
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return None;
    }
    if delta.abs() <= 15.0 * tol || (b - a) <= f64::EPSILON * a.abs().max(b.abs()) * 4.0 {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Some(l + r)
}

/// Integrates over consecutive breakpoints, splitting `tol` in proportion to
/// segment length. Breakpoints must be sorted ascending.
pub fn integrate_piecewise<F>(f: &F, breakpoints: &[f64], tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (Some(&first), Some(&last)) = (breakpoints.first(), breakpoints.last()) else {
        return Ok(0.0);
    };
    let span = last - first;
    if span <= 0.0 {
        return Ok(0.0);
    }
    breakpoints.windows(2).try_fold(0.0, |acc, w| {
        let share = tol * (w[1] - w[0]) / span;
        if share <= 0.0 {
            return Ok(acc);
        }
        Ok(acc + adaptive_simpson(f, w[0], w[1], share)?)
    })
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `xtol`. Returns `None` without a sign change.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Both endpoints are evaluated as candidates, so a maximum sitting on the
/// boundary is returned exactly. Non-finite values count as `-inf`.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    if hi <= lo {
        return (lo, eval(lo));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while (b - a) > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let v = eval(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// `n` evenly spaced points from `lo` to `hi` inclusive; one point if the
/// interval is degenerate or `n <= 1`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || hi == lo {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}
