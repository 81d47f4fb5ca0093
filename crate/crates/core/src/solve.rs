//! Bracketed scalar root finding shared by the solution generators.

use crate::error::{Error, Result};
use crate::num::Real;

/// Root of `f` on `[lo, hi]` by bisection refined with Newton steps.
///
/// `f` must change sign over the bracket. Newton steps (using `df`) are taken
/// whenever they stay inside the current bracket, falling back to bisection
/// otherwise, so convergence is guaranteed. Stops when `|f| <= f_tol` or the
/// bracket width falls below `x_tol`.
pub fn bisect_newton<R: Real>(
    mut f: impl FnMut(R) -> R,
    mut df: impl FnMut(R) -> R,
    lo: R,
    hi: R,
    f_tol: R,
    x_tol: R,
) -> Result<R> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == R::zero() {
        return Ok(lo);
    }
    if fhi == R::zero() {
        return Ok(hi);
    }
    if (flo > R::zero()) == (fhi > R::zero()) {
        return Err(Error::RootFind(format!(
            "no sign change on bracket [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    let mut x = (lo + hi).half();
    for _ in 0..200 {
        let fx = f(x);
        if fx.abs() <= f_tol {
            return Ok(x);
        }
        if (fx > R::zero()) == (flo > R::zero()) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if hi - lo <= x_tol {
            return Ok((lo + hi).half());
        }
        let slope = df(x);
        let newton = x - fx / slope;
        x = if slope != R::zero() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi).half()
        };
    }
    Err(Error::RootFind(format!("no convergence; bracket [{lo}, {hi}]")))
}

/// Plain bisection for functions without a cheap derivative.
pub fn bisect<R: Real>(
    mut f: impl FnMut(R) -> R,
    lo: R,
    hi: R,
    x_tol: R,
) -> Result<R> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    if flo == R::zero() {
        return Ok(lo);
    }
    if fhi == R::zero() {
        return Ok(hi);
    }
    if (flo > R::zero()) == (fhi > R::zero()) {
        return Err(Error::RootFind(format!(
            "no sign change on bracket [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    while hi - lo > x_tol {
        let mid = (lo + hi).half();
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > R::zero()) == (flo > R::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi).half())
}
