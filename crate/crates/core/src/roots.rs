//! Bracketed scalar root finders.

use crate::error::{Error, Result};
use crate::real::Real;

/// Plain bisection on `[lo, hi]`. Requires a sign change (an endpoint value
/// of exactly zero counts). Runs until the interval is below `xtol` or no
/// representable midpoint remains.
pub(crate) fn bisect<T: Real, F: Fn(T) -> T>(mut lo: T, mut hi: T, f: F, xtol: T) -> Result<T> {
    let flo = f(lo);
    if flo == T::zero() {
        return Ok(lo);
    }
    let fhi = f(hi);
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::NoBracket("bisection interval"));
    }
    loop {
        let mid = (lo + hi).half();
        if mid == lo || mid == hi || (hi - lo).abs() <= xtol {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Newton iteration safeguarded by bisection (the `rtsafe` scheme).
/// `f_df` returns the residual and its derivative. Requires a sign change
/// on `[lo, hi]`.
pub(crate) fn newton_bisect<T: Real, F: Fn(T) -> (T, T)>(
    lo: T,
    hi: T,
    f_df: F,
    xtol: T,
    max_iter: usize,
) -> Result<T> {
    let (flo, _) = f_df(lo);
    if flo == T::zero() {
        return Ok(lo);
    }
    let (fhi, _) = f_df(hi);
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::NoBracket("newton-bisection interval"));
    }
    // orient so f(xl) < 0 < f(xh)
    let (mut xl, mut xh) = if flo < T::zero() { (lo, hi) } else { (hi, lo) };
    let mut x = (lo + hi).half();
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f_df(x);
    for _ in 0..max_iter {
        let newton_escapes = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > T::zero();
        let newton_slow = (T::of(2.0) * fx).abs() > (dx_old * dfx).abs();
        if newton_escapes || newton_slow || dfx == T::zero() {
            dx_old = dx;
            dx = (xh - xl).half();
            let next = xl + dx;
            if next == xl {
                return Ok(x);
            }
            x = next;
        } else {
            dx_old = dx;
            dx = fx / dfx;
            let prev = x;
            x = x - dx;
            if prev == x {
                return Ok(x);
            }
        }
        if dx.abs() < xtol {
            return Ok(x);
        }
        let r = f_df(x);
        fx = r.0;
        dfx = r.1;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx < T::zero() {
            xl = x;
        } else {
            xh = x;
        }
    }
    Err(Error::NoConvergence)
}
