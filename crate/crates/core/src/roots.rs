//! Scalar bracketed root finding.

use crate::error::{Error, Result};

/// Bisection on a sign-changing bracket followed by a few guarded secant steps.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them be zero).
/// Bisection stops once the bracket width is below `rtol * max(|lo|, |hi|)`
/// (with an absolute floor of `rtol`), then `polish` secant steps are taken
/// from the final bracket; a secant iterate leaving the bracket is discarded.
pub fn bisect_polish<F>(mut f: F, lo: f64, hi: f64, rtol: f64, polish: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoBracket(format!("f({a:.6e}) = {fa:.3e} and f({b:.6e}) = {fb:.3e} do not bracket a root")));
    }
    for _ in 0..400 {
        let width = b - a;
        if width <= rtol * a.abs().max(b.abs()).max(1.0e-300) || width <= f64::EPSILON * 4.0 {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    // secant polish inside [a, b]
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..polish {
        let denom = f1 - f0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !(x2 > a && x2 < b) {
            break;
        }
        let f2 = f(x2);
        if f2.abs() < best.1.abs() {
            best = (x2, f2);
        }
        if f2 == 0.0 {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    Ok(best.0)
}

/// Bisection on a monotone predicate: `pred(lo)` is false, `pred(hi)` is true.
/// Returns the final `(lo, hi)` with `hi - lo <= rtol * max(|lo|, |hi|, floor)`.
pub fn bisect_predicate<P>(mut pred: P, mut lo: f64, mut hi: f64, rtol: f64, floor: f64) -> (f64, f64)
where
    P: FnMut(f64) -> bool,
{
    for _ in 0..400 {
        let scale = lo.abs().max(hi.abs()).max(floor);
        if hi - lo <= rtol * scale {
            break;
        }
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if pred(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    (lo, hi)
}
