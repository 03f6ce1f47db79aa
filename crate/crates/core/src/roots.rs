//! Brent's method on a sign-changing bracket.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finds a root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite sign (or zero).
/// Stops when the bracket is narrower than `xtol` (plus a few ulps of the iterate).
pub fn brent<T, F>(mut f: F, a: T, b: T, fa: T, fb: T, xtol: T, max_iter: usize) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(Error::Solver {
            what: "root not bracketed".into(),
            lo: a.as_f64(),
            hi: b.as_f64(),
        });
    }

    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points are distinct
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (T::lit(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol {
            b + d
        } else if m > T::zero() {
            b + tol
        } else {
            b - tol
        };
        fb = f(b)?;
    }
    Err(Error::Solver {
        what: "Brent iteration budget exhausted".into(),
        lo: b.min(c).as_f64(),
        hi: b.max(c).as_f64(),
    })
}
