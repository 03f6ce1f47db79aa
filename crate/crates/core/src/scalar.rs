//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the solvers are generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot hold finite `f64`s,
    /// which never happens for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    /// Lossy conversion used for error payloads and reports.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `coth x`.
#[inline]
pub fn coth<T: Scalar>(x: T) -> T {
    x.tanh().recip()
}

/// `arcoth y = ½ ln((y + 1)/(y − 1))` for `y > 1`, written as `½ ln1p(2/(y − 1))`
/// so that large `y` does not cancel.
#[inline]
pub fn arcoth<T: Scalar>(y: T) -> T {
    let two = T::lit(2.0);
    (two / (y - T::one())).ln_1p() / two
}

/// `arcosh(1 + z)` for `z ≥ 0`, via `ln1p(z + √(z(z + 2)))`; exact near `z = 0`.
#[inline]
pub fn arcosh_1p<T: Scalar>(z: T) -> T {
    (z + (z * (z + T::lit(2.0))).sqrt()).ln_1p()
}

/// `arsinh y = sign(y) ln1p(|y| + y²/(1 + √(1 + y²)))`.
#[inline]
pub fn arsinh<T: Scalar>(y: T) -> T {
    let a = y.abs();
    let r = (a + a * a / (T::one() + (T::one() + a * a).sqrt())).ln_1p();
    if y < T::zero() {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_hyperbolics_round_trip() {
        for &r in &[1e-6_f64, 1e-3, 0.5, 1.0, 3.0, 15.0] {
            if r < 10.0 {
                assert!((arcoth(coth(r)) - r).abs() <= 1e-9 * r.max(1.0), "arcoth at {r}");
            }
            assert!((arcosh_1p(2.0 * (0.5 * r).sinh().powi(2)) - r).abs() <= 1e-12 * r.max(1.0));
            assert!((arsinh(r.sinh()) - r).abs() <= 1e-13 * r.max(1.0));
            assert!((arsinh(-r.sinh()) + r).abs() <= 1e-13 * r.max(1.0));
        }
        assert!((arcoth(1.5_f64) - 0.5 * 5.0_f64.ln()).abs() < 1e-15);
    }
}
