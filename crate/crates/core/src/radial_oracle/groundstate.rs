//! Rayleigh quotient of the disk ground state `φ(t) = Q_ν(cosh(t + R))` under the Steiner
//! weight `s·sinh t + cosh t`.
//!
//! With `φ(0) = 1` and the four moments
//!
//! ```text
//! a = ∫ φ'² sinh,   b₀ = ∫ φ'² cosh,   c = ∫ φ² sinh,   d = ∫ φ² cosh      (over [0, T])
//! ```
//!
//! the quotient is `g(s) = (s·a + b₀ + α)/(s·c + d)`, so one set of moments serves every `s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::scalar::Scalar;
use crate::specfun::{Argument, Degree, LegendreQ};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundState<T> {
    pub nu: T,
    pub radius: T,
    pub truncation: T,
    /// `∫ φ'² sinh t`
    pub grad_sinh: T,
    /// `∫ φ'² cosh t`
    pub grad_cosh: T,
    /// `∫ φ² sinh t`
    pub mass_sinh: T,
    /// `∫ φ² cosh t`
    pub mass_cosh: T,
}

impl<T: Scalar> GroundState<T> {
    pub fn new(nu: T, radius: T, truncation: T) -> Result<Self> {
        Self::with_legendre(nu, radius, truncation, &LegendreQ::precise())
    }

    pub fn with_legendre(nu: T, radius: T, truncation: T, legendre: &LegendreQ<T>) -> Result<Self> {
        if !(nu > T::lit(-0.5)) {
            return Err(Error::Domain(format!("ground-state degree must satisfy ν > −½, got {nu}")));
        }
        if !(truncation > T::zero()) || !truncation.is_finite() {
            return Err(Error::Validation(format!("truncation must be positive, got {truncation}")));
        }
        let degree = Degree::new(nu)?;
        let base = legendre.scaled_pair(degree, Argument::from_distance(radius)?)?;
        let nu1 = nu + T::one();

        // φ(t) = e^{−(ν+1)t} I_ν(t+R)/I_ν(R),  φ'(t) = −(ν+1) φ(t) (cosh y − ratio)/sinh y
        let sample = |t: T| -> Result<[T; 4]> {
            let arg = Argument::from_distance(t + radius)?;
            let pair = legendre.scaled_pair(degree, arg)?;
            let phi = (-nu1 * t).exp() * pair.i_nu.value / base.i_nu.value;
            let dphi = -nu1 * phi * (arg.x() - pair.ratio().value) / arg.s();
            let (sh, ch) = (t.sinh(), t.cosh());
            Ok([dphi * dphi * sh, dphi * dphi * ch, phi * phi * sh, phi * phi * ch])
        };

        let failure = std::cell::RefCell::new(None);
        let integrand = |t: T| match sample(t) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                [T::zero(); 4]
            }
        };
        let mut breaks = vec![T::zero()];
        let mut x = T::lit(0.25);
        while x < truncation {
            breaks.push(x);
            x = x * T::lit(2.0);
        }
        breaks.push(truncation);
        let tol = Tolerance::relative(T::lit(1e-11).max(T::lit(1000.0) * T::epsilon()));
        let [gs, gc, ms, mc] = integrate(integrand, &breaks, &tol)?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(Self {
            nu,
            radius,
            truncation,
            grad_sinh: gs.value,
            grad_cosh: gc.value,
            mass_sinh: ms.value,
            mass_cosh: mc.value,
        })
    }

    /// `g(s)` with boundary term `α|φ(0)|² = α`.
    pub fn quotient(&self, s: T, alpha: T) -> T {
        (s * self.grad_sinh + self.grad_cosh + alpha) / (s * self.mass_sinh + self.mass_cosh)
    }
}

/// Rayleigh quotient of `Q_ν(cosh(t + R))` under weight `c·sinh t + cosh t` on `[0, T]`,
/// with boundary term `α|φ(0)|²`.
pub fn groundstate_quotient<T: Scalar>(c: T, alpha: T, nu: T, radius: T, truncation: T) -> Result<T> {
    if !(c >= T::zero()) {
        return Err(Error::Domain(format!("Steiner coefficient must be nonnegative, got {c}")));
    }
    Ok(GroundState::new(nu, radius, truncation)?.quotient(c, alpha))
}
