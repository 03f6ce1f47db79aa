//! Legendre functions of the second kind `Q_ν(x) = Q⁰_ν(x)` for real degree `ν > −1`
//! and argument `x > 1`.
//!
//! Evaluation uses the integral representation (normalising prefactor equal to 1)
//!
//! ```text
//! Q_ν(x) = ∫₀^∞ (x + √(x²−1) cosh t)^{−(ν+1)} dt
//! ```
//!
//! With `u = e^{−t}` and `s = √(x²−1)` this becomes
//! `Q_ν(x) = (x+s)^{−(ν+1)} ∫₀¹ u^ν [2(x+s)/(2xu + s(1+u²))]^{ν+1} du`.
//! The bracket equals 1 at `u = 1` and the prefactor carries the exponential decay,
//! so the scaled integral stays O(1) even where `Q_ν` itself under- or overflows.
//! The `u^ν` endpoint behaviour is handled by a geometrically graded initial partition
//! followed by adaptive Gauss–Kronrod refinement.
//!
//! Derivatives come from the three-term relation
//! `(1 − x²) Q_ν'(x) = (ν+1) x Q_ν(x) − (ν+1) Q_{ν+1}(x)`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate, Tolerance};
use crate::scalar::Scalar;

/// Arguments with `x − 1` at or below this are refused.
pub const NEAR_ONE_CUTOFF: f64 = 1e-8;

/// Degree `ν > −1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Degree<T>(T);

impl<T: Scalar> Degree<T> {
    pub fn new(nu: T) -> Result<Self> {
        if nu > -T::one() && nu.is_finite() {
            Ok(Self(nu))
        } else {
            Err(Error::Domain(format!("Legendre degree must satisfy ν > −1, got {nu}")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Argument `x > 1`, stored together with `√(x²−1)`, `x − 1` and `ln(x + √(x²−1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argument<T> {
    x: T,
    s: T,
    log_scale: T,
}

impl<T: Scalar> Argument<T> {
    pub fn new(x: T) -> Result<Self> {
        if !(x > T::one()) || !x.is_finite() {
            return Err(Error::Domain(format!("Legendre argument must satisfy x > 1, got {x}")));
        }
        let xm1 = x - T::one();
        Self::check_near_one(xm1)?;
        let s = (xm1 * (x + T::one())).sqrt();
        Ok(Self {
            x,
            s,
            log_scale: (xm1 + s).ln_1p(),
        })
    }

    /// `x = cosh r`, with `√(x²−1) = sinh r` taken exactly.
    pub fn from_distance(r: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::Domain(format!("distance must be positive, got {r}")));
        }
        let h = (r * T::lit(0.5)).sinh();
        Self::check_near_one(T::lit(2.0) * h * h)?;
        Ok(Self {
            x: r.cosh(),
            s: r.sinh(),
            log_scale: r,
        })
    }

    fn check_near_one(xm1: T) -> Result<()> {
        if xm1 <= T::lit(NEAR_ONE_CUTOFF) {
            return Err(Error::Accuracy {
                what: format!("argument too close to 1 (x − 1 = {xm1:e})"),
                estimate: f64::INFINITY,
                requested: NEAR_ONE_CUTOFF,
            });
        }
        Ok(())
    }

    pub fn x(&self) -> T {
        self.x
    }

    /// `√(x² − 1)`
    pub fn s(&self) -> T {
        self.s
    }

    /// `ln(x + √(x² − 1))`
    pub fn log_scale(&self) -> T {
        self.log_scale
    }
}

/// The scaled integrals `I_ν` and `I_{ν+1}` at a common argument, where
/// `Q_μ(x) = (x+s)^{−(μ+1)} I_μ`. Both share quadrature nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPair<T> {
    pub nu: T,
    pub arg: Argument<T>,
    pub i_nu: Estimate<T>,
    pub i_next: Estimate<T>,
}

impl<T: Scalar> ScaledPair<T> {
    /// `Q_{ν+1}/Q_ν`
    pub fn ratio(&self) -> Estimate<T> {
        let value = self.i_next.value / (self.i_nu.value * (self.arg.x + self.arg.s));
        let rel = self.i_nu.error / self.i_nu.value + self.i_next.error / self.i_next.value;
        Estimate {
            value,
            error: value * rel,
        }
    }

    /// `Q_ν(x)`.
    pub fn q_nu(&self) -> Estimate<T> {
        let f = (-(self.nu + T::one()) * self.arg.log_scale).exp();
        Estimate {
            value: f * self.i_nu.value,
            error: f * self.i_nu.error,
        }
    }

    /// `Q_ν'(x)`, always negative.
    pub fn derivative(&self) -> Estimate<T> {
        let nu1 = self.nu + T::one();
        let Argument { x, s, log_scale } = self.arg;
        let f = nu1 * (-nu1 * log_scale).exp() / (s * s);
        let bracket = x * self.i_nu.value - self.i_next.value / (x + s);
        let err = x * self.i_nu.error + self.i_next.error / (x + s);
        Estimate {
            value: -f * bracket,
            error: f * err,
        }
    }

    /// `(x Q_ν − Q_{ν+1}) / Q_ν`, the logarithmic-derivative bracket: `Q_ν'/Q_ν = −(ν+1)·this/s²`.
    pub fn log_derivative_bracket(&self) -> T {
        self.arg.x - self.ratio().value
    }
}

/// Evaluator carrying a quadrature tolerance; cheap to copy and safe to share.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreQ<T> {
    tolerance: Tolerance<T>,
}

impl<T: Scalar> Default for LegendreQ<T> {
    /// Absolute 1e−12 plus relative 1e−10 on the returned value.
    fn default() -> Self {
        Self::new(Tolerance::new(T::lit(1e-12), T::lit(1e-10)))
    }
}

impl<T: Scalar> LegendreQ<T> {
    pub fn new(tolerance: Tolerance<T>) -> Self {
        Self { tolerance }
    }

    /// Purely relative tolerance of 1e−13 (clamped to the scalar's precision).
    pub fn precise() -> Self {
        Self::new(Tolerance::relative(T::lit(1e-13).max(T::lit(100.0) * T::epsilon())))
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tolerance
    }

    fn breakpoints(nu: T) -> Vec<T> {
        let levels = if nu < T::zero() { 40 } else { 12 };
        let mut points = Vec::with_capacity(levels + 2);
        points.push(T::zero());
        for k in (0..=levels).rev() {
            points.push(T::lit(0.5_f64.powi(k as i32)));
        }
        points
    }

    /// Tolerance on the scaled integral equivalent to `self.tolerance` on `Q_ν`.
    fn scaled_tolerance(&self, nu: T, arg: &Argument<T>) -> Tolerance<T> {
        let mut tol = self.tolerance;
        if tol.abs > T::zero() {
            let growth = ((nu + T::one()) * arg.log_scale).exp();
            tol.abs = (tol.abs * growth).min(T::max_value());
        }
        tol
    }

    /// `I_ν` and `I_{ν+1}` from one adaptive pass.
    pub fn scaled_pair(&self, nu: Degree<T>, arg: Argument<T>) -> Result<ScaledPair<T>> {
        let nu = nu.get();
        let (x, s) = (arg.x, arg.s);
        let two = T::lit(2.0);
        let top = two * (x + s);
        let nu1 = nu + T::one();
        let integrand = |u: T| {
            if u <= T::zero() {
                return [T::zero(); 2];
            }
            let bracket = top / (two * x * u + s * (T::one() + u * u));
            let mut log_g = nu1 * bracket.ln();
            if nu != T::zero() {
                log_g = log_g + nu * u.ln();
            }
            let g = log_g.exp();
            [g, g * u * bracket]
        };
        let [i_nu, i_next] = integrate(
            integrand,
            &Self::breakpoints(nu),
            &self.scaled_tolerance(nu, &arg),
        )?;
        if !(i_nu.value > T::zero()) || !(i_next.value > T::zero()) {
            return Err(Error::Accuracy {
                what: format!("nonpositive Legendre integral at ν = {nu}, x = {x}"),
                estimate: i_nu.error.as_f64(),
                requested: 0.0,
            });
        }
        Ok(ScaledPair {
            nu,
            arg,
            i_nu,
            i_next,
        })
    }

    /// `Q_ν(x)` with its error estimate.
    pub fn value(&self, nu: Degree<T>, arg: Argument<T>) -> Result<Estimate<T>> {
        let nu_v = nu.get();
        let (x, s) = (arg.x, arg.s);
        let two = T::lit(2.0);
        let top = two * (x + s);
        let nu1 = nu_v + T::one();
        let integrand = |u: T| {
            if u <= T::zero() {
                return [T::zero()];
            }
            let bracket = top / (two * x * u + s * (T::one() + u * u));
            let mut log_g = nu1 * bracket.ln();
            if nu_v != T::zero() {
                log_g = log_g + nu_v * u.ln();
            }
            [log_g.exp()]
        };
        let [i] = integrate(
            integrand,
            &Self::breakpoints(nu_v),
            &self.scaled_tolerance(nu_v, &arg),
        )?;
        let f = (-nu1 * arg.log_scale).exp();
        Ok(Estimate {
            value: f * i.value,
            error: f * i.error,
        })
    }

    /// `Q_{ν+1}(x) / Q_ν(x)`, bounded above by `1/(x + √(x²−1))`.
    pub fn ratio(&self, nu: Degree<T>, arg: Argument<T>) -> Result<Estimate<T>> {
        Ok(self.scaled_pair(nu, arg)?.ratio())
    }

    /// `Q_ν'(x)` via the three-term relation.
    pub fn derivative(&self, nu: Degree<T>, arg: Argument<T>) -> Result<Estimate<T>> {
        Ok(self.scaled_pair(nu, arg)?.derivative())
    }
}

/// `Q_ν(x)` at the default tolerance.
pub fn legendre_q<T: Scalar>(nu: T, x: T) -> Result<T> {
    LegendreQ::default()
        .value(Degree::new(nu)?, Argument::new(x)?)
        .map(|e| e.value)
}

/// `Q_{ν+1}(x) / Q_ν(x)` at the default tolerance.
pub fn legendre_q_ratio<T: Scalar>(nu: T, x: T) -> Result<T> {
    LegendreQ::default()
        .ratio(Degree::new(nu)?, Argument::new(x)?)
        .map(|e| e.value)
}

/// `dQ_ν/dx` at the default tolerance.
pub fn legendre_q_deriv<T: Scalar>(nu: T, x: T) -> Result<T> {
    LegendreQ::default()
        .derivative(Degree::new(nu)?, Argument::new(x)?)
        .map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q0(x: f64) -> f64 {
        0.5 * (2.0 / (x - 1.0)).ln_1p()
    }

    #[test]
    fn closed_forms_at_two() {
        let v = legendre_q(0.0, 2.0).unwrap();
        assert!((v - 0.5 * 3f64.ln()).abs() < 1e-12);
        let v = legendre_q(1.0, 2.0).unwrap();
        assert!((v - (3f64.ln() - 1.0)).abs() < 1e-12);
        assert!((v - 0.098_612_3).abs() < 1e-7);
    }

    #[test]
    fn ratio_and_derivative_at_two() {
        let r = legendre_q_ratio(0.0, 2.0).unwrap();
        let expected = (3f64.ln() - 1.0) / (0.5 * 3f64.ln());
        assert!((r - expected).abs() < 1e-11);
        assert!((r - 0.179_521_5).abs() < 1e-7);
        assert!(r < 1.0 / (2.0 + 3f64.sqrt()));
        let d = legendre_q_deriv(0.0_f64, 2.0).unwrap();
        assert!((d + 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn from_distance_matches_new() {
        let q = LegendreQ::<f64>::precise();
        let nu = Degree::new(0.7).unwrap();
        let a = q.value(nu, Argument::from_distance(1.3).unwrap()).unwrap();
        let b = q.value(nu, Argument::new(1.3f64.cosh()).unwrap()).unwrap();
        assert!((a.value - b.value).abs() < 1e-13 * a.value);
    }

    #[test]
    fn near_one_argument() {
        // 1 + 1e-6 is still admissible
        let v = legendre_q(0.0, 1.0 + 1e-6).unwrap();
        assert!((v - q0(1.0 + 1e-6)).abs() < 1e-9 * v);
        assert!(matches!(legendre_q(0.0, 1.0 + 1e-9), Err(Error::Accuracy { .. })));
        assert!(matches!(legendre_q(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(legendre_q(0.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(legendre_q(-1.0, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_near_minus_one() {
        // grows like 1/(ν+1) as ν → −1⁺
        let v = legendre_q(-0.95_f64, 3.0).unwrap();
        assert!(v.is_finite() && v > 1.0);
    }

    #[test]
    fn error_estimate_is_reported() {
        let e = LegendreQ::<f64>::default()
            .value(Degree::new(0.3).unwrap(), Argument::new(4.0).unwrap())
            .unwrap();
        assert!(e.error >= 0.0 && e.error <= 1e-12 + 1e-10 * e.value);
    }

    #[test]
    fn single_precision_smoke() {
        let v = legendre_q(0.0_f32, 2.0_f32).unwrap();
        assert!((v - 0.549_306_1).abs() < 1e-5);
    }
}
