//! Closed-form spectral solver for the exterior of a geodesic disk `B_R`.
//!
//! Separating variables, the radial ground state is `y(r) = Q_ν(cosh r)` with
//! `ν(ν+1) = −λ`, `ν > −½`. The Robin condition `y'(R) = α y(R)` together with the
//! three-term relation for `Q_ν'` gives
//!
//! ```text
//! α(ν, R) = −(ν+1) [cosh R · Q_ν − Q_{ν+1}] / (sinh R · Q_ν)
//!         = (ν+1) [Q_{ν+1}/(sinh R · Q_ν) − coth R]
//! ```
//!
//! evaluated at `cosh R`. For a given `α` below the critical value `α⋆(R) = α(−½, R)` the
//! lowest spectral point is the discrete eigenvalue `−ν(ν+1)`; otherwise it is the
//! essential-spectrum bottom `¼`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::scalar::{coth, Scalar};
use crate::specfun::{Argument, Degree, LegendreQ};

/// Smallest admissible disk radius.
pub const MIN_RADIUS: f64 = 1e-3;
/// `α ≥ α⋆ − THRESHOLD_TIE` is classified as the essential bottom.
pub const THRESHOLD_TIE: f64 = 1e-12;
/// Left end of the initial degree bracket is `−½ + BRACKET_OFFSET`.
pub const BRACKET_OFFSET: f64 = 1e-9;
pub const MAX_BRACKET_DOUBLINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    DiscreteEigenvalue,
    EssentialBottom,
}

impl SpectralKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectralKind::DiscreteEigenvalue => "discrete_eigenvalue",
            SpectralKind::EssentialBottom => "essential_bottom",
        }
    }
}

/// Lowest spectral point of the Robin Laplacian on `B_R^ext`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult<T> {
    pub lambda: T,
    /// Degree `ν` of the ground state; `None` at the essential bottom.
    pub nu: Option<T>,
    pub kind: SpectralKind,
    /// `|α(ν, R) − α|` at the returned root (zero at the essential bottom).
    pub residual: T,
}

impl<T: Scalar> SpectralResult<T> {
    fn essential() -> Self {
        Self {
            lambda: T::lit(crate::ESSENTIAL_BOTTOM),
            nu: None,
            kind: SpectralKind::EssentialBottom,
            residual: T::zero(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.kind == SpectralKind::DiscreteEigenvalue
    }
}

/// `λ = −ν(ν+1)`, written as `¼ − (ν+½)²`.
pub fn lambda_of_nu<T: Scalar>(nu: T) -> T {
    let shifted = nu + T::lit(0.5);
    T::lit(0.25) - shifted * shifted
}

/// `ν = (−1 + √(1 − 4λ))/2` for `λ ≤ ¼`.
pub fn nu_of_lambda<T: Scalar>(lambda: T) -> T {
    ((T::one() - T::lit(4.0) * lambda).sqrt() - T::one()) * T::lit(0.5)
}

/// Solver state: Legendre evaluator and root-finding settings.
#[derive(Debug, Clone, Copy)]
pub struct DiskSolver<T> {
    legendre: LegendreQ<T>,
    min_radius: T,
    nu_tolerance: T,
}

impl<T: Scalar> Default for DiskSolver<T> {
    fn default() -> Self {
        Self {
            legendre: LegendreQ::precise(),
            min_radius: T::lit(MIN_RADIUS),
            nu_tolerance: T::lit(1e-13).max(T::lit(8.0) * T::epsilon()),
        }
    }
}

impl<T: Scalar> DiskSolver<T> {
    pub fn with_min_radius(mut self, min_radius: T) -> Self {
        self.min_radius = min_radius;
        self
    }

    pub fn min_radius(&self) -> T {
        self.min_radius
    }

    pub fn legendre(&self) -> &LegendreQ<T> {
        &self.legendre
    }

    fn check_radius(&self, r: T) -> Result<Argument<T>> {
        if !(r >= self.min_radius) || !r.is_finite() {
            return Err(Error::Domain(format!(
                "disk radius must be finite and at least {}, got {r}",
                self.min_radius
            )));
        }
        Argument::from_distance(r)
    }

    /// `α(ν, R)` for `ν ≥ −½` (the endpoint is admissible for the integral representation).
    fn alpha_at(&self, nu: T, arg: Argument<T>) -> Result<T> {
        let pair = self.legendre.scaled_pair(Degree::new(nu)?, arg)?;
        let ratio = pair.ratio().value;
        let nu1 = nu + T::one();
        Ok(nu1 * (ratio - arg.x()) / arg.s())
    }

    /// Robin parameter for which `Q_ν(cosh r)` satisfies the boundary condition at `r = R`.
    pub fn alpha_of_nu(&self, nu: T, r: T) -> Result<T> {
        if !(nu > T::lit(-0.5)) {
            return Err(Error::Domain(format!("degree must satisfy ν > −½, got {nu}")));
        }
        let arg = self.check_radius(r)?;
        self.alpha_at(nu, arg)
    }

    /// Critical parameter `α⋆(B_R^ext) = α(−½, R)`.
    pub fn alpha_star(&self, r: T) -> Result<T> {
        let arg = self.check_radius(r)?;
        self.alpha_at(T::lit(-0.5), arg)
    }

    /// Lowest point of the spectrum for parameter `alpha` and radius `r`.
    pub fn lambda1(&self, alpha: T, r: T) -> Result<SpectralResult<T>> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("Robin parameter must be finite, got {alpha}")));
        }
        let arg = self.check_radius(r)?;
        let alpha_star = self.alpha_at(T::lit(-0.5), arg)?;
        if alpha >= alpha_star - T::lit(THRESHOLD_TIE) {
            return Ok(SpectralResult::essential());
        }

        let f = |nu: T| self.alpha_at(nu, arg).map(|a| a - alpha);
        let half = T::lit(-0.5);
        let mut lo = half + T::lit(BRACKET_OFFSET);
        let mut f_lo = f(lo)?;
        let (mut hi, mut f_hi);
        if f_lo <= T::zero() {
            // root squeezed against ν = −½
            hi = lo;
            f_hi = f_lo;
            lo = half;
            f_lo = alpha_star - alpha;
        } else {
            hi = T::one();
            f_hi = f(hi)?;
            let mut doublings = 0;
            while f_hi > T::zero() {
                if doublings == MAX_BRACKET_DOUBLINGS {
                    return Err(Error::Solver {
                        what: format!("no sign change of α(ν) − α for α = {alpha}, R = {r}"),
                        lo: lo.as_f64(),
                        hi: hi.as_f64(),
                    });
                }
                lo = hi;
                f_lo = f_hi;
                hi = hi * T::lit(2.0);
                f_hi = f(hi)?;
                doublings += 1;
            }
        }
        if !(f_lo > T::zero()) {
            // α(ν) increased somewhere on the bracket; refuse rather than guess.
            return Err(Error::Solver {
                what: format!("bracket lost its sign change for α = {alpha}, R = {r}"),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }

        let nu = brent(f, lo, hi, f_lo, f_hi, self.nu_tolerance, 200)?;
        let residual = f(nu)?.abs();
        Ok(SpectralResult {
            lambda: lambda_of_nu(nu),
            nu: Some(nu),
            kind: SpectralKind::DiscreteEigenvalue,
            residual,
        })
    }

    /// Indices `i` where `α(ν_i) ≤ α(ν_{i+1})` on an increasing degree grid, i.e. places where
    /// strict decrease of `ν ↦ α(ν, R)` fails.
    pub fn alpha_monotonicity_violations(&self, r: T, nus: &[T]) -> Result<Vec<usize>> {
        let arg = self.check_radius(r)?;
        let alphas = nus
            .iter()
            .map(|&nu| self.alpha_at(nu, arg))
            .collect::<Result<Vec<_>>>()?;
        Ok(alphas
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] >= w[0])
            .map(|(i, _)| i)
            .collect())
    }
}

/// `α(ν, R)` with the default solver.
pub fn alpha_of_nu<T: Scalar>(nu: T, r: T) -> Result<T> {
    DiskSolver::default().alpha_of_nu(nu, r)
}

/// `λ₁^α(B_R^ext)` with the default solver.
pub fn lambda1_disk<T: Scalar>(alpha: T, r: T) -> Result<SpectralResult<T>> {
    DiskSolver::default().lambda1(alpha, r)
}

/// `α⋆(B_R^ext)` with the default solver.
pub fn alpha_star_disk<T: Scalar>(r: T) -> Result<T> {
    DiskSolver::default().alpha_star(r)
}

/// `½(e^{−R} − coth R)`, the published upper bound on `α⋆(B_R^ext)`.
pub fn alpha_star_upper_bound<T: Scalar>(r: T) -> T {
    ((-r).exp() - coth(r)) * T::lit(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Closed forms at ν = 0: Q₀(x) = arcoth x, Q₁ = x Q₀ − 1, so α(0, R) = −1/(sinh R · arcoth(cosh R)).
    fn alpha_nu0(r: f64) -> f64 {
        let q0 = 0.5 * (2.0 / (r.cosh() - 1.0)).ln_1p();
        -1.0 / (r.sinh() * q0)
    }

    #[test]
    fn alpha_at_nu_zero_matches_closed_form() {
        for &r in &[0.01, 0.5, 1.0, 3.0] {
            let a = alpha_of_nu(0.0, r).unwrap();
            assert!((a - alpha_nu0(r)).abs() < 1e-11 * a.abs(), "R = {r}: {a}");
        }
        let a = alpha_of_nu(0.0_f64, 1.0).unwrap();
        assert!((a + 1.102_315_749_122_578).abs() < 1e-11);
    }

    #[test]
    fn alpha_goes_to_minus_infinity_with_degree() {
        let a5 = alpha_of_nu(5.0, 1.0).unwrap();
        let a50 = alpha_of_nu(50.0, 1.0).unwrap();
        assert!(a50 < a5);
        assert!(a50 < -50.0);
    }

    #[test]
    fn alpha_bounded_below_by_minus_nu1_coth() {
        for &r in &[0.1, 0.5, 1.0, 2.0, 6.0] {
            for &nu in &[-0.45, -0.2, 0.0, 0.7, 2.0, 8.0] {
                let a = alpha_of_nu(nu, r).unwrap();
                assert!(a < 0.0);
                assert!(a > -(nu + 1.0) * coth(r), "ν={nu} R={r}");
            }
        }
    }

    #[test]
    fn alpha_decreasing_in_degree() {
        let solver = DiskSolver::<f64>::default();
        let grid: Vec<f64> = (0..40).map(|i| -0.5 + 1e-6 + 0.1 * i as f64).collect();
        for &r in &[0.05, 0.5, 1.0, 4.0] {
            assert!(solver.alpha_monotonicity_violations(r, &grid).unwrap().is_empty());
        }
    }

    #[test]
    fn degree_round_trip() {
        let a = alpha_of_nu(1.0_f64, 1.0).unwrap();
        let res = lambda1_disk(a, 1.0).unwrap();
        assert_eq!(res.kind, SpectralKind::DiscreteEigenvalue);
        assert!((res.lambda + 2.0).abs() < 1e-11);
        assert!((res.nu.unwrap() - 1.0).abs() < 1e-12);
        assert!(res.residual <= 1e-10);
    }

    #[test]
    fn zero_parameter_is_essential() {
        for &r in &[0.01, 0.3, 1.0, 5.0] {
            let res = lambda1_disk(0.0, r).unwrap();
            assert_eq!(res.kind, SpectralKind::EssentialBottom);
            assert_eq!(res.lambda, 0.25);
            assert_eq!(res.nu, None);
        }
    }

    #[test]
    fn strongly_attractive_boundary() {
        let res = lambda1_disk(-10.0, 1.0).unwrap();
        assert!(res.is_discrete());
        assert!(res.lambda < -20.0);
        assert!(res.residual <= 1e-10 * 10.0);
    }

    #[test]
    fn threshold_classification() {
        let r = 1.0;
        let star = alpha_star_disk(r).unwrap();
        assert!(star < 0.0);
        assert_eq!(lambda1_disk(star, r).unwrap().kind, SpectralKind::EssentialBottom);
        let just_below = lambda1_disk(star - 1e-6, r).unwrap();
        assert!(just_below.is_discrete());
        assert!(just_below.lambda < 0.25 && just_below.lambda > 0.2499);
    }

    #[test]
    fn critical_parameter_large_radius() {
        let v = alpha_star_disk(20.0).unwrap();
        assert!(v > -0.51 && v < -0.49, "{v}");
    }

    #[test]
    fn upper_bound_values() {
        assert!((alpha_star_upper_bound(1.0_f64) + 0.472_577_9).abs() < 1e-7);
        assert!(alpha_star_upper_bound(1e-6_f64) < -1e5);
        assert!((alpha_star_upper_bound(40.0_f64) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn radius_below_minimum_rejected() {
        assert!(matches!(lambda1_disk(-1.0, 1e-4), Err(Error::Domain(_))));
        assert!(matches!(alpha_of_nu(-0.5, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_nu_round_trip() {
        for &nu in &[-0.49_f64, -0.3, 0.0, 0.5, 3.0, 11.0] {
            let l = lambda_of_nu(nu);
            assert!((l + nu * (nu + 1.0)).abs() <= 1e-12 * l.abs().max(1e-300) + 1e-15);
            assert!((nu_of_lambda(l) - nu).abs() < 1e-12 * nu.abs().max(1.0));
        }
    }

    #[test]
    fn single_precision_round_trip() {
        let solver = DiskSolver::<f32>::default();
        let a = solver.alpha_of_nu(1.0, 1.0).unwrap();
        let res = solver.lambda1(a, 1.0).unwrap();
        assert!((res.lambda + 2.0).abs() < 1e-3);
    }
}
