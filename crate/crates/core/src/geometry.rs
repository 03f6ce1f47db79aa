//! Hyperbolic convex geometry reduced to two numbers: boundary length and enclosed area.
//!
//! Curvature is normalised to −1. A geodesic disk of radius `r` has area
//! `2π(cosh r − 1)` and perimeter `2π sinh r`; every bounded convex domain satisfies
//! `L² ≥ A² + 4πA`, with equality only for disks.
//!
//! Inverse hyperbolic functions are evaluated through logarithmic closed forms
//! (see [`crate::scalar`]): `arcoth y = ½ ln1p(2/(y−1))`,
//! `arcosh(1+z) = ln1p(z + √(z(z+2)))`, `arsinh y = ln1p(y + y²/(1+√(1+y²)))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{arcosh_1p, arcoth, arsinh, Scalar};

/// Default relative slack (on `L²`) of the isoperimetric admissibility test.
pub const DEFAULT_ISOPERIMETRIC_SLACK: f64 = 1e-12;

/// A bounded geodesically convex domain, described by its perimeter and area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec<T> {
    pub perimeter: T,
    pub area: T,
}

/// A geodesic disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskSpec<T> {
    pub radius: T,
}

impl<T: Scalar> DiskSpec<T> {
    pub fn new(radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::Domain(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self { radius })
    }

    pub fn domain(&self) -> DomainSpec<T> {
        let (area, perimeter) = disk_parts(self.radius);
        DomainSpec { perimeter, area }
    }
}

impl<T: Scalar> DomainSpec<T> {
    /// Builds a spec without validating it; see [`validate_domain_spec`].
    pub fn new(perimeter: T, area: T) -> Self {
        Self { perimeter, area }
    }

    /// The disk of radius `r`.
    pub fn disk(r: T) -> Result<Self> {
        Ok(DiskSpec::new(r)?.domain())
    }

    /// Returns `self` if it passes the isoperimetric admissibility test with default slack.
    pub fn validated(self) -> Result<Self> {
        let check = validate_domain_spec(&self, T::lit(DEFAULT_ISOPERIMETRIC_SLACK));
        if check.valid {
            Ok(self)
        } else {
            Err(Error::Validation(check.diagnostic))
        }
    }
}

fn disk_parts<T: Scalar>(r: T) -> (T, T) {
    let two_pi = T::TAU();
    let sh = (r * T::lit(0.5)).sinh();
    // cosh r − 1 = 2 sinh²(r/2)
    (two_pi * T::lit(2.0) * sh * sh, two_pi * r.sinh())
}

/// Area and perimeter of the geodesic disk of radius `r`.
pub fn disk_geometry<T: Scalar>(r: T) -> Result<(T, T)> {
    DiskSpec::new(r)?;
    Ok(disk_parts(r))
}

/// Perimeter of the outer parallel set at distance `t` (hyperbolic Steiner formula):
/// `cosh t · L + sinh t · (2π + A)`.
pub fn parallel_perimeter<T: Scalar>(spec: &DomainSpec<T>, t: T) -> Result<T> {
    let spec = spec.validated()?;
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!("parallel distance must be nonnegative, got {t}")));
    }
    Ok(t.cosh() * spec.perimeter + t.sinh() * (T::TAU() + spec.area))
}

/// Averaged geodesic curvature `(A + 2π)/L`; equals `coth R` for the disk of radius `R`.
pub fn avg_curvature<T: Scalar>(spec: &DomainSpec<T>) -> Result<T> {
    let spec = spec.validated()?;
    Ok((spec.area + T::TAU()) / spec.perimeter)
}

/// Radius `R` with `coth R = (A + 2π)/L`.
///
/// `None` when the averaged curvature is at most 1: then every radius satisfies
/// `coth R ≥ (A + 2π)/L`.
pub fn matching_disk_radius<T: Scalar>(spec: &DomainSpec<T>) -> Result<Option<T>> {
    let c = avg_curvature(spec)?;
    if c <= T::one() {
        Ok(None)
    } else {
        Ok(Some(arcoth(c)))
    }
}

/// Radii of the disks with the same area and with the same perimeter as `spec`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDisks<T> {
    pub area_radius: T,
    pub perimeter_radius: T,
}

pub fn comparison_disks<T: Scalar>(spec: &DomainSpec<T>) -> Result<ComparisonDisks<T>> {
    let spec = spec.validated()?;
    Ok(ComparisonDisks {
        area_radius: arcosh_1p(spec.area / T::TAU()),
        perimeter_radius: arsinh(spec.perimeter / T::TAU()),
    })
}

/// Outcome of the isoperimetric admissibility test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoperimetricCheck<T> {
    pub valid: bool,
    /// `L² − A² − 4πA`
    pub deficit: T,
    /// Deficit divided by `L²` (zero for disks).
    pub relative_deficit: T,
    pub diagnostic: String,
}

/// Checks `L > 0`, `A > 0` and `L² ≥ A² + 4πA − slack·L²`.
pub fn validate_domain_spec<T: Scalar>(spec: &DomainSpec<T>, slack: T) -> IsoperimetricCheck<T> {
    let (l, a) = (spec.perimeter, spec.area);
    let four_pi = T::lit(2.0) * T::TAU();
    let deficit = l * l - a * a - four_pi * a;
    let relative_deficit = deficit / (l * l);
    let (valid, diagnostic) = if !(l > T::zero()) || !l.is_finite() {
        (false, format!("perimeter must be positive and finite, got {l}"))
    } else if !(a > T::zero()) || !a.is_finite() {
        (false, format!("area must be positive and finite, got {a}"))
    } else if relative_deficit < -slack {
        (
            false,
            format!(
                "isoperimetric inequality violated: L² − A² − 4πA = {deficit:e} (relative {relative_deficit:e})"
            ),
        )
    } else {
        (true, format!("isoperimetric deficit {deficit:e} (relative {relative_deficit:e})"))
    };
    IsoperimetricCheck {
        valid,
        deficit,
        relative_deficit,
        diagnostic,
    }
}
