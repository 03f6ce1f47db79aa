//! Lowest spectral point of the Robin Laplacian on the exterior of a geodesic disk in the
//! hyperbolic plane, an independent finite-element oracle for the underlying radial
//! Rayleigh quotients, and numerical checks of the comparison inequalities for convex
//! domains described by perimeter and area.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases
//! below name the double-precision instantiations used by the verifier and CLI.

pub mod disk_solver;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod radial_oracle;
pub mod roots;
pub mod scalar;
pub mod specfun;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Bottom of the essential spectrum, `¼`, for every Robin parameter.
pub const ESSENTIAL_BOTTOM: f64 = 0.25;

pub type DomainSpec64 = geometry::DomainSpec<f64>;
pub type DiskSpec64 = geometry::DiskSpec<f64>;
pub type SpectralResult64 = disk_solver::SpectralResult<f64>;
pub type DiskSolver64 = disk_solver::DiskSolver<f64>;
pub type WeightSpec64 = radial_oracle::WeightSpec<f64>;
pub type RadialProblem64 = radial_oracle::RadialProblem<f64>;
pub type Numerics64 = radial_oracle::Numerics<f64>;

pub type DomainSpec32 = geometry::DomainSpec<f32>;
pub type SpectralResult32 = disk_solver::SpectralResult<f32>;
pub type RadialProblem32 = radial_oracle::RadialProblem<f32>;
