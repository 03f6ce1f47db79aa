//! Finite-element oracle for one-dimensional weighted Rayleigh quotients on `[0, ∞)`:
//!
//! ```text
//! m(w, α) = inf_ψ [∫ |ψ'|² w dt + α·w_b·|ψ(0)|²] / ∫ |ψ|² w dt
//! ```
//!
//! truncated to `[0, T]` and discretised with continuous piecewise-linear elements.
//! This path shares no code with the closed-form disk solver beyond the scalar trait,
//! which is what makes it useful as a cross-check.

mod grid;
mod groundstate;
mod sturm;

pub use grid::{graded_mesh, MAX_CELL_RATIO};
pub use groundstate::{groundstate_quotient, GroundState};
pub use sturm::{count_below, lowest_eigenvalue, LaplacianPencil, Pencil, Tridiagonal, TridiagonalPencil};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{coth, Scalar};

/// Policy floor on the truncation length.
pub const MIN_TRUNCATION: f64 = 10.0;
/// Policy floor on the number of cells.
pub const MIN_GRID_POINTS: usize = 100;
/// Minima above `¼ − DISCRETE_MARGIN` are not reported as discrete eigenvalues.
pub const DISCRETE_MARGIN: f64 = 1e-6;

/// Shape of the weight; every variant is normalised so that `w(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind<T> {
    /// `c·sinh t + cosh t`, the parallel-set perimeter of a convex domain over its perimeter.
    Steiner { c: T },
    /// `sinh(b + t)/sinh b`.
    SinhShift { b: T },
    /// `cosh(b + t)/cosh b`.
    CoshShift { b: T },
    /// `e^{b+t}/e^b = e^t`.
    ExpShift { b: T },
}

/// A weight `scale·w(t)` together with the boundary coefficient `scale·w(0) = scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec<T> {
    pub kind: WeightKind<T>,
    pub scale: T,
}

impl<T: Scalar> WeightSpec<T> {
    pub fn new(kind: WeightKind<T>) -> Self {
        Self {
            kind,
            scale: T::one(),
        }
    }

    pub fn steiner(c: T) -> Self {
        Self::new(WeightKind::Steiner { c })
    }

    pub fn sinh_shift(b: T) -> Self {
        Self::new(WeightKind::SinhShift { b })
    }

    pub fn cosh_shift(b: T) -> Self {
        Self::new(WeightKind::CoshShift { b })
    }

    pub fn exp_shift(b: T) -> Self {
        Self::new(WeightKind::ExpShift { b })
    }

    pub fn scaled(mut self, factor: T) -> Self {
        self.scale = self.scale * factor;
        self
    }

    /// Factor multiplying `α|ψ(0)|²`.
    pub fn boundary_weight(&self) -> T {
        self.scale
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            WeightKind::Steiner { c } => c >= T::zero() && c.is_finite(),
            WeightKind::SinhShift { b } | WeightKind::ExpShift { b } => b > T::zero() && b.is_finite(),
            WeightKind::CoshShift { b } => b >= T::zero() && b.is_finite(),
        };
        if !ok {
            return Err(Error::Validation(format!("invalid weight parameters: {:?}", self.kind)));
        }
        if !(self.scale > T::zero()) || !self.scale.is_finite() {
            return Err(Error::Validation(format!("weight scale must be positive, got {}", self.scale)));
        }
        Ok(())
    }

    pub fn eval(&self, t: T) -> T {
        let w = match self.kind {
            WeightKind::Steiner { c } => c * t.sinh() + t.cosh(),
            WeightKind::SinhShift { b } => (b + t).sinh() / b.sinh(),
            WeightKind::CoshShift { b } => (b + t).cosh() / b.cosh(),
            WeightKind::ExpShift { .. } => t.exp(),
        };
        self.scale * w
    }
}

/// Condition imposed at the truncation point `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FarBoundary {
    /// `ψ(T) = 0`; the discrete minimum is an upper bound on the infimum over `[0, ∞)`.
    Dirichlet,
    /// Natural condition; not a certified bound.
    Neumann,
}

/// Discretisation settings shared by every oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Numerics<T> {
    pub truncation: T,
    pub grid_points: usize,
    pub grading: T,
    pub far_bc: FarBoundary,
}

impl<T: Scalar> Default for Numerics<T> {
    fn default() -> Self {
        Self {
            truncation: T::lit(40.0),
            grid_points: 8000,
            grading: T::lit(1.01),
            far_bc: FarBoundary::Dirichlet,
        }
    }
}

impl<T: Scalar> Numerics<T> {
    pub fn with_truncation(mut self, truncation: T) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation >= T::lit(MIN_TRUNCATION)) || !self.truncation.is_finite() {
            return Err(Error::Validation(format!(
                "truncation must be at least {MIN_TRUNCATION}, got {}",
                self.truncation
            )));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::Validation(format!(
                "grid must have at least {MIN_GRID_POINTS} cells, got {}",
                self.grid_points
            )));
        }
        if !(self.grading >= T::one()) || !self.grading.is_finite() {
            return Err(Error::Validation(format!("grading ratio must be ≥ 1, got {}", self.grading)));
        }
        Ok(())
    }
}

/// A weighted Rayleigh-quotient minimisation on the truncated half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem<T> {
    pub weight: WeightSpec<T>,
    pub alpha: T,
    pub numerics: Numerics<T>,
}

/// Discrete minimum of a [`RadialProblem`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialMinimum<T> {
    pub value: T,
    /// False when `value ≥ ¼ − 1e−6`: no discrete eigenvalue was detected at this truncation.
    pub discrete_detected: bool,
}

impl<T: Scalar> RadialProblem<T> {
    pub fn new(weight: WeightSpec<T>, alpha: T, numerics: Numerics<T>) -> Self {
        Self {
            weight,
            alpha,
            numerics,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.weight.validate()?;
        self.numerics.validate()?;
        if !self.alpha.is_finite() {
            return Err(Error::Validation(format!("Robin parameter must be finite, got {}", self.alpha)));
        }
        Ok(())
    }

    /// Stiffness (cell conductances plus the boundary term) and mass matrix, with
    /// two-point Gauss quadrature per cell.
    pub fn assemble(&self) -> Result<LaplacianPencil<T>> {
        self.validate()?;
        let n = &self.numerics;
        let mesh = graded_mesh(n.truncation, n.grid_points, n.grading)?;
        let mut conductance = Vec::with_capacity(mesh.len() - 1);
        let mut mass = Tridiagonal::zeros(mesh.len());
        let g = T::lit(0.5) / T::lit(3.0).sqrt();
        let half = T::lit(0.5);
        for (i, cell) in mesh.windows(2).enumerate() {
            let (a, b) = (cell[0], cell[1]);
            let h = b - a;
            let mid = (a + b) * half;
            let mut k = T::zero();
            let (mut m00, mut m01, mut m11) = (T::zero(), T::zero(), T::zero());
            for offset in [-g, g] {
                let t = mid + offset * h;
                let w = self.weight.eval(t) * h * half;
                let p1 = (t - a) / h;
                let p0 = T::one() - p1;
                k = k + w / (h * h);
                m00 = m00 + w * p0 * p0;
                m01 = m01 + w * p0 * p1;
                m11 = m11 + w * p1 * p1;
            }
            conductance.push(k);
            mass.diag[i] = mass.diag[i] + m00;
            mass.diag[i + 1] = mass.diag[i + 1] + m11;
            mass.off[i] = mass.off[i] + m01;
        }
        Ok(LaplacianPencil {
            conductance,
            boundary: self.alpha * self.weight.boundary_weight(),
            mass,
            dirichlet_far: n.far_bc == FarBoundary::Dirichlet,
        })
    }

    pub fn solve(&self) -> Result<RadialMinimum<T>> {
        let pencil = self.assemble()?;
        let value = lowest_eigenvalue(&pencil)?;
        Ok(RadialMinimum {
            value,
            discrete_detected: value < T::lit(crate::ESSENTIAL_BOTTOM - DISCRETE_MARGIN),
        })
    }
}

/// Smallest discrete Rayleigh quotient of `problem`.
pub fn min_rayleigh<T: Scalar>(problem: &RadialProblem<T>) -> Result<RadialMinimum<T>> {
    problem.solve()
}

/// Weights of the three weighted Poincaré inequalities with boundary term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoincareKind {
    Sinh,
    Cosh,
    Exp,
}

impl PoincareKind {
    pub const ALL: [PoincareKind; 3] = [PoincareKind::Sinh, PoincareKind::Cosh, PoincareKind::Exp];

    pub fn as_str(self) -> &'static str {
        match self {
            PoincareKind::Sinh => "sinh",
            PoincareKind::Cosh => "cosh",
            PoincareKind::Exp => "exp",
        }
    }

    /// Smallest `α` for which the quotient on `[b, ∞)` stays at or above `¼`:
    /// `½(1/b − coth b)`, `−½ tanh b` and `−½` respectively.
    pub fn threshold<T: Scalar>(self, b: T) -> T {
        let half = T::lit(0.5);
        match self {
            PoincareKind::Sinh => half * (b.recip() - coth(b)),
            PoincareKind::Cosh => T::zero() - half * b.tanh(),
            PoincareKind::Exp => -half,
        }
    }

    /// The quotient on `[b, ∞)` shifted to `[0, ∞)`, normalised so that `w(0) = 1`.
    pub fn weight<T: Scalar>(self, b: T) -> WeightSpec<T> {
        match self {
            PoincareKind::Sinh => WeightSpec::sinh_shift(b),
            PoincareKind::Cosh => WeightSpec::cosh_shift(b),
            PoincareKind::Exp => WeightSpec::exp_shift(b),
        }
    }
}

impl std::str::FromStr for PoincareKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sinh" => Ok(PoincareKind::Sinh),
            "cosh" => Ok(PoincareKind::Cosh),
            "exp" => Ok(PoincareKind::Exp),
            other => Err(Error::Validation(format!("unknown Poincaré weight {other:?}"))),
        }
    }
}

/// Discrete minimum of the weighted quotient with weight `sinh`, `cosh` or `exp` on `[b, ∞)`
/// and boundary term `α·w(b)|ψ(b)|²`.
pub fn poincare_min<T: Scalar>(
    kind: PoincareKind,
    b: T,
    alpha: T,
    numerics: Numerics<T>,
) -> Result<RadialMinimum<T>> {
    let valid_b = match kind {
        PoincareKind::Cosh => b >= T::zero(),
        PoincareKind::Sinh | PoincareKind::Exp => b > T::zero(),
    };
    if !valid_b || !b.is_finite() {
        return Err(Error::Domain(format!("invalid left endpoint b = {b} for {} weight", kind.as_str())));
    }
    RadialProblem::new(kind.weight(b), alpha, numerics).solve()
}
