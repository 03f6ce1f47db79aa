//! Lowest eigenvalue of a symmetric-definite tridiagonal pencil `(A, M)` by bisection on
//! the inertia of `A − σM`.
//!
//! For symmetric `A` and positive definite `M`, the number of negative pivots in the
//! `LDLᵀ` factorisation of `A − σM` equals the number of generalised eigenvalues below `σ`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric tridiagonal matrix: `diag[0..n]`, `off[0..n-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Scalar> Tridiagonal<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            diag: vec![T::zero(); n],
            off: vec![T::zero(); n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Drops the last row and column.
    pub fn truncate_last(&mut self) {
        self.diag.pop();
        self.off.pop();
    }
}

/// A pencil whose pivots can be counted at a shift.
pub trait Pencil<T> {
    fn size(&self) -> usize;
    /// Number of eigenvalues strictly below `sigma`.
    fn count_below(&self, sigma: T) -> usize;
}

/// General pencil `(A, M)` of symmetric tridiagonal matrices, `M` positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalPencil<T> {
    pub a: Tridiagonal<T>,
    pub m: Tridiagonal<T>,
}

impl<T: Scalar> Pencil<T> for TridiagonalPencil<T> {
    fn size(&self) -> usize {
        self.a.len()
    }

    fn count_below(&self, sigma: T) -> usize {
        count_below(&self.a, &self.m, sigma)
    }
}

/// Number of eigenvalues of the pencil strictly below `sigma`.
pub fn count_below<T: Scalar>(a: &Tridiagonal<T>, m: &Tridiagonal<T>, sigma: T) -> usize {
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut pivot = a.diag[0] - sigma * m.diag[0];
    for i in 0..n {
        if i > 0 {
            let e = a.off[i - 1] - sigma * m.off[i - 1];
            pivot = (a.diag[i] - sigma * m.diag[i]) - e * e / pivot;
        }
        if pivot == T::zero() {
            pivot = -tiny;
        }
        if pivot < T::zero() {
            count += 1;
        }
    }
    count
}

/// Finite-element pencil of a weighted 1D Laplacian: stiffness
/// `Σ_c k_c (e_c − e_{c+1})(e_c − e_{c+1})ᵀ + β e_0 e_0ᵀ` against a tridiagonal mass matrix.
///
/// The stiffness rows nearly cancel, so the plain pivot recurrence loses about
/// `ε/(λh²)` relative accuracy. Writing each pivot as `d_i = k_i + r_i` and updating
///
/// ```text
/// r_i = −σ M_ii + [k_{i−1}(r_{i−1} − 2σ f_{i−1}) − σ² f_{i−1}²] / d_{i−1}
/// ```
///
/// (with `f` the mass off-diagonal) keeps only small quantities in every subtraction.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianPencil<T> {
    /// `k_c` for cells `c = 0..N`.
    pub conductance: Vec<T>,
    /// Coefficient added to the first diagonal entry.
    pub boundary: T,
    /// Mass matrix over all `N + 1` nodes.
    pub mass: Tridiagonal<T>,
    /// Drop the last node (`ψ(T) = 0`).
    pub dirichlet_far: bool,
}

impl<T: Scalar> LaplacianPencil<T> {
    /// Dense-band form of the same pencil.
    pub fn to_tridiagonal(&self) -> TridiagonalPencil<T> {
        let cells = self.conductance.len();
        let mut a = Tridiagonal::zeros(cells + 1);
        for (c, &k) in self.conductance.iter().enumerate() {
            a.diag[c] = a.diag[c] + k;
            a.diag[c + 1] = a.diag[c + 1] + k;
            a.off[c] = -k;
        }
        a.diag[0] = a.diag[0] + self.boundary;
        let mut m = self.mass.clone();
        if self.dirichlet_far {
            a.truncate_last();
            m.truncate_last();
        }
        TridiagonalPencil { a, m }
    }
}

impl<T: Scalar> Pencil<T> for LaplacianPencil<T> {
    fn size(&self) -> usize {
        self.conductance.len() + usize::from(!self.dirichlet_far)
    }

    fn count_below(&self, sigma: T) -> usize {
        let n = self.size();
        let cells = self.conductance.len();
        let k = |i: usize| if i < cells { self.conductance[i] } else { T::zero() };
        let tiny = T::min_positive_value().sqrt();
        let two = T::lit(2.0);

        let mut count = 0;
        let mut r = self.boundary - sigma * self.mass.diag[0];
        let mut d = k(0) + r;
        for i in 0..n {
            if i > 0 {
                let kp = k(i - 1);
                let f = self.mass.off[i - 1];
                let sf = sigma * f;
                r = -sigma * self.mass.diag[i] + (kp * (r - two * sf) - sf * sf) / d;
                d = k(i) + r;
            }
            if d == T::zero() {
                d = -tiny;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }
}

/// Smallest generalised eigenvalue, bracketed by doubling and refined by bisection to
/// a few ulps.
pub fn lowest_eigenvalue<T: Scalar, P: Pencil<T>>(pencil: &P) -> Result<T> {
    if pencil.size() == 0 {
        return Err(Error::Validation("pencil must be nonempty".into()));
    }
    let two = T::lit(2.0);
    let mut lo = -T::one();
    let mut hi = T::one();
    let mut steps = 0;
    while pencil.count_below(lo) > 0 {
        lo = lo * two;
        steps += 1;
        if steps > 1000 || !lo.is_finite() {
            return Err(Error::Solver {
                what: "no lower bound for the lowest eigenvalue".into(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
    }
    steps = 0;
    while pencil.count_below(hi) == 0 {
        hi = hi * two;
        steps += 1;
        if steps > 1000 || !hi.is_finite() {
            return Err(Error::Solver {
                what: "no upper bound for the lowest eigenvalue".into(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
    }
    for _ in 0..400 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if hi - lo <= T::lit(4.0) * T::epsilon() * mid.abs().max(T::one()) {
            return Ok(mid);
        }
        if pencil.count_below(mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::Solver {
        what: "Sturm bisection did not converge".into(),
        lo: lo.as_f64(),
        hi: hi.as_f64(),
    })
}
