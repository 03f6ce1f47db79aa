use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest-to-smallest cell size ratio of the graded part of the mesh.
pub const MAX_CELL_RATIO: f64 = 100.0;

/// Mesh of `[0, length]` with `cells` cells: sizes grow by `ratio` from the left end until
/// they reach the uniform interior size (at most `MAX_CELL_RATIO` times the first cell,
/// and over at most half the cells); the remaining cells are uniform.
pub fn graded_mesh<T: Scalar>(length: T, cells: usize, ratio: T) -> Result<Vec<T>> {
    if cells == 0 || !(length > T::zero()) {
        return Err(Error::Validation("mesh needs a positive length and at least one cell".into()));
    }
    if !(ratio >= T::one()) || !ratio.is_finite() {
        return Err(Error::Validation(format!("grading ratio must be ≥ 1, got {ratio}")));
    }
    let graded = if ratio > T::one() {
        let k = (T::lit(MAX_CELL_RATIO).ln() / ratio.ln()).ceil();
        k.to_usize().unwrap_or(usize::MAX).min(cells / 2)
    } else {
        0
    };
    // relative sizes: ratio^{i−graded} for i < graded, 1 afterwards
    let mut sizes = Vec::with_capacity(cells);
    let mut s = T::one();
    for _ in 0..graded {
        s = s / ratio;
        sizes.push(s);
    }
    sizes.reverse();
    sizes.extend(std::iter::repeat(T::one()).take(cells - graded));
    let total: T = sizes.iter().copied().sum();
    let unit = length / total;

    let mut nodes = Vec::with_capacity(cells + 1);
    let mut x = T::zero();
    nodes.push(x);
    for &h in &sizes[..cells - 1] {
        x = x + h * unit;
        nodes.push(x);
    }
    nodes.push(length);
    Ok(nodes)
}
