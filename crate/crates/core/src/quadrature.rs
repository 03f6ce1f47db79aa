//! Adaptive Gauss–Kronrod quadrature (7-point Gauss embedded in the 15-point Kronrod
//! rule) with global subdivision, for vector-valued integrands on finite intervals.
//!
//! All components share the same nodes, so ratios of integrals computed together
//! are free of independent node-placement noise.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule: converged once `error ≤ max(abs, rel·|value|)` holds for every component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
    pub max_subdivisions: usize,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Self {
        Self {
            abs,
            rel,
            max_subdivisions: 4000,
        }
    }

    /// Purely relative tolerance.
    pub fn relative(rel: T) -> Self {
        Self::new(T::zero(), rel)
    }

    fn target(&self, value: T) -> T {
        let floor = T::lit(100.0) * T::epsilon() * value.abs();
        self.abs.max(self.rel * value.abs()).max(floor)
    }
}

/// A value with an a-posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

struct Panel<T, const N: usize> {
    a: T,
    b: T,
    value: [T; N],
    error: [T; N],
    priority: f64,
}

impl<T, const N: usize> PartialEq for Panel<T, N> {
    fn eq(&self, other: &Self) -> bool {
        self.priority.total_cmp(&other.priority) == Ordering::Equal
    }
}
impl<T, const N: usize> Eq for Panel<T, N> {}
impl<T, const N: usize> PartialOrd for Panel<T, N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T, const N: usize> Ord for Panel<T, N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

/// Applies the 15-point Kronrod rule on `[a, b]` and returns per-component
/// `(value, error)` with the QUADPACK error rescaling.
fn kronrod15<T: Scalar, const N: usize, F>(f: &F, a: T, b: T) -> ([T; N], [T; N])
where
    F: Fn(T) -> [T; N],
{
    let half = (b - a) * T::lit(0.5);
    let centre = (a + b) * T::lit(0.5);
    let fc = f(centre);

    let mut kron = [T::zero(); N];
    let mut gauss = [T::zero(); N];
    let mut res_abs = [T::zero(); N];
    let mut samples: [([T; N], [T; N]); 7] = [([T::zero(); N], [T::zero(); N]); 7];

    for i in 0..N {
        kron[i] = fc[i] * T::lit(WGK[7]);
        gauss[i] = fc[i] * T::lit(WG[3]);
        res_abs[i] = fc[i].abs() * T::lit(WGK[7]);
    }
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * T::lit(XGK[j]);
        let lo = f(centre - dx);
        let hi = f(centre + dx);
        let wk = T::lit(WGK[j]);
        for i in 0..N {
            kron[i] = kron[i] + wk * (lo[i] + hi[i]);
            res_abs[i] = res_abs[i] + wk * (lo[i].abs() + hi[i].abs());
            if j % 2 == 1 {
                gauss[i] = gauss[i] + T::lit(WG[j / 2]) * (lo[i] + hi[i]);
            }
        }
        *sample = (lo, hi);
    }

    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    let abs_half = half.abs();
    for i in 0..N {
        let mean = kron[i] * T::lit(0.5);
        let mut res_asc = WGK[7] * (fc[i] - mean).abs().as_f64();
        for (j, (lo, hi)) in samples.iter().enumerate() {
            res_asc += WGK[j] * ((lo[i] - mean).abs() + (hi[i] - mean).abs()).as_f64();
        }
        let res_asc = T::lit(res_asc) * abs_half;
        let res_abs_i = res_abs[i] * abs_half;
        let mut err = ((kron[i] - gauss[i]) * half).abs();
        if res_asc > T::zero() && err > T::zero() {
            let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
            err = if scale < T::one() { res_asc * scale } else { res_asc };
        }
        let round = T::lit(50.0) * T::epsilon() * res_abs_i;
        if res_abs_i > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && err < round {
            err = round;
        }
        value[i] = kron[i] * half;
        error[i] = err;
    }
    (value, error)
}

/// Integrates `f` over the partition given by `breakpoints` (sorted, at least two entries),
/// bisecting the panel with the largest scaled error until every component meets `tol`.
pub fn integrate<T, const N: usize, F>(
    f: F,
    breakpoints: &[T],
    tol: &Tolerance<T>,
) -> Result<[Estimate<T>; N]>
where
    T: Scalar,
    F: Fn(T) -> [T; N],
{
    if breakpoints.len() < 2 {
        return Err(Error::Domain("quadrature needs at least one interval".into()));
    }
    let mut total = [T::zero(); N];
    let mut total_err = [T::zero(); N];
    let mut first = Vec::with_capacity(breakpoints.len() - 1);
    for w in breakpoints.windows(2) {
        let (value, error) = kronrod15(&f, w[0], w[1]);
        for i in 0..N {
            total[i] = total[i] + value[i];
            total_err[i] = total_err[i] + error[i];
        }
        first.push((w[0], w[1], value, error));
    }

    // Priorities are normalised by the first-pass magnitude of each component.
    let mut scale = [1.0_f64; N];
    for i in 0..N {
        let s = tol.target(total[i]).as_f64();
        scale[i] = if s > 0.0 { s } else { f64::MIN_POSITIVE };
    }
    let priority = |a: T, b: T, err: &[T; N]| -> f64 {
        let width_floor = T::lit(4.0) * T::epsilon() * a.abs().max(b.abs());
        if (b - a).abs() <= width_floor || (a + b) * T::lit(0.5) == a {
            return 0.0;
        }
        (0..N)
            .map(|i| err[i].as_f64() / scale[i])
            .fold(0.0, f64::max)
    };

    let mut heap = BinaryHeap::with_capacity(2 * tol.max_subdivisions + first.len());
    for (a, b, value, error) in first {
        heap.push(Panel {
            a,
            b,
            value,
            error,
            priority: priority(a, b, &error),
        });
    }

    let converged = |total: &[T; N], err: &[T; N]| (0..N).all(|i| err[i] <= tol.target(total[i]));

    let mut splits = 0;
    while !converged(&total, &total_err) {
        if splits >= tol.max_subdivisions {
            return Err(accuracy_error(&total, &total_err, tol));
        }
        let Some(panel) = heap.pop() else {
            return Err(accuracy_error(&total, &total_err, tol));
        };
        if panel.priority <= 0.0 {
            return Err(accuracy_error(&total, &total_err, tol));
        }
        let mid = (panel.a + panel.b) * T::lit(0.5);
        let (v1, e1) = kronrod15(&f, panel.a, mid);
        let (v2, e2) = kronrod15(&f, mid, panel.b);
        for i in 0..N {
            total[i] = total[i] - panel.value[i] + v1[i] + v2[i];
            total_err[i] = total_err[i] - panel.error[i] + e1[i] + e2[i];
        }
        heap.push(Panel {
            a: panel.a,
            b: mid,
            value: v1,
            error: e1,
            priority: priority(panel.a, mid, &e1),
        });
        heap.push(Panel {
            a: mid,
            b: panel.b,
            value: v2,
            error: e2,
            priority: priority(mid, panel.b, &e2),
        });
        splits += 1;
    }

    // Re-sum from the panels to shed the drift of the running updates.
    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    for p in &panels {
        for i in 0..N {
            value[i] = value[i] + p.value[i];
            error[i] = error[i] + p.error[i];
        }
    }
    let mut out = [Estimate {
        value: T::zero(),
        error: T::zero(),
    }; N];
    for i in 0..N {
        out[i] = Estimate {
            value: value[i],
            error: error[i],
        };
    }
    Ok(out)
}

fn accuracy_error<T: Scalar, const N: usize>(
    total: &[T; N],
    err: &[T; N],
    tol: &Tolerance<T>,
) -> Error {
    let (i, _) = (0..N)
        .map(|i| (i, err[i].as_f64() / tol.target(total[i]).as_f64()))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    Error::Accuracy {
        what: "adaptive quadrature did not converge within the subdivision budget".into(),
        estimate: err[i].as_f64(),
        requested: tol.target(total[i]).as_f64(),
    }
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<T, F>(f: F, breakpoints: &[T], tol: &Tolerance<T>) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    integrate(|x| [f(x)], breakpoints, tol).map(|[e]| e)
}
