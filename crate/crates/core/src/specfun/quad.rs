//! Quadrature and finite-difference helpers on uniform grids, plus an
//! adaptive Gauss–Kronrod integrator for smooth one-dimensional integrands.

use std::ops::{Add, Mul, Sub};

/// Anything Simpson can sum: reals and complex numbers.
pub trait Sample: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl<T> Sample for T where T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// Composite Simpson over equally spaced samples. An odd interval count
/// closes with the 3/8 rule on the last three intervals.
pub fn simpson<T: Sample>(values: &[T], h: f64) -> T {
    let n = values.len();
    match n {
        0 | 1 => T::default(),
        2 => (values[0] + values[1]) * (0.5 * h),
        3 => (values[0] + values[1] * 4.0 + values[2]) * (h / 3.0),
        _ => {
            let intervals = n - 1;
            let even_end = if intervals % 2 == 0 { n } else { n - 3 };
            let mut acc = T::default();
            if even_end >= 3 {
                acc = values[0] + values[even_end - 1];
                for (i, &v) in values.iter().enumerate().take(even_end - 1).skip(1) {
                    acc = acc + v * if i % 2 == 1 { 4.0 } else { 2.0 };
                }
                acc = acc * (h / 3.0);
            }
            if even_end < n {
                let k = even_end.saturating_sub(1);
                let tail = (values[k] + values[k + 1] * 3.0 + values[k + 2] * 3.0 + values[k + 3]) * (3.0 * h / 8.0);
                acc = acc + tail;
            }
            acc
        }
    }
}

/// Running integral from index `origin`: out[i] = ∫_{x_origin}^{x_i}.
///
/// Each step integrates the parabola through three neighbouring samples.
pub fn cumulative_simpson<T: Sample>(values: &[T], h: f64, origin: usize) -> Vec<T> {
    let n = values.len();
    let mut out = vec![T::default(); n];
    if n < 3 {
        if n == 2 {
            let step = (values[0] + values[1]) * (0.5 * h);
            if origin == 0 {
                out[1] = step;
            } else {
                out[0] = step * -1.0;
            }
        }
        return out;
    }
    // Single-interval integral using the parabola through (i-1, i, i+1) or (i, i+1, i+2).
    let step = |i: usize| -> T {
        if i + 2 < n {
            (values[i] * 5.0 + values[i + 1] * 8.0 - values[i + 2]) * (h / 12.0)
        } else {
            (values[i - 1] * -1.0 + values[i] * 8.0 + values[i + 1] * 5.0) * (h / 12.0)
        }
    };
    for i in origin..n - 1 {
        out[i + 1] = out[i] + step(i);
    }
    for i in (1..=origin).rev() {
        out[i - 1] = out[i] - step(i - 1);
    }
    out
}

/// 4th-order central first derivative at interior index i (needs i ≥ 2).
pub fn d1_central<T: Sample>(values: &[T], h: f64, i: usize) -> T {
    (values[i - 2] - values[i + 2] + (values[i + 1] - values[i - 1]) * 8.0) * (1.0 / (12.0 * h))
}

/// 4th-order central second derivative at interior index i (needs i ≥ 2).
pub fn d2_central<T: Sample>(values: &[T], h: f64, i: usize) -> T {
    ((values[i - 2] + values[i + 2]) * -1.0 + (values[i + 1] + values[i - 1]) * 16.0 - values[i] * 30.0)
        * (1.0 / (12.0 * h * h))
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_KRONROD: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const GK_GAUSS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * GK_KRONROD[7];
    let mut gauss = fc * GK_GAUSS[3];
    for j in 0..7 {
        let dx = half * GK_NODES[j];
        let pair = f(mid - dx) + f(mid + dx);
        kron += GK_KRONROD[j] * pair;
        // Gauss nodes sit at the odd Kronrod positions.
        if j % 2 == 1 {
            gauss += GK_GAUSS[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Adaptive G7–K15 with interval bisection. Returns (integral, error estimate).
pub fn integrate_adaptive(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> (f64, f64) {
    let mut pieces: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    pieces.push((a, b, v, e));
    loop {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) || pieces.len() >= max_intervals {
            return (total, err);
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}
