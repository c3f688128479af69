//! Matrix exponential for dense complex matrices.
//!
//! Degree-13 Padé with scaling and squaring. Strictly triangular input is
//! nilpotent, and its Taylor series is summed exactly instead.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(m: &DMatrix<C64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn strictly_triangular(m: &DMatrix<C64>) -> bool {
    let n = m.nrows();
    let zero = |r: usize, c: usize| m[(r, c)] == C64::new(0.0, 0.0);
    let lower = (0..n).all(|c| (0..=c).all(|r| zero(r, c)));
    let upper = (0..n).all(|c| (c..n).all(|r| zero(r, c)));
    lower || upper
}

fn nilpotent_exp(m: &DMatrix<C64>) -> DMatrix<C64> {
    let n = m.nrows();
    let mut acc = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..n.max(1) {
        term = (&term * m).map(|v| v / k as f64);
        if term.iter().all(|v| *v == C64::new(0.0, 0.0)) {
            break;
        }
        acc += &term;
    }
    acc
}

/// e^M.
pub fn expm(m: &DMatrix<C64>) -> DMatrix<C64> {
    assert_eq!(m.nrows(), m.ncols(), "expm needs a square matrix");
    let n = m.nrows();
    if n == 0 {
        return m.clone();
    }
    if strictly_triangular(m) {
        return nilpotent_exp(m);
    }
    let norm = one_norm(m);
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = m.map(|v| v / 2f64.powi(squarings));
    let id = DMatrix::<C64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let scaled = |mat: &DMatrix<C64>, k: usize| mat.map(|v| v * b(k));

    let inner_u = &a6 * (scaled(&a6, 13) + scaled(&a4, 11) + scaled(&a2, 9));
    let u = &a * (inner_u + scaled(&a6, 7) + scaled(&a4, 5) + scaled(&a2, 3) + scaled(&id, 1));
    let inner_v = &a6 * (scaled(&a6, 12) + scaled(&a4, 10) + scaled(&a2, 8));
    let v = inner_v + scaled(&a6, 6) + scaled(&a4, 4) + scaled(&a2, 2) + scaled(&id, 0);

    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut out = lhs.lu().solve(&rhs).expect("Padé denominator is singular");
    for _ in 0..squarings {
        out = &out * &out;
    }
    out
}
