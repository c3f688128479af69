//! Special-function kernels: Γ, erf, ₁F₁, ₀F₂, normalized oscillator
//! eigenfunctions and the numerically inverted Meijer-G weight.
//!
//! Hypergeometric series stop once three consecutive terms fall below
//! `rel_tol` relative to the running sum.

pub mod mellin;
pub mod quad;

use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use thiserror::Error;

pub use mellin::{meijer_h_natural, MellinBarnesH};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("{func}: argument {arg} outside the domain")]
    Domain { func: &'static str, arg: f64 },
    #[error("{func}: parameter {param} is a non-positive integer (pole)")]
    Pole { func: &'static str, param: f64 },
    #[error("{func}: series did not converge within {terms} terms (partial sum {partial})")]
    Truncation {
        func: &'static str,
        terms: usize,
        partial: f64,
    },
    #[error("contour truncation too coarse: estimated relative error {estimated_error:.3e}")]
    Accuracy { estimated_error: f64 },
    #[error("invalid series configuration: {0}")]
    InvalidConfig(String),
}

/// Truncation controls for the series and the Mellin–Barnes contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Half-height T of the truncated contour Re s = 1, |Im s| ≤ T.
    pub contour_height: f64,
    pub contour_points: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 5000,
            contour_height: 40.0,
            contour_points: 4001,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.rel_tol > 0.0) {
            return Err(SpecFunError::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(SpecFunError::InvalidConfig("max_terms must be at least 1".into()));
        }
        if !(self.contour_height > 0.0) {
            return Err(SpecFunError::InvalidConfig(format!(
                "contour_height must be positive, got {}",
                self.contour_height
            )));
        }
        if self.contour_points < 2 {
            return Err(SpecFunError::InvalidConfig(format!(
                "contour_points must be at least 2, got {}",
                self.contour_points
            )));
        }
        Ok(())
    }
}

// Lanczos, g = 7, nine coefficients. Good to ~15 digits on the right half-plane.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_real(x: f64) -> f64 {
    // Γ(x) for x ≥ 0.5
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain { func: "gamma_fn", arg: x });
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * lanczos_real(1.0 - x)));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    // Integers are returned exactly while the factorial fits.
    if x.fract() == 0.0 && x <= 23.0 {
        let mut f = 1.0;
        for k in 2..(x as u32) {
            f *= k as f64;
        }
        return Ok(f);
    }
    // t^(z+1/2) overflows early, split the power.
    if x > 140.0 {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += ck / (z + k as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        let half = t.powf(0.5 * (z + 0.5));
        return Ok((2.0 * PI).sqrt() * half * ((-t).exp() * half) * acc);
    }
    Ok(lanczos_real(x))
}

/// ln Γ(x) for x > 0; stays finite where Γ overflows.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain { func: "ln_gamma", arg: x });
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

/// Γ(s) for complex s off the non-positive integers (reflection on Re s < 1/2).
pub fn gamma_complex(s: C64) -> C64 {
    if s.re < 0.5 {
        let pi = C64::new(PI, 0.0);
        return pi / ((pi * s).sin() * gamma_complex(1.0 - s));
    }
    let z = s - 1.0;
    let mut acc = C64::new(LANCZOS_COEF[0], 0.0);
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t).exp() * acc * (2.0 * PI).sqrt()
}

/// Error function. Backed by libm's erf (|abs error| well below 1e-15).
pub fn erf_fn(x: f64) -> f64 {
    libm::erf(x)
}

fn pole_at(p: f64) -> bool {
    p <= 0.0 && p.fract() == 0.0
}

/// Shared driver for term-ratio series; `ratio(n)` maps term n to term n+1.
fn hyper_series(
    func: &'static str,
    cfg: &SeriesConfig,
    mut ratio: impl FnMut(usize) -> C64,
) -> Result<C64, SpecFunError> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..cfg.max_terms {
        term *= ratio(n);
        sum += term;
        if term.norm() <= cfg.rel_tol * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            break;
        }
    }
    Err(SpecFunError::Truncation {
        func,
        terms: cfg.max_terms,
        partial: sum.re,
    })
}

/// ₁F₁(a; c; z) for complex z (used by the reproducing kernels).
pub fn kummer_1f1_complex(a: f64, c: f64, z: C64, cfg: &SeriesConfig) -> Result<C64, SpecFunError> {
    if pole_at(c) {
        return Err(SpecFunError::Pole { func: "kummer_1f1", param: c });
    }
    if z == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    hyper_series("kummer_1f1", cfg, |n| {
        let n = n as f64;
        z * ((a + n) / ((c + n) * (n + 1.0)))
    })
}

/// Confluent hypergeometric ₁F₁(a; c; x) by direct summation.
///
/// Negative x is accepted, but loses digits to cancellation once |x| grows.
pub fn kummer_1f1(a: f64, c: f64, x: f64, cfg: &SeriesConfig) -> Result<f64, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::Domain { func: "kummer_1f1", arg: x });
    }
    kummer_1f1_complex(a, c, C64::new(x, 0.0), cfg).map(|v| v.re)
}

/// ₀F₂(; b1, b2; z) for complex z.
pub fn hyp0f2_complex(b1: f64, b2: f64, z: C64, cfg: &SeriesConfig) -> Result<C64, SpecFunError> {
    if pole_at(b1) {
        return Err(SpecFunError::Pole { func: "hyp0f2", param: b1 });
    }
    if pole_at(b2) {
        return Err(SpecFunError::Pole { func: "hyp0f2", param: b2 });
    }
    if z == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    hyper_series("hyp0f2", cfg, |n| {
        let n = n as f64;
        z / ((n + 1.0) * (b1 + n) * (b2 + n))
    })
}

pub fn hyp0f2(b1: f64, b2: f64, x: f64, cfg: &SeriesConfig) -> Result<f64, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::Domain { func: "hyp0f2", arg: x });
    }
    hyp0f2_complex(b1, b2, C64::new(x, 0.0), cfg).map(|v| v.re)
}

/// φ₀(x) … φ_{n_max}(x), the normalized eigenfunctions of p² + x².
pub fn hermite_phi_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let phi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(phi0);
    if n_max == 0 {
        return out;
    }
    out.push(2f64.sqrt() * x * phi0);
    for n in 2..=n_max {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * x * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
        out.push(next);
    }
    out
}

/// (φₙ(x), φₙ′(x)). The derivative uses φₙ′ = √(2n) φₙ₋₁ − x φₙ.
pub fn hermite_phi(n: usize, x: f64) -> (f64, f64) {
    let all = hermite_phi_all(n, x);
    let value = all[n];
    let lower = if n == 0 { 0.0 } else { all[n - 1] };
    (value, (2.0 * n as f64).sqrt() * lower - x * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn gamma_anchor_values() {
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        // Γ(3.5) = 2.5 · 1.5 · 0.5 · √π
        assert_relative_eq!(gamma_fn(3.5).unwrap(), 2.5 * 1.5 * 0.5 * PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(3.5).unwrap(), 3.323_350_970_4, max_relative = 1e-10);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn gamma_large_and_small() {
        assert_relative_eq!(gamma_fn(1e-3).unwrap(), 999.423_772_484_595_5, max_relative = 1e-12);
        assert_relative_eq!(ln_gamma(150.0).unwrap(), gamma_fn(150.0).unwrap().ln(), max_relative = 1e-13);
        assert_relative_eq!(ln_gamma(0.25).unwrap(), gamma_fn(0.25).unwrap().ln(), max_relative = 1e-13);
    }

    #[test]
    fn complex_gamma_matches_real_axis_and_reflection() {
        for &x in &[0.3, 1.0, 2.5, 7.25] {
            let g = gamma_complex(C64::new(x, 0.0));
            assert_relative_eq!(g.re, gamma_fn(x).unwrap(), max_relative = 1e-13);
            assert!(g.im.abs() < 1e-13 * g.re.abs());
        }
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 1.7;
        let g = gamma_complex(C64::new(0.0, y));
        assert_relative_eq!(g.norm_sqr(), PI / (y * (PI * y).sinh()), max_relative = 1e-12);
        // Γ(1/2 + iy) |² = π / cosh πy
        let g = gamma_complex(C64::new(0.5, 3.0));
        assert_relative_eq!(g.norm_sqr(), PI / (PI * 3.0).cosh(), max_relative = 1e-12);
    }

    // Independent erf oracle: Maclaurin series, fine for |x| ≤ 3.
    fn erf_series(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut pow = x;
        let mut fact = 1.0;
        for n in 0..200 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * pow / (fact * (2 * n + 1) as f64);
            pow *= x * x;
            fact *= (n + 1) as f64;
        }
        2.0 / PI.sqrt() * sum
    }

    #[test]
    fn erf_against_series_oracle() {
        assert_eq!(erf_fn(0.0), 0.0);
        assert!((erf_fn(10.0) - 1.0).abs() < 1e-15);
        assert!((erf_fn(1.0) - 0.842_700_792_9).abs() < 1e-10);
        for k in -30..=30 {
            let x = k as f64 * 0.1;
            assert!((erf_fn(x) - erf_series(x)).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_1f1(0.3, 1.7, 0.0, &cfg()).unwrap(), 1.0);
        assert_relative_eq!(kummer_1f1(1.0, 1.0, 2.0, &cfg()).unwrap(), 2f64.exp(), max_relative = 1e-15);
        let (a, c, x) = (2.0f64, 3.0f64, 1.5f64);
        let lhs = (-x).exp() * kummer_1f1(a, c, x, &cfg()).unwrap();
        let rhs = kummer_1f1(c - a, c, -x, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
        // ₁F₁(1, 2; x) = (eˣ − 1)/x
        assert_relative_eq!(kummer_1f1(1.0, 2.0, 3.0, &cfg()).unwrap(), (3f64.exp() - 1.0) / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn kummer_errors() {
        assert!(matches!(kummer_1f1(1.0, -2.0, 1.0, &cfg()), Err(SpecFunError::Pole { .. })));
        assert!(matches!(kummer_1f1(1.0, 0.0, 1.0, &cfg()), Err(SpecFunError::Pole { .. })));
        let tight = SeriesConfig { max_terms: 5, ..cfg() };
        match kummer_1f1(1.0, 1.0, 20.0, &tight) {
            Err(SpecFunError::Truncation { partial, .. }) => assert!(partial > 1.0),
            other => panic!("expected truncation, got {other:?}"),
        }
    }

    #[test]
    fn hyp0f2_examples() {
        assert_eq!(hyp0f2(0.4, 1.3, 0.0, &cfg()).unwrap(), 1.0);
        // Direct partial sums, 20 terms.
        let mut direct = 0.0;
        let mut term = 1.0;
        for n in 0..20 {
            direct += term;
            let nf = n as f64;
            term *= 0.125 / ((nf + 1.0) * (1.0 + nf) * (2.0 + nf));
        }
        let v = hyp0f2(1.0, 2.0, 0.125, &cfg()).unwrap();
        assert_relative_eq!(v, direct, max_relative = 1e-15);
        assert!((v - 1.063_153_305_763_08).abs() < 1e-13);
        let mut prev = 1.0;
        for k in 1..20 {
            let v = hyp0f2(0.25, 0.75, k as f64 * 0.1, &cfg()).unwrap();
            assert!(v.is_finite() && v > prev);
            prev = v;
        }
        assert!(hyp0f2(-1.0, 2.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn hermite_low_orders() {
        let (v, d) = hermite_phi(0, 0.0);
        assert_relative_eq!(v, PI.powf(-0.25), max_relative = 1e-15);
        assert_eq!(d, 0.0);
        assert_eq!(hermite_phi(1, 0.0).0, 0.0);
        // φ₂ = (2x² − 1) π^{-1/4} e^{-x²/2} / √2
        let x = 0.9;
        let expect = (2.0 * x * x - 1.0) * PI.powf(-0.25) * (-0.5 * x * x).exp() / 2f64.sqrt();
        assert_relative_eq!(hermite_phi(2, x).0, expect, max_relative = 1e-14);
    }

    #[test]
    fn hermite_schrodinger_residual() {
        let (n, x, h) = (3, 0.7, 1e-3);
        let f = |t: f64| hermite_phi(n, t).0;
        let second = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
            / (12.0 * h * h);
        let residual = -second + x * x * f(x) - 7.0 * f(x);
        assert!(residual.abs() < 1e-8, "residual {residual}");
        // derivative against a centered difference
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        assert!((fd - hermite_phi(n, x).1).abs() < 1e-6);
    }

    #[test]
    fn hermite_orthonormality_dense_grid() {
        let n_pts = 4001;
        let (lo, hi) = (-12.0, 12.0);
        let h = (hi - lo) / (n_pts - 1) as f64;
        let table: Vec<Vec<f64>> = (0..n_pts).map(|i| hermite_phi_all(12, lo + i as f64 * h)).collect();
        for n in 0..=12 {
            for m in 0..=n {
                let vals: Vec<f64> = table.iter().map(|row| row[n] * row[m]).collect();
                let s = quad::simpson(&vals, h);
                let target = if n == m { 1.0 } else { 0.0 };
                assert!((s - target).abs() < 1e-8, "({n},{m}) -> {s}");
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        assert!(SeriesConfig { rel_tol: 0.0, ..cfg() }.validate().is_err());
        assert!(SeriesConfig { max_terms: 0, ..cfg() }.validate().is_err());
        assert!(SeriesConfig { contour_points: 1, ..cfg() }.validate().is_err());
        assert!(SeriesConfig { contour_height: -1.0, ..cfg() }.validate().is_err());
    }
}
