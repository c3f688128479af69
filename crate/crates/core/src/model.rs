//! The complex Darboux partner of the oscillator H = p² + x².
//!
//! Two seed solutions u₁, u₂ of −u″ + x²u = εu build
//! α² = a u₁² + b u₁u₂ + c u₂², and from it the superpotential
//! β = −α′/α + iλ/α² and the potential V = x² + 2β′.
//!
//! Derivatives are analytic throughout: ₁F₁ is differentiated term-wise and
//! u″ = (x² − ε)u comes from the equation itself.

use crate::specfun::{erf_fn, kummer_1f1, quad, SeriesConfig, SpecFunError};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

/// α² below this is treated as a node.
pub const NODE_FLOOR: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("parameter `{field}` = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("4ac - b^2 - 4 lambda^2 = {residual:e}; the parameters must satisfy 4ac - b^2 = 4 lambda^2")]
    Constraint { residual: f64 },
    #[error("alpha^2 = {alpha2:e} at x = {x}: the transformation is singular here")]
    Singular { x: f64, alpha2: f64 },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Special(#[from] SpecFunError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub eps: f64,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ModelParams {
    /// Validated constructor.
    pub fn new(eps: f64, lambda: f64, a: f64, b: f64, c: f64) -> Result<Self, ModelError> {
        let p = Self { eps, lambda, a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("eps", self.eps),
            ("lambda", self.lambda),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::InvalidParameter { field, value, reason: "must be finite" });
            }
        }
        if !(self.eps < 1.0) {
            return Err(ModelError::InvalidParameter {
                field: "eps",
                value: self.eps,
                reason: "must lie below the oscillator ground energy 1",
            });
        }
        for (field, value) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if value < 0.0 {
                return Err(ModelError::InvalidParameter { field, value, reason: "must be non-negative" });
            }
        }
        let four_ac = 4.0 * self.a * self.c;
        let b2 = self.b * self.b;
        let four_l2 = 4.0 * self.lambda * self.lambda;
        let residual = four_ac - b2 - four_l2;
        if residual.abs() > 1e-12 * four_ac.max(b2).max(four_l2).max(1.0) {
            return Err(ModelError::Constraint { residual });
        }
        Ok(())
    }

    /// Parameters with λ fixed by the constraint, taking λ ≥ 0.
    pub fn with_lambda_from_constraint(eps: f64, a: f64, b: f64, c: f64) -> Result<Self, ModelError> {
        let disc = 4.0 * a * c - b * b;
        if disc < 0.0 {
            return Err(ModelError::Constraint { residual: disc });
        }
        Self::new(eps, 0.5 * disc.sqrt(), a, b, c)
    }

    /// a = π/4, b = 0, c = 1, λ = √π/2: α² even, so V is 𝒫𝒯-symmetric.
    pub fn pt_symmetric(eps: f64) -> Self {
        Self { eps, lambda: PI.sqrt() / 2.0, a: PI / 4.0, b: 0.0, c: 1.0 }
    }

    /// a = π/4, b = √π/2, c = 1, λ = √(3π)/4: no parity symmetry.
    pub fn asymmetric(eps: f64) -> Self {
        Self { eps, lambda: (3.0 * PI).sqrt() / 4.0, a: PI / 4.0, b: PI.sqrt() / 2.0, c: 1.0 }
    }

    /// Real one-parameter family at ε = −1: α² = (γu₁ + u₂)², which makes
    /// V = x² − 2 − 2M_γ′. Negative γ gives b < 0, so this skips validation.
    pub fn amm(gamma: f64) -> Self {
        Self { eps: -1.0, lambda: 0.0, a: gamma * gamma, b: 2.0 * gamma, c: 1.0 }
    }

    pub fn is_pt_symmetric(&self) -> bool {
        self.b == 0.0
    }
}

/// A uniform grid on [x_min, x_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { x_min: -10.0, x_max: 10.0, n_points: 2001 }
    }
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, ModelError> {
        if n_points < 2 {
            return Err(ModelError::Grid(format!("n_points must be at least 2, got {n_points}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(ModelError::Grid(format!("need finite x_min < x_max, got [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// Index of the grid point nearest to x.
    pub fn nearest(&self, x: f64) -> usize {
        let i = ((x - self.x_min) / self.spacing()).round();
        (i.max(0.0) as usize).min(self.n_points - 1)
    }
}

/// Complex samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub values: Vec<C64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<C64>) -> Self {
        assert_eq!(grid.n_points, values.len(), "sample count must match the grid");
        Self { x_min: grid.x_min, x_max: grid.x_max, n_points: grid.n_points, values }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> C64 + Sync) -> Self {
        let values = (0..grid.n_points).into_par_iter().map(|i| f(grid.point(i))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> Grid {
        Grid { x_min: self.x_min, x_max: self.x_max, n_points: self.n_points }
    }

    /// ∫ f g dx by Simpson, without conjugation.
    pub fn bilinear(&self, other: &GridFunction) -> C64 {
        let prod: Vec<C64> = self.values.iter().zip(&other.values).map(|(f, g)| f * g).collect();
        quad::simpson(&prod, self.grid().spacing())
    }

    pub fn conj(&self) -> Self {
        Self { values: self.values.iter().map(|v| v.conj()).collect(), ..self.clone() }
    }
}

/// u₁ = ₁F₁((1−ε)/4, 1/2; x²) e^{−x²/2}, u₂ = ₁F₁((3−ε)/4, 3/2; x²) x e^{−x²/2}.
///
/// Any real ε is accepted here; the ε < 1 rule belongs to [`ModelParams`].
/// The series overflow once x² approaches 700 (|x| ≈ 26).
pub fn seed_solutions(x: f64, eps: f64) -> Result<(f64, f64), ModelError> {
    let s = SeedPair::at(x, eps, &SeriesConfig::default())?;
    Ok((s.u1, s.u2))
}

/// The seeds and their first derivatives at one point. W(u₁, u₂) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedPair {
    pub x: f64,
    pub u1: f64,
    pub u2: f64,
    pub du1: f64,
    pub du2: f64,
}

impl SeedPair {
    pub fn at(x: f64, eps: f64, cfg: &SeriesConfig) -> Result<Self, ModelError> {
        let z = x * x;
        let gauss = (-0.5 * z).exp();
        let a1 = (1.0 - eps) / 4.0;
        let a2 = (3.0 - eps) / 4.0;
        let f1 = kummer_1f1(a1, 0.5, z, cfg)?;
        let f1_z = 2.0 * a1 * kummer_1f1(a1 + 1.0, 1.5, z, cfg)?;
        let f2 = kummer_1f1(a2, 1.5, z, cfg)?;
        let f2_z = a2 / 1.5 * kummer_1f1(a2 + 1.0, 2.5, z, cfg)?;
        Ok(Self {
            x,
            u1: f1 * gauss,
            u2: x * f2 * gauss,
            du1: (2.0 * x * f1_z - x * f1) * gauss,
            du2: (f2 + 2.0 * z * f2_z - z * f2) * gauss,
        })
    }
}

/// Everything the transformation needs at one point: α² and two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSample {
    pub seeds: SeedPair,
    pub alpha2: f64,
    pub d_alpha2: f64,
    pub dd_alpha2: f64,
    pub lambda: f64,
    pub eps: f64,
}

impl ModelSample {
    pub fn at(x: f64, p: &ModelParams) -> Result<Self, ModelError> {
        let s = SeedPair::at(x, p.eps, &SeriesConfig::default())?;
        let k = x * x - p.eps;
        let (u1, u2, v1, v2) = (s.u1, s.u2, s.du1, s.du2);
        let (w1, w2) = (k * u1, k * u2);
        let alpha2 = p.a * u1 * u1 + p.b * u1 * u2 + p.c * u2 * u2;
        let d_alpha2 = 2.0 * p.a * u1 * v1 + p.b * (v1 * u2 + u1 * v2) + 2.0 * p.c * u2 * v2;
        let dd_alpha2 = 2.0 * p.a * (v1 * v1 + u1 * w1)
            + p.b * (w1 * u2 + 2.0 * v1 * v2 + u1 * w2)
            + 2.0 * p.c * (v2 * v2 + u2 * w2);
        Ok(Self { seeds: s, alpha2, d_alpha2, dd_alpha2, lambda: p.lambda, eps: p.eps })
    }

    pub fn x(&self) -> f64 {
        self.seeds.x
    }

    fn check(&self) -> Result<(), ModelError> {
        if !(self.alpha2 > NODE_FLOOR) {
            return Err(ModelError::Singular { x: self.x(), alpha2: self.alpha2 });
        }
        Ok(())
    }

    pub fn alpha(&self) -> Result<f64, ModelError> {
        if self.alpha2 < 0.0 {
            return Err(ModelError::Singular { x: self.x(), alpha2: self.alpha2 });
        }
        Ok(self.alpha2.sqrt())
    }

    /// α′/α = (α²)′ / (2α²).
    pub fn log_alpha_slope(&self) -> Result<f64, ModelError> {
        self.check()?;
        Ok(self.d_alpha2 / (2.0 * self.alpha2))
    }

    pub fn beta(&self) -> Result<C64, ModelError> {
        self.check()?;
        Ok(C64::new(-self.d_alpha2 / (2.0 * self.alpha2), self.lambda / self.alpha2))
    }

    pub fn d_beta(&self) -> Result<C64, ModelError> {
        self.check()?;
        // ratios first: α² itself can pass 1e170 on wide grids
        let slope = self.d_alpha2 / self.alpha2;
        let curve = self.dd_alpha2 / self.alpha2;
        let re = -0.5 * (curve - slope * slope);
        let im = -self.lambda * slope / self.alpha2;
        Ok(C64::new(re, im))
    }

    /// V = x² + 2β′.
    pub fn potential(&self) -> Result<C64, ModelError> {
        Ok(self.x() * self.x() + 2.0 * self.d_beta()?)
    }

    /// V from the Riccati split: Re V = 2ε − x² + 2(α′/α)² − 2λ²/α⁴,
    /// Im V = −4λα′/α³.
    pub fn potential_split(&self) -> Result<C64, ModelError> {
        let slope = self.log_alpha_slope()?;
        let q = self.alpha2;
        let x = self.x();
        let lq = self.lambda / q;
        let re = 2.0 * self.eps - x * x + 2.0 * slope * slope - 2.0 * lq * lq;
        let im = -4.0 * self.lambda * slope / q;
        Ok(C64::new(re, im))
    }
}

/// Samples on every grid point, evaluated in parallel.
pub fn tabulate(p: &ModelParams, grid: &Grid) -> Result<Vec<ModelSample>, ModelError> {
    (0..grid.n_points)
        .into_par_iter()
        .map(|i| ModelSample::at(grid.point(i), p))
        .collect()
}

pub fn alpha_fn(x: f64, p: &ModelParams) -> Result<f64, ModelError> {
    ModelSample::at(x, p)?.alpha()
}

pub fn beta_fn(x: f64, p: &ModelParams) -> Result<C64, ModelError> {
    ModelSample::at(x, p)?.beta()
}

pub fn potential(x: f64, p: &ModelParams) -> Result<C64, ModelError> {
    ModelSample::at(x, p)?.potential()
}

pub fn potential_split(x: f64, p: &ModelParams) -> Result<C64, ModelError> {
    ModelSample::at(x, p)?.potential_split()
}

/// True when α² stays above the node floor on the grid.
///
/// Double roots of α² (possible when λ = 0) can slip between grid points,
/// so every local minimum is refined by golden-section search before
/// comparing with the floor.
pub fn nodeless_check(p: &ModelParams, grid: &Grid) -> bool {
    let q_at = |x: f64| ModelSample::at(x, p).map(|s| s.alpha2).unwrap_or(f64::NAN);
    let values: Vec<f64> = (0..grid.n_points).into_par_iter().map(|i| q_at(grid.point(i))).collect();
    if values.iter().any(|q| !(*q > NODE_FLOOR)) {
        return false;
    }
    let h = grid.spacing();
    for i in 1..values.len() - 1 {
        if values[i] <= values[i - 1] && values[i] <= values[i + 1] {
            let x = grid.point(i);
            if golden_min(&q_at, x - h, x + h) <= NODE_FLOOR {
                return false;
            }
        }
    }
    true
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// ∫_{−L}^{L} Im V dx by adaptive Gauss–Kronrod.
pub fn zero_total_area(p: &ModelParams, half_width: f64) -> Result<f64, ModelError> {
    let mut failure = None;
    let (value, _) = quad::integrate_adaptive(
        |x| match ModelSample::at(x, p).and_then(|s| s.potential()) {
            Ok(v) => v.im,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        -half_width,
        half_width,
        1e-14,
        1e-12,
        4000,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Im V = (2λ/α²)′, so the area is that expression between the endpoints.
pub fn total_area_closed_form(p: &ModelParams, half_width: f64) -> Result<f64, ModelError> {
    let hi = ModelSample::at(half_width, p)?;
    let lo = ModelSample::at(-half_width, p)?;
    hi.check()?;
    lo.check()?;
    Ok(2.0 * p.lambda / hi.alpha2 - 2.0 * p.lambda / lo.alpha2)
}

/// Closed ε = −1 potential, u₁ = e^{x²/2}, u₂ = (√π/2)e^{x²/2} erf x:
/// V = x² − 2 − 2 d/dx[(c√π erf x + b − 2iλ) / (2α²)].
pub fn potential_eps_minus1(x: f64, a: f64, b: f64, c: f64, lambda: f64) -> Result<C64, ModelError> {
    let erf = erf_fn(x);
    let sqrt_pi = PI.sqrt();
    let grow = (x * x).exp();
    let alpha2 = grow * (a + b * sqrt_pi / 2.0 * erf + c * PI / 4.0 * erf * erf);
    if !(alpha2 > NODE_FLOOR) {
        return Err(ModelError::Singular { x, alpha2 });
    }
    let d_alpha2 = 2.0 * x * alpha2 + b + c * sqrt_pi * erf;
    let num = C64::new(c * sqrt_pi * erf + b, -2.0 * lambda);
    let d_num = 2.0 * c * (-x * x).exp();
    let den = 2.0 * alpha2;
    let d_den = 2.0 * d_alpha2;
    let d_ratio = d_num / den - num * d_den / (den * den);
    Ok(C64::new(x * x - 2.0, 0.0) - 2.0 * d_ratio)
}

/// V(x; γ) = x² − 2 − 2M_γ′ with M_γ = e^{−x²} / (γ + ∫₀ˣ e^{−y²} dy).
pub fn amm_potential(x: f64, gamma: f64) -> Result<f64, ModelError> {
    let den = gamma + PI.sqrt() / 2.0 * erf_fn(x);
    let gauss = (-x * x).exp();
    if den.abs() < 1e-300 || !(den.abs() > 1e-12 * gauss) {
        return Err(ModelError::Singular { x, alpha2: den * den });
    }
    let m = gauss / den;
    let dm = -2.0 * x * m - m * m;
    Ok(x * x - 2.0 - 2.0 * dm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rules() {
        assert!(ModelParams::pt_symmetric(-1.0).validate().is_ok());
        assert!(ModelParams::asymmetric(-3.0).validate().is_ok());
        assert!(matches!(ModelParams::new(1.0, 0.0, 1.0, 2.0, 1.0), Err(ModelError::InvalidParameter { field: "eps", .. })));
        assert!(matches!(ModelParams::new(-1.0, 0.0, 1.0, -2.0, 1.0), Err(ModelError::InvalidParameter { field: "b", .. })));
        assert!(matches!(ModelParams::new(-1.0, 0.5, 1.0, 0.0, 1.0), Err(ModelError::Constraint { .. })));
        let p = ModelParams::with_lambda_from_constraint(-1.0, 2.0, 1.0, 1.0).unwrap();
        assert!((p.lambda - (7f64).sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn seeds_at_origin_and_terminating_case() {
        for eps in [-5.0, -1.0, 0.5] {
            let (u1, u2) = seed_solutions(0.0, eps).unwrap();
            assert_eq!((u1, u2), (1.0, 0.0));
        }
        for x in [0.3, 1.2, 2.5] {
            let (u1, _) = seed_solutions(x, 1.0).unwrap();
            assert_eq!(u1, (-0.5 * x * x).exp());
        }
    }

    #[test]
    fn seeds_closed_forms_at_eps_minus_one() {
        for x in [-2.0, -0.4, 0.8, 3.0] {
            let (u1, u2) = seed_solutions(x, -1.0).unwrap();
            let grow = (0.5 * x * x).exp();
            assert!((u1 - grow).abs() < 1e-13 * grow);
            assert!((u2 - PI.sqrt() / 2.0 * grow * erf_fn(x)).abs() < 1e-13 * grow);
        }
    }

    #[test]
    fn seeds_solve_the_equation_and_have_unit_wronskian() {
        let (x, eps, h) = (0.8, -1.0, 1e-3);
        for pick in [0usize, 1] {
            let f = |t: f64| {
                let (u1, u2) = seed_solutions(t, eps).unwrap();
                if pick == 0 { u1 } else { u2 }
            };
            let d2 = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
                / (12.0 * h * h);
            assert!((-d2 + x * x * f(x) - eps * f(x)).abs() < 1e-7);
        }
        for eps in [0.5, -3.0, -5.0] {
            for x in [-3.0, 0.2, 1.7] {
                let s = SeedPair::at(x, eps, &SeriesConfig::default()).unwrap();
                let w = s.u1 * s.du2 - s.du1 * s.u2;
                // cancellation between two growing products
                let scale = (s.u1 * s.du2).abs() + (s.du1 * s.u2).abs();
                assert!((w - 1.0).abs() < 1e-13 * scale, "eps {eps} x {x}: {w}");
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let p = ModelParams::pt_symmetric(-1.0);
        assert!((alpha_fn(0.0, &p).unwrap() - p.a.sqrt()).abs() < 1e-15);
        let single = ModelParams { eps: -3.0, lambda: 0.0, a: 1.0, b: 0.0, c: 0.0 };
        for x in [-1.0, 0.5, 2.0] {
            let (u1, _) = seed_solutions(x, -3.0).unwrap();
            assert!((alpha_fn(x, &single).unwrap() - u1.abs()).abs() < 1e-14 * u1.abs());
        }
        let grid = Grid::default();
        assert!(grid.points().iter().all(|&x| alpha_fn(x, &p).unwrap() > 0.0));
    }

    #[test]
    fn beta_at_origin_and_real_limit() {
        let p = ModelParams::pt_symmetric(-1.0);
        let b0 = beta_fn(0.0, &p).unwrap();
        assert!(b0.re.abs() < 1e-15);
        assert!((b0.im - 2.0 / PI.sqrt()).abs() < 1e-14);
        let real = ModelParams::amm(2.0);
        assert_eq!(beta_fn(1.3, &real).unwrap().im, 0.0);
    }

    #[test]
    fn nodeless_examples() {
        let grid = Grid::default();
        assert!(nodeless_check(&ModelParams::pt_symmetric(-1.0), &grid));
        assert!(!nodeless_check(&ModelParams { eps: -1.0, lambda: 0.0, a: 0.0, b: 0.0, c: 0.0 }, &grid));
        // (γu₁ + u₂)² with γ = 1/2 < √π/2 has a double root near x ≈ −0.55
        let nodal = ModelParams { eps: -1.0, lambda: 0.0, a: 0.25, b: 1.0, c: 1.0 };
        assert!(!nodeless_check(&nodal, &grid));
        // γ = 1 stays clear of zero: 1 + (√π/2) erf x > 0
        assert!(nodeless_check(&ModelParams { eps: -1.0, lambda: 0.0, a: 1.0, b: 2.0, c: 1.0 }, &grid));
    }

    #[test]
    fn both_potential_routes_agree() {
        for p in [ModelParams::pt_symmetric(0.5), ModelParams::asymmetric(-3.0), ModelParams::asymmetric(-5.0)] {
            for x in [-6.0, -1.1, 0.0, 0.7, 4.0] {
                let v1 = potential(x, &p).unwrap();
                let v2 = potential_split(x, &p).unwrap();
                assert!((v1 - v2).norm() < 1e-8 * (1.0 + v1.norm()), "{p:?} x {x}");
            }
        }
    }

    #[test]
    fn closed_eps_minus_one_form() {
        for p in [ModelParams::pt_symmetric(-1.0), ModelParams::asymmetric(-1.0)] {
            for k in -20..=20 {
                let x = k as f64 * 0.5;
                let general = potential(x, &p).unwrap();
                let closed = potential_eps_minus1(x, p.a, p.b, p.c, p.lambda).unwrap();
                assert!((general - closed).norm() < 1e-8, "x {x}: {general} vs {closed}");
            }
        }
        let v = potential_eps_minus1(0.7, 1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn oscillator_tail() {
        let p = ModelParams::asymmetric(-3.0);
        let v = potential(20.0, &p).unwrap();
        assert!((v.re / 400.0 - 1.0).abs() < 1e-2, "{v}");
    }

    #[test]
    fn zero_area_examples() {
        let real = ModelParams::amm(3.0);
        assert_eq!(zero_total_area(&real, 5.0).unwrap(), 0.0);
        let p = ModelParams::pt_symmetric(-1.0);
        let area = zero_total_area(&p, 10.0).unwrap();
        assert!(area.abs() < 1e-8);
        assert!((area - total_area_closed_form(&p, 10.0).unwrap()).abs() < 1e-10);
        let q = ModelParams::asymmetric(-3.0);
        let area = zero_total_area(&q, 3.0).unwrap();
        assert!((area - total_area_closed_form(&q, 3.0).unwrap()).abs() < 1e-10);
        assert!(zero_total_area(&q, 10.0).unwrap().abs() < 1e-6);
    }

    #[test]
    fn amm_examples() {
        for k in -60..=60 {
            let x = k as f64 * 0.1;
            let v = amm_potential(x, 1e6).unwrap();
            assert!((v - (x * x - 2.0)).abs() < 1e-5);
            let w = amm_potential(x, 2.0).unwrap();
            assert!(w.is_finite());
        }
        assert!((amm_potential(1.0, 2.0).unwrap() - amm_potential(-1.0, 2.0).unwrap()).abs() > 1e-3);
        assert!(amm_potential(-10.0, PI.sqrt() / 2.0).is_err());
        // AMM parameters reproduce the general construction
        for x in [-2.0, 0.0, 1.5] {
            let general = potential(x, &ModelParams::amm(2.0)).unwrap();
            assert!((general.re - amm_potential(x, 2.0).unwrap()).abs() < 1e-9);
        }
    }
}
