//! Fock–Bargmann series, the ladder operators acting on them, and the
//! formal P-representation of number-like and coherent states.
//!
//! A state v = Σ vₖ ψₖ maps to f(z*) = Σₙ vₙ₊₁ κₙ (z*)ⁿ, where κₙ (z*)ⁿ is the
//! conjugated unnormalized coherent-state coefficient of the family. The
//! ψ₀ component has no image.

use crate::algebra::TruncatedOperator;
use crate::coherent::CoherentError;
use crate::specfun::quad::integrate_adaptive;
use crate::specfun::{hyp0f2, kummer_1f1, ln_gamma, MellinBarnesH, SeriesConfig, SpecFunError};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BargmannError {
    #[error("parameter `{field}` = {value} out of range: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("f1 = {given} does not match the constant term {actual} of the series")]
    ConstantMismatch { given: C64, actual: C64 },
    #[error("state has no P-representation here: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Special(#[from] SpecFunError),
    #[error(transparent)]
    Coherent(#[from] CoherentError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BargmannFamily {
    Natural { eps: f64 },
    Distorted { w: f64 },
}

impl BargmannFamily {
    fn validate(&self) -> Result<(), BargmannError> {
        match *self {
            BargmannFamily::Natural { eps } if !(eps < 1.0) => {
                Err(BargmannError::Domain { field: "eps", value: eps, reason: "must be below 1" })
            }
            BargmannFamily::Distorted { w } if !(w > 0.0) || !w.is_finite() => {
                Err(BargmannError::Domain { field: "w", value: w, reason: "must be positive" })
            }
            _ => Ok(()),
        }
    }

    /// κₙ, so that c*ₙ₊₁(z) = κₙ (z*)ⁿ.
    pub fn weight(&self, n: usize) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let nf = n as f64;
        let ln = match *self {
            BargmannFamily::Natural { eps } => {
                let (b1, b2) = ((1.0 - eps) / 2.0, (3.0 - eps) / 2.0);
                lg(b1) + lg(b2) - lg(nf + 1.0) - lg(nf + b1) - lg(nf + b2) - nf * 8f64.ln()
            }
            BargmannFamily::Distorted { w } => lg(w) - lg(w + nf) - nf * 2f64.ln(),
        };
        (0.5 * ln).exp()
    }
}

fn lg(x: f64) -> f64 {
    ln_gamma(x).expect("positive argument")
}

/// Coefficients of (z*)ⁿ, n = 0..len.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    pub coeffs: Vec<C64>,
    /// Set when an operation pushed a non-zero term past the last slot.
    pub overflow: bool,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs, overflow: false }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// f(z*) by Horner.
    pub fn eval(&self, zc: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * zc + c)
    }

    /// Formal d/dz*.
    pub fn derivative(&self) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); self.len()];
        for n in 1..self.len() {
            out[n - 1] = self.coeffs[n] * n as f64;
        }
        Self { coeffs: out, overflow: self.overflow }
    }

    /// Multiplication by z*, keeping the length.
    pub fn times_z(&self) -> Self {
        let len = self.len();
        let mut out = vec![C64::new(0.0, 0.0); len];
        for n in 1..len {
            out[n] = self.coeffs[n - 1];
        }
        let spilled = len > 0 && self.coeffs[len - 1] != C64::new(0.0, 0.0);
        Self { coeffs: out, overflow: self.overflow || spilled }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect(), overflow: self.overflow }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().max(other.len());
        let at = |s: &Self, k: usize| s.coeffs.get(k).copied().unwrap_or_default();
        Self {
            coeffs: (0..len).map(|k| at(self, k) + at(other, k)).collect(),
            overflow: self.overflow || other.overflow,
        }
    }

    /// Largest coefficient gap to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let len = self.len().max(other.len());
        let at = |s: &Self, k: usize| s.coeffs.get(k).copied().unwrap_or_default();
        (0..len).map(|k| (at(self, k) - at(other, k)).norm()).fold(0.0, f64::max)
    }
}

/// f(z*) = Σ vₙ₊₁ κₙ (z*)ⁿ for a ψ-basis coefficient vector v.
pub fn to_bargmann(v: &[C64], family: BargmannFamily) -> Result<PowerSeries, BargmannError> {
    family.validate()?;
    let coeffs = v.iter().skip(1).enumerate().map(|(n, vn)| vn * family.weight(n)).collect();
    Ok(PowerSeries::new(coeffs))
}

/// Inverse of [`to_bargmann`], with a zero ψ₀ component.
pub fn from_bargmann(series: &PowerSeries, family: BargmannFamily) -> Result<Vec<C64>, BargmannError> {
    family.validate()?;
    let mut v = vec![C64::new(0.0, 0.0)];
    v.extend(series.coeffs.iter().enumerate().map(|(n, p)| p / family.weight(n)));
    Ok(v)
}

/// Raising operator image: multiplication by z* (both families).
pub fn bargmann_create(series: &PowerSeries) -> PowerSeries {
    series.times_z()
}

/// 𝒜 in the natural series space:
/// 2[4z*²∂³ + 4(3−ε)z*∂² + (1−ε)(3−ε)∂].
pub fn bargmann_annihilate_natural(series: &PowerSeries, eps: f64) -> PowerSeries {
    let d1 = series.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let cubic = d3.times_z().times_z().scale(C64::new(4.0, 0.0));
    let quadratic = d2.times_z().scale(C64::new(4.0 * (3.0 - eps), 0.0));
    let linear = d1.scale(C64::new((1.0 - eps) * (3.0 - eps), 0.0));
    let mut out = cubic.add(&quadratic).add(&linear).scale(C64::new(2.0, 0.0));
    // z* factors re-enter after ∂ and never spill
    out.overflow = series.overflow;
    out
}

/// 𝒞_w in the distorted series space: 2∂f + 2(w−1)(f − f₁)/z*.
///
/// `f1` must be the constant term; (f − f₁)/z* is then an exact index shift.
pub fn bargmann_annihilate_distorted(series: &PowerSeries, w: f64, f1: C64) -> Result<PowerSeries, BargmannError> {
    let actual = series.coeffs.first().copied().unwrap_or_default();
    if (actual - f1).norm() > 1e-14 * actual.norm().max(1.0) {
        return Err(BargmannError::ConstantMismatch { given: f1, actual });
    }
    let len = series.len();
    let mut shifted = vec![C64::new(0.0, 0.0); len];
    for n in 1..len {
        shifted[n - 1] = series.coeffs[n];
    }
    let shifted = PowerSeries { coeffs: shifted, overflow: series.overflow };
    Ok(series
        .derivative()
        .scale(C64::new(2.0, 0.0))
        .add(&shifted.scale(C64::new(2.0 * (w - 1.0), 0.0))))
}

/// 𝒜_∂ in the natural series space: 2 d/dz*.
pub fn bargmann_partial_natural(series: &PowerSeries) -> PowerSeries {
    series.derivative().scale(C64::new(2.0, 0.0))
}

/// Matrix of 𝒜_∂: 𝒜_∂[n+1][n+2] = √(2(n+1)/((2n+1−ε)(2n+3−ε))).
pub fn ladder_partial(eps: f64, dim: usize) -> TruncatedOperator {
    TruncatedOperator::from_real("A_d", dim, |r, c| {
        if r >= 1 && c == r + 1 {
            let n = (r - 1) as f64;
            // 2(n+1)/g(n), so that the series image is plain 2∂
            (2.0 * (n + 1.0) / ((2.0 * n + 1.0 - eps) * (2.0 * n + 3.0 - eps))).sqrt()
        } else {
            0.0
        }
    })
}

/// Measure data for bi-product quadratures and P pairings.
#[derive(Debug, Clone)]
pub enum Measure {
    Natural { eps: f64, h: Box<MellinBarnesH> },
    Distorted { w: f64 },
}

impl Measure {
    pub fn new(family: BargmannFamily, cfg: &SeriesConfig) -> Result<Self, BargmannError> {
        family.validate()?;
        Ok(match family {
            BargmannFamily::Natural { eps } => Measure::Natural { eps, h: Box::new(MellinBarnesH::new(eps, cfg)?) },
            BargmannFamily::Distorted { w } => Measure::Distorted { w },
        })
    }

    pub fn family(&self) -> BargmannFamily {
        match self {
            Measure::Natural { eps, .. } => BargmannFamily::Natural { eps: *eps },
            Measure::Distorted { w } => BargmannFamily::Distorted { w: *w },
        }
    }

    /// dσ = |c₀|² dμ per d²z.
    pub fn sigma_density(&self, r: f64) -> f64 {
        match self {
            Measure::Natural { eps, h } => {
                let (b1, b2) = ((1.0 - eps) / 2.0, (3.0 - eps) / 2.0);
                h.eval(r * r / 8.0) / (lg(b1) + lg(b2)).exp()
            }
            Measure::Distorted { w } => self.radial_factor(r) / (PI * lg(*w).exp()),
        }
    }

    /// The r-dependent denominator of the P-functions: h(r²/8) for the natural
    /// family, r^{2(w−1)} 2^{−w} e^{−r²/2} for the distorted one.
    pub fn radial_factor(&self, r: f64) -> f64 {
        match self {
            Measure::Natural { h, .. } => h.eval(r * r / 8.0),
            Measure::Distorted { w } => (2.0 * (w - 1.0) * r.ln() - w * 2f64.ln() - r * r / 2.0).exp(),
        }
    }

    /// Radius past which the measure is negligible.
    pub fn disk_radius(&self) -> f64 {
        match self {
            Measure::Natural { h, .. } => (8.0 * h.support_limit()).sqrt(),
            Measure::Distorted { .. } => 20.0,
        }
    }

    /// Power s of the substitution t = r^s used on [0, 1].
    fn endpoint_power(&self) -> f64 {
        match self {
            Measure::Natural { .. } => 2.0,
            Measure::Distorted { w } => 2.0 * w,
        }
    }
}

/// (g, f) as Σ conj(gₙ) fₙ, the concomitant pairing in coefficient space.
pub fn bi_product_series(g: &PowerSeries, f: &PowerSeries, family: BargmannFamily) -> Result<C64, BargmannError> {
    let gv = from_bargmann(g, family)?;
    let fv = from_bargmann(f, family)?;
    Ok(gv.iter().zip(&fv).map(|(a, b)| a.conj() * b).sum())
}

/// (g, f) = ∫ conj(g(z*)) f(z*) dσ over the disk |z| ≤ `measure.disk_radius()`.
pub fn bi_product_quadrature(g: &PowerSeries, f: &PowerSeries, measure: &Measure) -> C64 {
    let degree = g.len().max(f.len());
    let angles = 2 * degree + 2;
    // trapezoid in θ is exact for the trigonometric polynomial that arises
    let ring = |r: f64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..angles {
            let zc = C64::from_polar(r, -2.0 * PI * k as f64 / angles as f64);
            acc += g.eval(zc).conj() * f.eval(zc);
        }
        acc * (2.0 * PI / angles as f64) * measure.sigma_density(r) * r
    };
    let part = |pick: fn(C64) -> f64| -> f64 {
        let s = measure.endpoint_power();
        let near = integrate_adaptive(
            |t: f64| {
                if t == 0.0 {
                    return 0.0;
                }
                let r = t.powf(1.0 / s);
                pick(ring(r)) * r / (s * t)
            },
            0.0,
            1.0,
            1e-12,
            1e-10,
            400,
        )
        .0;
        let r_max = measure.disk_radius();
        let mut far = 0.0;
        let mut lo = 1.0;
        for hi in [4.0, 16.0, r_max] {
            if hi > lo {
                far += integrate_adaptive(|r| pick(ring(r)), lo, hi.min(r_max), 1e-12, 1e-10, 400).0;
                lo = hi;
            }
        }
        near + far
    };
    C64::new(part(|c| c.re), part(|c| c.im))
}

/// Shape of a P-function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PKind {
    ConstantOne,
    /// ∂^{2n}/∂zⁿ∂z*ⁿ δ²(z); order 0 is δ²(z) itself.
    DeltaDerivative { order: usize },
    DeltaAt { alpha: C64 },
}

/// Which state ρ = |·⟩⟨·̄| is represented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PTarget {
    Ground,
    /// ψₙ₊₁
    Excited(usize),
    Coherent(C64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PDistribution {
    pub kind: PKind,
    pub family: BargmannFamily,
    /// Closed form of the prefactor.
    pub tag: String,
    /// Constant part of the prefactor (everything except the radial factor).
    pub prefactor: f64,
}

pub fn p_representation(target: PTarget, family: BargmannFamily) -> Result<PDistribution, BargmannError> {
    family.validate()?;
    let cfg = SeriesConfig::default();
    let (kind, tag, prefactor) = match (target, family) {
        (PTarget::Ground, _) => (PKind::ConstantOne, "P0 = 1".to_string(), 1.0),
        (PTarget::Excited(n), BargmannFamily::Natural { eps }) => {
            let (b1, b2) = ((1.0 - eps) / 2.0, (3.0 - eps) / 2.0);
            let nf = n as f64;
            let value = (nf * 8f64.ln() + lg(nf + b1) + lg(nf + b2) - lg(nf + 1.0)).exp();
            (
                PKind::DeltaDerivative { order: n },
                format!("8^{n} Γ({n}+(1-ε)/2) Γ({n}+(3-ε)/2) / ({n}! h(r²/8))"),
                value,
            )
        }
        (PTarget::Excited(n), BargmannFamily::Distorted { w }) => {
            let nf = n as f64;
            let value = PI * (nf * 2f64.ln() + lg(w + nf) - 2.0 * lg(nf + 1.0)).exp();
            (
                PKind::DeltaDerivative { order: n },
                format!("π 2^{n} Γ(w+{n}) / (({n}!)² r^(2(w-1)) h_w(r²))"),
                value,
            )
        }
        (PTarget::Coherent(alpha), BargmannFamily::Natural { eps }) => {
            let (b1, b2) = ((1.0 - eps) / 2.0, (3.0 - eps) / 2.0);
            let f = hyp0f2(b1, b2, alpha.norm_sqr() / 8.0, &cfg)?;
            (
                PKind::DeltaAt { alpha },
                "Γ((1-ε)/2) Γ((3-ε)/2) / (0F2(|α|²/8) h(r²/8))".to_string(),
                (lg(b1) + lg(b2)).exp() / f,
            )
        }
        (PTarget::Coherent(alpha), BargmannFamily::Distorted { w }) => {
            let f = kummer_1f1(1.0, w, alpha.norm_sqr() / 2.0, &cfg)?;
            (
                PKind::DeltaAt { alpha },
                "π Γ(w) / (1F1(1,w;|α|²/2) r^(2(w-1)) h_w(r²))".to_string(),
                PI * lg(w).exp() / f,
            )
        }
    };
    Ok(PDistribution { kind, family, tag, prefactor })
}

/// Coefficient of ζⁿηⁿ in G(ζ, η) by a double trapezoid on the unit circles.
fn diagonal_coefficient(left: &PowerSeries, right: &PowerSeries, n: usize) -> C64 {
    let m = left.len().max(right.len()) + 2;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..m {
        let zeta = C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        let lz = left.eval(zeta) * zeta.powu(n as u32).inv();
        for k in 0..m {
            let eta = C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
            acc += lz * right.eval(eta) * eta.powu(n as u32).inv();
        }
    }
    acc / (m * m) as f64
}

/// ⟨ū|ρ|v⟩ = ∫ dσ P ⟨ū|φ(z)⟩_U ⟨φ̄(z)|v⟩_U, with u and v given in the ψ-basis.
///
/// δ-derivatives act through integration by parts; the surviving radial
/// factors are evaluated from the measure at the support point.
pub fn pair(p: &PDistribution, measure: &Measure, u: &[C64], v: &[C64]) -> Result<C64, BargmannError> {
    if measure.family() != p.family {
        return Err(BargmannError::Unsupported("measure and P-function belong to different families".into()));
    }
    // ⟨ū|φ(z)⟩_U = Σ conj(uₙ₊₁) κₙ zⁿ, ⟨φ̄(z)|v⟩_U = Σ vₙ₊₁ κₙ z*ⁿ
    let left = to_bargmann(&u.iter().map(|c| c.conj()).collect::<Vec<_>>(), p.family)?;
    let right = to_bargmann(v, p.family)?;
    // dσ · P = prefactor · (σ density / radial factor) · distribution
    let ratio_at = |r: f64| measure.sigma_density(r) / measure.radial_factor(r);
    Ok(match p.kind {
        PKind::ConstantOne => {
            let u0 = u.first().copied().unwrap_or_default();
            let v0 = v.first().copied().unwrap_or_default();
            u0.conj() * v0 * p.prefactor
        }
        PKind::DeltaDerivative { order } => {
            // ∂_z^n ∂_z*^n G(0) = (n!)² × coefficient of zⁿ z*ⁿ; even order, no sign
            let fact = (lg(order as f64 + 1.0)).exp();
            let r0 = 1e-3;
            diagonal_coefficient(&left, &right, order) * (fact * fact * p.prefactor * ratio_at(r0))
        }
        PKind::DeltaAt { alpha } => {
            let g = left.eval(alpha) * right.eval(alpha.conj());
            g * (p.prefactor * ratio_at(alpha.norm()))
        }
    })
}
