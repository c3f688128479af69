//! Coherent-state families on span{ψ₀, ψ₁, …}: coefficient vectors,
//! reproducing kernels, uncertainty products, resolution-of-identity
//! measures and the displacement-operator check.
//!
//! Every family is a superposition over ψ₁, ψ₂, …, so `coeffs[0]` is always 0
//! and `coeffs[n + 1]` multiplies ψₙ₊₁.

use crate::algebra::{ladder_a, ladder_cw, quadratures, AlgebraError, TruncatedOperator};
use crate::expm::expm;
use crate::specfun::quad::integrate_adaptive;
use crate::specfun::{hyp0f2, hyp0f2_complex, kummer_1f1, kummer_1f1_complex, ln_gamma, MellinBarnesH, SeriesConfig, SpecFunError};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

/// Largest dimension `required_dim` will hand out.
pub const MAX_DIM: usize = 4000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoherentError {
    #[error("parameter `{field}` = {value} out of range: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("dimension {dim} too small: dropped tail {tail:.3e} of the norm")]
    Truncation { dim: usize, tail: f64 },
    #[error(transparent)]
    Special(#[from] SpecFunError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Image of the oscillator coherent state under the intertwiner.
    Transformed { eps: f64 },
    /// Eigenstates of 𝒜.
    Natural { eps: f64 },
    /// Eigenstates of 𝒞_w.
    Distorted { w: f64 },
    /// D_w(z) = e^{z𝒞_w⁺} e^{−z*𝒞_w} applied to ψ₁.
    Displaced { w: f64 },
}

impl Family {
    fn validate(&self) -> Result<(), CoherentError> {
        match *self {
            Family::Transformed { eps } | Family::Natural { eps } => {
                if !(eps < 1.0) {
                    return Err(CoherentError::Domain { field: "eps", value: eps, reason: "must be below 1" });
                }
            }
            Family::Distorted { w } | Family::Displaced { w } => {
                if !(w > 0.0) || !w.is_finite() {
                    return Err(CoherentError::Domain {
                        field: "w",
                        value: w,
                        reason: "coherent states need w > 0 (Γ(w) pole at 0)",
                    });
                }
            }
        }
        Ok(())
    }

    /// a_{n+1}/a_n for the unnormalized coefficient a_n of ψₙ₊₁.
    fn ratio(&self, n: usize, z: C64) -> C64 {
        let nf = n as f64;
        match *self {
            // √((2n+3−ε)/(2n+1−ε)) · (α/√2)/√(n+1)
            Family::Transformed { eps } => {
                z * ((2.0 * nf + 3.0 - eps) / ((2.0 * nf + 1.0 - eps) * 2.0 * (nf + 1.0))).sqrt()
            }
            Family::Natural { eps } => {
                z / (2.0 * (nf + 1.0) * (2.0 * nf + 1.0 - eps) * (2.0 * nf + 3.0 - eps)).sqrt()
            }
            Family::Distorted { w } => z / (2.0 * (w + nf)).sqrt(),
            Family::Displaced { w } => z * (2.0 * (w + nf)).sqrt() / (nf + 1.0),
        }
    }

    /// Unnormalized leading coefficient a₀.
    fn leading(&self) -> f64 {
        match *self {
            Family::Transformed { eps } => (1.0 - eps).sqrt(),
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub family: Family,
    pub z: C64,
    pub coeffs: Vec<C64>,
    pub norm_const: f64,
}

impl CoherentState {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Σ cₘ* Oₘₙ cₙ.
    pub fn expectation(&self, op: &TruncatedOperator) -> C64 {
        quadratic_form(&self.coeffs, op)
    }
}

fn quadratic_form(c: &[C64], op: &TruncatedOperator) -> C64 {
    op.apply(c).iter().zip(c).map(|(oc, ci)| ci.conj() * oc).sum()
}

/// Unnormalized coefficients a₀ … a_{len−1}.
fn raw_series(family: &Family, z: C64, len: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(len);
    let mut a = C64::new(family.leading(), 0.0);
    for n in 0..len {
        out.push(a);
        a *= family.ratio(n, z);
    }
    out
}

/// Smallest dimension whose dropped tail is below 1e-16 of the norm.
pub fn required_dim(family: Family, z: C64) -> Result<usize, CoherentError> {
    family.validate()?;
    let mut a = C64::new(family.leading(), 0.0);
    let mut sum = 0.0;
    for n in 0..MAX_DIM {
        let t = a.norm_sqr();
        sum += t;
        let next = a * family.ratio(n, z);
        // once the ratio is below 1/2 the rest is bounded by a geometric series
        if n > 0 && next.norm_sqr() < 1e-17 * sum && next.norm() <= 0.5 * a.norm() {
            return Ok((n + 2).max(3));
        }
        a = next;
    }
    Err(CoherentError::Truncation { dim: MAX_DIM, tail: a.norm_sqr() / sum })
}

fn closed_norm_const(family: &Family, z: C64, cfg: &SeriesConfig) -> Result<f64, CoherentError> {
    let r2 = z.norm_sqr();
    Ok(match *family {
        Family::Transformed { eps } => (-r2 / 4.0).exp() / (r2 + 1.0 - eps).sqrt(),
        Family::Natural { eps } => hyp0f2((1.0 - eps) / 2.0, (3.0 - eps) / 2.0, r2 / 8.0, cfg)?.powf(-0.5),
        Family::Distorted { w } => kummer_1f1(1.0, w, r2 / 2.0, cfg)?.powf(-0.5),
        Family::Displaced { w } => kummer_1f1(w, 1.0, 2.0 * r2, cfg)?.powf(-0.5),
    })
}

/// Coherent state of `family` at label `z`, truncated to `dim` components.
pub fn coherent_state(family: Family, z: C64, dim: usize) -> Result<CoherentState, CoherentError> {
    family.validate()?;
    if dim < 2 {
        return Err(CoherentError::Truncation { dim, tail: 1.0 });
    }
    let norm_const = closed_norm_const(&family, z, &SeriesConfig::default())?;
    let mut coeffs = vec![C64::new(0.0, 0.0)];
    coeffs.extend(raw_series(&family, z, dim - 1).into_iter().map(|a| a * norm_const));
    Ok(CoherentState { family, z, coeffs, norm_const })
}

pub fn transformed_cs(alpha: C64, eps: f64, dim: usize) -> Result<CoherentState, CoherentError> {
    coherent_state(Family::Transformed { eps }, alpha, dim)
}

pub fn natural_cs(z: C64, eps: f64, dim: usize) -> Result<CoherentState, CoherentError> {
    coherent_state(Family::Natural { eps }, z, dim)
}

pub fn distorted_cs(z: C64, w: f64, dim: usize) -> Result<CoherentState, CoherentError> {
    coherent_state(Family::Distorted { w }, z, dim)
}

/// Lowering operator whose eigenvectors form `family`; none for the
/// transformed and displaced families.
pub fn annihilator(family: Family, dim: usize) -> Result<Option<TruncatedOperator>, CoherentError> {
    family.validate()?;
    Ok(match family {
        Family::Natural { eps } => Some(ladder_a(eps, dim)?.0),
        Family::Distorted { w } => Some(ladder_cw(w, dim)?.0),
        _ => None,
    })
}

/// ‖Lv − zv‖ over rows 0..N−2; the last row needs a component past the cut.
pub fn eigen_residual(state: &CoherentState) -> Result<f64, CoherentError> {
    let op = annihilator(state.family, state.dim())?.ok_or(CoherentError::Domain {
        field: "family",
        value: f64::NAN,
        reason: "only natural and distorted states are annihilator eigenvectors",
    })?;
    let lv = op.apply(&state.coeffs);
    let interior = state.dim() - 1;
    Ok((0..interior)
        .map(|k| (lv[k] - state.z * state.coeffs[k]).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

fn natural_params(eps: f64) -> Result<(f64, f64), CoherentError> {
    Family::Natural { eps }.validate()?;
    Ok(((1.0 - eps) / 2.0, (3.0 - eps) / 2.0))
}

/// K_𝒩(y*, z) = ⟨φ̄(y)|φ(z)⟩.
pub fn natural_kernel(y: C64, z: C64, eps: f64) -> Result<C64, CoherentError> {
    let (b1, b2) = natural_params(eps)?;
    let cfg = SeriesConfig::default();
    let cross = hyp0f2_complex(b1, b2, y.conj() * z / 8.0, &cfg)?;
    let ny = hyp0f2(b1, b2, y.norm_sqr() / 8.0, &cfg)?;
    let nz = hyp0f2(b1, b2, z.norm_sqr() / 8.0, &cfg)?;
    Ok(cross / (ny * nz).sqrt())
}

/// K_w(y*, z) = ⟨φ̄(y)|φ(z)⟩.
pub fn distorted_kernel(y: C64, z: C64, w: f64) -> Result<C64, CoherentError> {
    Family::Distorted { w }.validate()?;
    let cfg = SeriesConfig::default();
    let cross = kummer_1f1_complex(1.0, w, y.conj() * z / 2.0, &cfg)?;
    let ny = kummer_1f1(1.0, w, y.norm_sqr() / 2.0, &cfg)?;
    let nz = kummer_1f1(1.0, w, z.norm_sqr() / 2.0, &cfg)?;
    Ok(cross / (ny * nz).sqrt())
}

/// Closed-form moments of the natural family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalMoments {
    pub mean_h: f64,
    pub mean_h2: f64,
    pub dxdp: f64,
}

/// ⟨H⟩, ⟨H²⟩ and ΔXΔP = ½[3⟨H²⟩ − 4ε⟨H⟩ + ε²] from ₀F₂ ratios.
pub fn natural_variance(z: C64, eps: f64) -> Result<NaturalMoments, CoherentError> {
    let (b1, b2) = natural_params(eps)?;
    let cfg = SeriesConfig::default();
    let r2 = z.norm_sqr();
    let x = r2 / 8.0;
    let base = hyp0f2(b1, b2, x, &cfg)?;
    let up1 = hyp0f2(b1 + 1.0, b2 + 1.0, x, &cfg)?;
    let up2 = hyp0f2(b1 + 2.0, b2 + 2.0, x, &cfg)?;
    let mean_h = 1.0 + r2 / ((1.0 - eps) * (3.0 - eps)) * (up1 / base);
    let mean_h2 = 4.0 * mean_h - 3.0
        + r2 * r2 / ((1.0 - eps) * (3.0 - eps).powi(2) * (5.0 - eps)) * (up2 / base);
    let dxdp = 0.5 * (3.0 * mean_h2 - 4.0 * eps * mean_h + eps * eps);
    Ok(NaturalMoments { mean_h, mean_h2, dxdp })
}

/// √(ΔX² ΔP²) from the truncated quadratures (X, P) and a coefficient vector.
fn uncertainty_from(x: &TruncatedOperator, p: &TruncatedOperator, c: &[C64]) -> f64 {
    let var = |op: &TruncatedOperator| {
        let sq = op.mul(op).expect("same dimension");
        (quadratic_form(c, &sq) - quadratic_form(c, op).powi(2)).re
    };
    (var(x) * var(p)).sqrt()
}

/// ΔXΔP from X = (𝒜⁺+𝒜)/2, P = i(𝒜⁺−𝒜)/2 on the truncated state.
pub fn natural_variance_matrix(z: C64, eps: f64, dim: usize) -> Result<f64, CoherentError> {
    let state = natural_cs(z, eps, dim)?;
    let (x, p) = quadratures(eps, dim)?;
    Ok(uncertainty_from(&x, &p, &state.coeffs))
}

/// ΔX_wΔP_w = ½⟨I_w⟩ = ½[1 + (w−1)/₁F₁(1,w;r²/2)]; no ε dependence.
pub fn distorted_variance(z: C64, w: f64) -> Result<f64, CoherentError> {
    Family::Distorted { w }.validate()?;
    let f = kummer_1f1(1.0, w, z.norm_sqr() / 2.0, &SeriesConfig::default())?;
    // written so that r = 0 gives w/2 and w = 1 gives 1/2 without rounding
    Ok(0.5 * (w + (w - 1.0) * (1.0 / f - 1.0)))
}

/// ΔX_wΔP_w from X_w = (𝒞⁺+𝒞)/2, P_w = i(𝒞⁺−𝒞)/2.
pub fn distorted_variance_matrix(z: C64, w: f64, dim: usize) -> Result<f64, CoherentError> {
    let state = distorted_cs(z, w, dim)?;
    let (c, cp, _) = ladder_cw(w, dim)?;
    let x = TruncatedOperator::new("X_w", (&cp.entries + &c.entries).map(|v| v * 0.5));
    let p = TruncatedOperator::new("P_w", (&cp.entries - &c.entries).map(|v| v * C64::new(0.0, 0.5)));
    Ok(uncertainty_from(&x, &p, &state.coeffs))
}

/// |c₀|²|cₙ₊₁|² for the natural family at x = r²/8, via logs.
fn natural_projection(n: usize, x: f64, b1: f64, b2: f64) -> Result<f64, SpecFunError> {
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    let ln = nf * x.ln() - ln_gamma(nf + 1.0)? - ln_gamma(nf + b1)? - ln_gamma(nf + b2)?
        + ln_gamma(b1)?
        + ln_gamma(b2)?;
    Ok(ln.exp())
}

/// Λₙ of the natural closure relation, n = 0..=n_max, by radial quadrature
/// of |⟨ψ̄ₙ₊₁|φ(z)⟩|² against dμ built on the inverted weight.
pub fn natural_lambdas(eps: f64, n_max: usize, cfg: &SeriesConfig) -> Result<Vec<f64>, CoherentError> {
    let (b1, b2) = natural_params(eps)?;
    let h = MellinBarnesH::new(eps, cfg)?;
    let gamma_pair = (ln_gamma(b1)? + ln_gamma(b2)?).exp();
    let r_max = (8.0 * h.support_limit()).sqrt();
    let breaks: Vec<f64> = [0.0, 1.0, 4.0, 16.0]
        .into_iter()
        .filter(|&b| b < r_max)
        .chain(std::iter::once(r_max))
        .collect();
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut failure = None;
            let mut integrand = |r: f64| {
                let x = r * r / 8.0;
                if x == 0.0 {
                    return 0.0;
                }
                let eval = || -> Result<f64, SpecFunError> {
                    let f = hyp0f2(b1, b2, x, cfg)?;
                    let density = f * h.eval(x) / gamma_pair;
                    // c₀² = 1/f, so the ₀F₂ factors cancel analytically
                    Ok(2.0 * PI * r * natural_projection(n, x, b1, b2)? / f * density)
                };
                eval().unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    0.0
                })
            };
            let mut total = 0.0;
            for pair in breaks.windows(2) {
                total += integrate_adaptive(&mut integrand, pair[0], pair[1], 1e-12, 1e-10, 400).0;
            }
            match failure {
                Some(e) => Err(e.into()),
                None => Ok(total),
            }
        })
        .collect()
}

/// Λₙ from the numerical moments: Λₙ = M(n+1)/(n! Γ(n+b₁) Γ(n+b₂)).
pub fn natural_lambdas_from_moments(eps: f64, n_max: usize, cfg: &SeriesConfig) -> Result<Vec<f64>, CoherentError> {
    let (b1, b2) = natural_params(eps)?;
    let h = MellinBarnesH::new(eps, cfg)?;
    let moments = h.moments(n_max + 1);
    moments
        .iter()
        .enumerate()
        .map(|(n, m)| {
            let nf = n as f64;
            let ln_norm = ln_gamma(nf + 1.0)? + ln_gamma(nf + b1)? + ln_gamma(nf + b2)?;
            Ok(m / ln_norm.exp())
        })
        .collect()
}

/// |Λₙ − 1| for the natural family, n = 0..=n_max.
pub fn natural_identity_check(eps: f64, n_max: usize, cfg: &SeriesConfig) -> Result<Vec<f64>, CoherentError> {
    Ok(natural_lambdas(eps, n_max, cfg)?.into_iter().map(|l| (l - 1.0).abs()).collect())
}

/// Radial density of dμ⁽ʷ⁾ (per r dr dθ).
pub fn distorted_measure_density(r: f64, w: f64) -> Result<f64, CoherentError> {
    Family::Distorted { w }.validate()?;
    let x = r * r / 2.0;
    let f = kummer_1f1(1.0, w, x, &SeriesConfig::default())?;
    let ln = 2.0 * (w - 1.0) * r.ln() - x - ln_gamma(w)? - w * 2f64.ln();
    Ok(ln.exp() * f / PI)
}

/// Λₙ of the distorted closure relation, n = 0..=n_max.
///
/// On [0, 1] the variable t = r^{2w} absorbs the r^{2w−1} endpoint behaviour.
pub fn distorted_lambdas(w: f64, n_max: usize) -> Result<Vec<f64>, CoherentError> {
    Family::Distorted { w }.validate()?;
    let cfg = SeriesConfig::default();
    let ln_gw = ln_gamma(w)?;
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let nf = n as f64;
            let ln_coeff = ln_gw - ln_gamma(w + nf)?;
            let mut failure = None;
            let mut radial = |r: f64| -> f64 {
                if r == 0.0 {
                    return 0.0;
                }
                let eval = || -> Result<f64, CoherentError> {
                    let x = r * r / 2.0;
                    let f = kummer_1f1(1.0, w, x, &cfg)?;
                    let proj = (ln_coeff + nf * x.ln()).exp() / f;
                    Ok(2.0 * PI * r * proj * distorted_measure_density(r, w)?)
                };
                eval().unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    0.0
                })
            };
            let near = integrate_adaptive(
                |t: f64| {
                    if t == 0.0 {
                        return 0.0;
                    }
                    let r = t.powf(1.0 / (2.0 * w));
                    radial(r) * r / (2.0 * w * t)
                },
                0.0,
                1.0,
                1e-14,
                1e-12,
                400,
            )
            .0;
            let r_max = 20.0 + 2.0 * nf.sqrt();
            let far = integrate_adaptive(&mut radial, 1.0, r_max, 1e-14, 1e-12, 400).0;
            match failure {
                Some(e) => Err(e),
                None => Ok(near + far),
            }
        })
        .collect()
}

/// |Λₙ − 1| for the distorted family, n = 0..=n_max.
pub fn distorted_identity_check(w: f64, n_max: usize) -> Result<Vec<f64>, CoherentError> {
    Ok(distorted_lambdas(w, n_max)?.into_iter().map(|l| (l - 1.0).abs()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisplacedCheck {
    pub numeric: CoherentState,
    pub closed: CoherentState,
    /// min over θ of ‖numeric − e^{iθ} closed‖
    pub residual: f64,
}

/// e^{z𝒞_w⁺} e^{−z*𝒞_w} ψ₁ against the closed-form displaced state.
pub fn displaced_state(z: C64, w: f64, dim: usize) -> Result<DisplacedCheck, CoherentError> {
    let family = Family::Displaced { w };
    family.validate()?;
    if dim < 3 {
        return Err(CoherentError::Truncation { dim, tail: 1.0 });
    }
    let closed = coherent_state(family, z, dim)?;
    let tail = closed.coeffs[dim - 1].norm_sqr();
    if tail > 1e-24 {
        return Err(CoherentError::Truncation { dim, tail });
    }

    let vec = displacement_matrix(z, w, dim)? * DVector::from_fn(dim, |k, _| C64::new(if k == 1 { 1.0 } else { 0.0 }, 0.0));
    let norm = vec.norm();
    let numeric_coeffs: Vec<C64> = vec.iter().map(|v| v / norm).collect();
    let numeric = CoherentState { family, z, coeffs: numeric_coeffs, norm_const: 1.0 / norm };

    // the optimal phase is arg⟨closed|numeric⟩; the difference is summed directly
    // because ‖a‖² + ‖b‖² − 2|⟨a|b⟩| cancels down to √ε_mach
    let overlap: C64 = closed.coeffs.iter().zip(&numeric.coeffs).map(|(c, n)| c.conj() * n).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    let residual = closed
        .coeffs
        .iter()
        .zip(&numeric.coeffs)
        .map(|(c, n)| (n - phase * c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(DisplacedCheck { numeric, closed, residual })
}

/// D_w(z) = e^{z𝒞_w⁺} e^{−z*𝒞_w} on the truncated space.
pub fn displacement_matrix(z: C64, w: f64, dim: usize) -> Result<DMatrix<C64>, CoherentError> {
    let (c, cp, _) = ladder_cw(w, dim)?;
    Ok(expm(&cp.entries.map(|v| v * z)) * expm(&c.entries.map(|v| -v * z.conj())))
}
