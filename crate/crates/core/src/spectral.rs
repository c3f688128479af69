//! Eigenfunctions of the transformed Hamiltonian and their concomitants.
//!
//! ψ₀ solves Aψ = 0 with A = −d/dx + β; the excited states are the images
//! ψₙ₊₁ = Bφₙ/√(Eₙ−ε) of the oscillator levels, B = d/dx + β. The pairing
//! that makes them orthonormal is ∫ψₘψₙ dx with no conjugation.

use crate::model::{tabulate, Grid, GridFunction, ModelError, ModelParams, ModelSample};
use crate::specfun::{hermite_phi_all, quad};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use thiserror::Error;

/// Points dropped at each edge of finite-difference residuals.
pub const EDGE_SKIP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("ground-state bi-norm |<psi_bar|psi>| = {value:e} is not usable for normalization")]
    Normalization { value: f64 },
    #[error("grid needs at least {needed} points for residual checks, got {got}")]
    GridTooSmall { needed: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate {
    pub index: usize,
    pub energy: f64,
    pub wavefunction: GridFunction,
}

/// Oscillator level Eₙ = 2n + 1.
pub fn oscillator_energy(n: usize) -> f64 {
    2.0 * n as f64 + 1.0
}

/// E₀ = ε, Eₙ₊₁ = 2n + 1.
pub fn level_energy(index: usize, eps: f64) -> f64 {
    if index == 0 {
        eps
    } else {
        oscillator_energy(index - 1)
    }
}

/// Per-grid samples of (u₁, u₂, α, β, V) and the phase ∫₀ˣ dy/α².
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct SpectralCache {
    pub params: ModelParams,
    pub grid: Grid,
    pub samples: Vec<ModelSample>,
    pub beta: Vec<C64>,
    pub potential: Vec<C64>,
    /// ∫₀ˣ dy/α²(y) at every grid point.
    pub phase_integral: Vec<f64>,
}

impl SpectralCache {
    pub fn new(params: &ModelParams, grid: &Grid) -> Result<Self, SpectralError> {
        let samples = tabulate(params, grid)?;
        let beta = samples.iter().map(|s| s.beta()).collect::<Result<Vec<_>, _>>()?;
        let potential = samples.iter().map(|s| s.potential()).collect::<Result<Vec<_>, _>>()?;
        let phase_integral = samples.iter().map(|s| phase_integral(params, s)).collect();
        Ok(Self { params: *params, grid: *grid, samples, beta, potential, phase_integral })
    }

    pub fn eps(&self) -> f64 {
        self.params.eps
    }

    /// Unnormalized ψ_ε = exp ∫₀ˣ β = (α(0)/α(x)) e^{iλ∫₀ˣdy/α²}.
    pub fn ground_unnormalized(&self) -> Result<GridFunction, SpectralError> {
        let alpha0 = ModelSample::at(0.0, &self.params)?.alpha()?;
        let lambda = self.params.lambda;
        let mut values = Vec::with_capacity(self.grid.n_points);
        for (s, phase) in self.samples.iter().zip(&self.phase_integral) {
            let amp = alpha0 / s.alpha()?;
            values.push(C64::from_polar(amp, lambda * phase));
        }
        Ok(GridFunction::new(self.grid, values))
    }

    pub fn psi_ground(&self) -> Result<Eigenstate, SpectralError> {
        let raw = self.ground_unnormalized()?;
        let binorm = raw.bilinear(&raw);
        let size = binorm.norm();
        if !(size > 1e-300) || !size.is_finite() {
            return Err(SpectralError::Normalization { value: size });
        }
        // principal argument χ ∈ (−π, π]
        let scale = C64::from_polar(size.powf(-0.5), -0.5 * binorm.arg());
        let values = raw.values.iter().map(|v| v * scale).collect();
        Ok(Eigenstate { index: 0, energy: self.eps(), wavefunction: GridFunction::new(self.grid, values) })
    }

    /// ψₙ₊₁ = (φₙ′ + βφₙ)/√(Eₙ − ε).
    pub fn psi_excited(&self, n: usize) -> Eigenstate {
        let norm = (oscillator_energy(n) - self.eps()).sqrt();
        let values = self
            .samples
            .par_iter()
            .zip(self.beta.par_iter())
            .map(|(s, beta)| {
                let x = s.x();
                let phis = hermite_phi_all(n, x);
                let phi = phis[n];
                let lower = if n == 0 { 0.0 } else { phis[n - 1] };
                let dphi = (2.0 * n as f64).sqrt() * lower - x * phi;
                (beta * phi + dphi) / norm
            })
            .collect();
        Eigenstate { index: n + 1, energy: oscillator_energy(n), wavefunction: GridFunction::new(self.grid, values) }
    }

    /// States ψ₀ … ψ_{count−1}.
    pub fn states(&self, count: usize) -> Result<Vec<Eigenstate>, SpectralError> {
        let mut out = Vec::with_capacity(count);
        if count > 0 {
            out.push(self.psi_ground()?);
        }
        out.extend((1..count).map(|k| self.psi_excited(k - 1)));
        Ok(out)
    }

    fn interior(&self) -> Result<std::ops::Range<usize>, SpectralError> {
        let needed = 2 * EDGE_SKIP + 1;
        if self.grid.n_points < needed {
            return Err(SpectralError::GridTooSmall { needed, got: self.grid.n_points });
        }
        Ok(EDGE_SKIP..self.grid.n_points - EDGE_SKIP)
    }

    /// sup over interior points of |−ψ″ + Vψ − Eψ|, ψ″ by 4th-order differences.
    pub fn schrodinger_residual(&self, state: &Eigenstate) -> Result<f64, SpectralError> {
        let psi = &state.wavefunction.values;
        let h = self.grid.spacing();
        let mut worst = 0.0f64;
        for i in self.interior()? {
            let d2 = quad::d2_central(psi, h, i);
            let r = -d2 + self.potential[i] * psi[i] - state.energy * psi[i];
            worst = worst.max(r.norm());
        }
        Ok(worst)
    }

    /// sup |−ψ′ + βψ| for the ground state (the annihilation condition).
    pub fn annihilation_residual(&self, state: &Eigenstate) -> Result<f64, SpectralError> {
        let psi = &state.wavefunction.values;
        let h = self.grid.spacing();
        let mut worst = 0.0f64;
        for i in self.interior()? {
            let r = -quad::d1_central(psi, h, i) + self.beta[i] * psi[i];
            worst = worst.max(r.norm());
        }
        Ok(worst)
    }

    /// sup |−ψ̄′ + β*ψ̄| for a concomitant ψ̄ = ψ*.
    pub fn conjugate_annihilation_residual(&self, bar: &Eigenstate) -> Result<f64, SpectralError> {
        let psi = &bar.wavefunction.values;
        let h = self.grid.spacing();
        let mut worst = 0.0f64;
        for i in self.interior()? {
            let r = -quad::d1_central(psi, h, i) + self.beta[i].conj() * psi[i];
            worst = worst.max(r.norm());
        }
        Ok(worst)
    }

    /// sup |Aψₙ₊₁ − √(Eₙ−ε) φₙ| with A = −d/dx + β.
    pub fn reversal_residual(&self, n: usize) -> Result<f64, SpectralError> {
        let state = self.psi_excited(n);
        let psi = &state.wavefunction.values;
        let h = self.grid.spacing();
        let scale = (oscillator_energy(n) - self.eps()).sqrt();
        let mut worst = 0.0f64;
        for i in self.interior()? {
            let applied = -quad::d1_central(psi, h, i) + self.beta[i] * psi[i];
            let phi = hermite_phi_all(n, self.grid.point(i))[n];
            worst = worst.max((applied - scale * phi).norm());
        }
        Ok(worst)
    }
}

/// ∫₀ˣ dy/α² in closed form. With t = u₂/u₁ and W(u₁,u₂) = 1,
/// d/dx atan((2ct + b)/2λ) = λ/α², using 4ac − b² = 4λ².
fn phase_integral(p: &ModelParams, s: &ModelSample) -> f64 {
    if p.lambda == 0.0 {
        return 0.0;
    }
    let t = s.seeds.u2 / s.seeds.u1;
    let two_l = 2.0 * p.lambda;
    (((2.0 * p.c * t + p.b) / two_l).atan() - (p.b / two_l).atan()) / p.lambda
}

pub fn psi_excited(n: usize, p: &ModelParams, grid: &Grid) -> Result<Eigenstate, SpectralError> {
    Ok(SpectralCache::new(p, grid)?.psi_excited(n))
}

pub fn psi_ground(p: &ModelParams, grid: &Grid) -> Result<Eigenstate, SpectralError> {
    SpectralCache::new(p, grid)?.psi_ground()
}

/// The concomitant: ψ̄ with ψ̄* = ψ.
pub fn psi_bar(state: &Eigenstate) -> Eigenstate {
    Eigenstate { wavefunction: state.wavefunction.conj(), ..state.clone() }
}

#[derive(Debug, Clone)]
pub struct BiorthoReport {
    /// G[m][n] = ∫ψₙψₘ dx.
    pub gram: DMatrix<C64>,
    /// max |G − I|.
    pub max_deviation: f64,
}

/// Gram matrix of ψ₀ … ψ_{n_max} under the bi-product.
pub fn biorthogonality_matrix(p: &ModelParams, n_max: usize, grid: &Grid) -> Result<BiorthoReport, SpectralError> {
    let cache = SpectralCache::new(p, grid)?;
    biorthogonality_from(&cache, n_max)
}

pub fn biorthogonality_from(cache: &SpectralCache, n_max: usize) -> Result<BiorthoReport, SpectralError> {
    let states = cache.states(n_max + 1)?;
    let dim = n_max + 1;
    let gram = DMatrix::from_fn(dim, dim, |m, n| states[n].wavefunction.bilinear(&states[m].wavefunction));
    let max_deviation = gram
        .iter()
        .enumerate()
        .map(|(k, g)| {
            // column-major: k = n·dim + m
            let (m, n) = (k % dim, k / dim);
            let target = if m == n { 1.0 } else { 0.0 };
            (g - target).norm()
        })
        .fold(0.0, f64::max);
    Ok(BiorthoReport { gram, max_deviation })
}

/// sup |ψₙ − (±)φₙ| for n = 0..=n_max in the real family with parameter γ.
///
/// B tends to −â† as γ → ∞, so the excited states approach −φₙ; the
/// deviation is taken against the closer of ±φₙ.
pub fn oscillator_limit_deviation(gamma: f64, n_max: usize, grid: &Grid) -> Result<Vec<f64>, SpectralError> {
    let cache = SpectralCache::new(&ModelParams::amm(gamma), grid)?;
    let states = cache.states(n_max + 1)?;
    let phis: Vec<Vec<f64>> = grid.points().iter().map(|&x| hermite_phi_all(n_max, x)).collect();
    Ok(states
        .iter()
        .map(|st| {
            let n = st.index;
            let sup = |sign: f64| {
                st.wavefunction
                    .values
                    .iter()
                    .zip(&phis)
                    .map(|(v, row)| (v - sign * row[n]).norm())
                    .fold(0.0, f64::max)
            };
            sup(1.0).min(sup(-1.0))
        })
        .collect())
}
