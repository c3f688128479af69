//! Numerical Mellin–Barnes inversion of the natural-family weight
//!
//!   8π h(x) = G^{3,0}_{0,3}(x | −; 0, −(1+ε)/2, (1−ε)/2)
//!           = (1/2π) ∫ M(1+it) x^{−1−it} dt,
//!   M(s)    = Γ(s) Γ(s − (1+ε)/2) Γ(s + (1−ε)/2).
//!
//! The contour Re s = 1 sits right of every pole when ε < 1. Since
//! M(1−it) = M(1+it)*, only t ≥ 0 is summed.

use super::{gamma_complex, gamma_fn, SeriesConfig, SpecFunError};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::PI;

const ROUNDOFF: f64 = 2.2e-16;

#[derive(Debug, Clone)]
pub struct MellinBarnesH {
    eps: f64,
    nodes: Vec<f64>,
    weighted: Vec<C64>,
    noise_scale: f64,
    tail_bound: f64,
}

impl MellinBarnesH {
    pub fn new(eps: f64, cfg: &SeriesConfig) -> Result<Self, SpecFunError> {
        cfg.validate()?;
        if !(eps < 1.0) {
            return Err(SpecFunError::Domain { func: "meijer_h_natural", arg: eps });
        }
        let height = cfg.contour_height;
        let count = cfg.contour_points;
        let dt = 2.0 * height / (count - 1) as f64;
        let shift_lo = -(1.0 + eps) / 2.0;
        let shift_hi = (1.0 - eps) / 2.0;
        let transform = |t: f64| {
            let s = C64::new(1.0, t);
            gamma_complex(s) * gamma_complex(s + shift_lo) * gamma_complex(s + shift_hi)
        };

        let mut nodes = Vec::new();
        let mut weighted = Vec::new();
        for j in 0..count {
            let t = -height + j as f64 * dt;
            if t < -1e-12 * dt {
                continue;
            }
            let end = if j == count - 1 { 0.5 } else { 1.0 };
            // fold the mirrored node into this one; t = 0 has no mirror
            let fold = if t.abs() <= 1e-12 * dt { 1.0 } else { 2.0 };
            nodes.push(t.max(0.0));
            weighted.push(transform(t.max(0.0)) * (end * fold * dt / (2.0 * PI)));
        }
        let noise_scale = weighted.iter().map(|w| w.norm()).sum::<f64>();

        // |M(1+it)| falls like e^{-3πt/2}; bound the discarded tail by that rate.
        let edge = transform(height).norm();
        let tail_bound = edge / (1.5 * PI) / PI;

        let out = Self { eps, nodes, weighted, noise_scale, tail_bound };
        let scale = out.exact_moment(1.0)?;
        let estimated_error = out.tail_bound / scale;
        if estimated_error > 1e-6 {
            return Err(SpecFunError::Accuracy { estimated_error });
        }
        Ok(out)
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// 8π h(x), the Meijer G value itself.
    pub fn weight(&self, x: f64) -> f64 {
        let ln_x = x.ln();
        let mut acc = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weighted) {
            let (s, c) = (t * ln_x).sin_cos();
            // Re[w · e^{-i t ln x}]
            acc += w.re * c + w.im * s;
        }
        acc / x
    }

    /// h(x).
    pub fn eval(&self, x: f64) -> f64 {
        self.weight(x) / (8.0 * PI)
    }

    /// Rounding floor of `weight(x)`.
    pub fn noise_floor(&self, x: f64) -> f64 {
        ROUNDOFF * self.noise_scale / x
    }

    /// Contour-truncation bound on |weight(x)|·x.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// First x ≥ 1 (on a log ladder) where the weight sinks into the rounding floor.
    pub fn support_limit(&self) -> f64 {
        let mut u = 0.0f64;
        loop {
            let x = u.exp();
            if self.weight(x).abs() < 100.0 * self.noise_floor(x) || u > 12.0 {
                return x;
            }
            u += 0.05;
        }
    }

    /// ∫₀^∞ x^{m−1} 8πh(x) dx in closed form.
    pub fn exact_moment(&self, m: f64) -> Result<f64, SpecFunError> {
        Ok(gamma_fn(m)? * gamma_fn(m - (1.0 + self.eps) / 2.0)? * gamma_fn(m + (1.0 - self.eps) / 2.0)?)
    }

    /// Numerical moments m = 1..=m_max of the inverted weight.
    pub fn moments(&self, m_max: usize) -> Vec<f64> {
        let powers: Vec<f64> = (1..=m_max).map(|m| m as f64).collect();
        self.moment_set(&powers)
    }

    /// ∫₀^∞ x^{m−1} 8πh(x) dx for each m, by Simpson in u = ln x. One sample
    /// table serves every m; each m must exceed (1+ε)/2.
    pub fn moment_set(&self, powers: &[f64]) -> Vec<f64> {
        let leading = (1.0 + self.eps).max(0.0) / 2.0;
        let smallest = powers.iter().cloned().fold(f64::INFINITY, f64::min);
        // x^{m} weight(x) ~ x^{m - leading} near 0
        let u_lo = (-40.0 / (smallest - leading)).max(-600.0);
        let u_hi = self.support_limit().ln();
        let du = 0.01;
        let mut count = ((u_hi - u_lo) / du).ceil() as usize + 1;
        if count % 2 == 0 {
            count += 1;
        }
        let du = (u_hi - u_lo) / (count - 1) as f64;
        let samples: Vec<(f64, f64)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let x = (u_lo + i as f64 * du).exp();
                (x, x * self.weight(x))
            })
            .collect();
        powers
            .iter()
            .map(|&m| {
                let vals: Vec<f64> = samples.iter().map(|(x, s)| s * x.powf(m - 1.0)).collect();
                super::quad::simpson(&vals, du)
            })
            .collect()
    }
}

/// h(x) = (1/8π) G^{3,0}_{0,3}(x | −; 0, −(1+ε)/2, (1−ε)/2).
///
/// Builds the contour table on every call; hold a [`MellinBarnesH`] when
/// evaluating many points.
pub fn meijer_h_natural(x: f64, eps: f64, cfg: &SeriesConfig) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain { func: "meijer_h_natural", arg: x });
    }
    Ok(MellinBarnesH::new(eps, cfg)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_moments_eps_minus_one() {
        let mb = MellinBarnesH::new(-1.0, &SeriesConfig::default()).unwrap();
        let m = mb.moments(2);
        assert!((m[0] - 1.0).abs() < 1e-4, "{}", m[0]);
        assert!((m[1] - 2.0).abs() < 2e-4, "{}", m[1]);
    }

    #[test]
    fn weight_is_positive_and_decays_in_tail() {
        let mb = MellinBarnesH::new(-3.0, &SeriesConfig::default()).unwrap();
        let mut prev = f64::INFINITY;
        let mut x = 2.0;
        while mb.weight(x) > 1e3 * mb.noise_floor(x) {
            let v = mb.weight(x);
            assert!(v > 0.0 && v < prev, "x = {x}");
            prev = v;
            x *= 1.1;
        }
        assert!(x > 100.0);
    }

    #[test]
    fn fractional_moments_match_gamma_products() {
        let cfg = SeriesConfig::default();
        let mb = MellinBarnesH::new(-1.0, &cfg).unwrap();
        let powers = [1.5, 2.5, 3.25];
        for (m, got) in powers.iter().zip(mb.moment_set(&powers)) {
            let exact = mb.exact_moment(*m).unwrap();
            assert!(((got - exact) / exact).abs() < 1e-5, "m = {m}: {got} vs {exact}");
        }
        assert_eq!(meijer_h_natural(1.0, -1.0, &cfg).unwrap(), mb.eval(1.0));
    }

    #[test]
    fn coarse_contour_is_rejected() {
        let cfg = SeriesConfig { contour_height: 1.0, contour_points: 101, ..SeriesConfig::default() };
        assert!(matches!(MellinBarnesH::new(-1.0, &cfg), Err(SpecFunError::Accuracy { .. })));
        assert!(meijer_h_natural(-1.0, -1.0, &SeriesConfig::default()).is_err());
        assert!(MellinBarnesH::new(1.0, &SeriesConfig::default()).is_err());
    }
}
