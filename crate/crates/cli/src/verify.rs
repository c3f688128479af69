//! Verification suites. Every check is keyed by the identity it tests and
//! compared against a tolerance that `--tolerance-scale` multiplies.

use biosc_core::algebra::{
    distorted_algebra_residuals, ladder_a, ladder_cw, oscillator_limit_ops, quadratic_algebra_residuals, verify_quad1,
};
use biosc_core::bargmann::{
    bargmann_annihilate_distorted, bargmann_annihilate_natural, bargmann_create, bargmann_partial_natural,
    bi_product_quadrature, bi_product_series, ladder_partial, pair, p_representation, to_bargmann, BargmannFamily,
    Measure, PTarget,
};
use biosc_core::coherent::{
    coherent_state, displaced_state, distorted_kernel, distorted_lambdas, distorted_variance,
    distorted_variance_matrix, eigen_residual, natural_kernel, natural_lambdas, natural_variance,
    natural_variance_matrix, required_dim, Family,
};
use biosc_core::model::{
    amm_potential, potential, potential_eps_minus1, potential_split, total_area_closed_form, zero_total_area,
};
use biosc_core::specfun::{MellinBarnesH, SeriesConfig};
use biosc_core::spectral::{biorthogonality_matrix, oscillator_limit_deviation};
use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::commands::{radii, LIMIT_LEVELS};
use crate::config::RunConfig;
use crate::output::{format_number, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Biorthogonality,
    Algebra,
    Measures,
    Bargmann,
    Limits,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Biorthogonality => "biorthogonality",
            Suite::Algebra => "algebra",
            Suite::Measures => "measures",
            Suite::Bargmann => "bargmann",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub key: &'static str,
    pub case: String,
    pub value: f64,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub tolerance_scale: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        let mut by_key: Map<String, Value> = Map::new();
        for c in &self.checks {
            let mut entry = json!({
                "case": c.case,
                "value": format_number(c.value),
                "tolerance": format_number(c.tolerance),
                "pass": c.passed(),
            });
            if let Some(e) = &c.error {
                entry["error"] = Value::String(e.clone());
            }
            match by_key.get_mut(c.key) {
                Some(Value::Array(list)) => list.push(entry),
                _ => {
                    by_key.insert(c.key.to_string(), Value::Array(vec![entry]));
                }
            }
        }
        json!({
            "suite": self.suite.name(),
            "pass": self.passed(),
            "tolerance_scale": format_number(self.tolerance_scale),
            "checks": by_key,
        })
    }

    pub fn to_table(&self) -> Table {
        let columns = ["key", "case", "value", "tolerance", "pass"].map(String::from).to_vec();
        let mut t = Table::new(columns);
        for c in &self.checks {
            t.rows.push(vec![
                c.key.into(),
                c.case.replace(',', ";").into(),
                Cell::Num(c.value),
                Cell::Num(c.tolerance),
                c.passed().to_string().into(),
            ]);
        }
        t.push_meta("suite", self.suite.name());
        t.push_meta("tolerance_scale", format_number(self.tolerance_scale));
        t.push_meta("pass", self.passed().to_string());
        t
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn check(key: &'static str, case: impl Into<String>, tolerance: f64, value: Result<f64, String>) -> Check {
    match value {
        Ok(v) => Check { key, case: case.into(), value: v, tolerance, error: None },
        Err(e) => Check { key, case: case.into(), value: f64::NAN, tolerance, error: Some(e) },
    }
}

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn eps_case(eps: f64) -> String {
    format!("eps={}", format_number(eps))
}

fn w_case(w: f64) -> String {
    format!("w={}", format_number(w))
}

/// Labels used wherever a small sample of coherent-state points is needed.
const Z_SAMPLE: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 0.0), (-1.0, 1.0), (0.0, -2.0), (2.5, 1.5)];

fn z_sample() -> impl Iterator<Item = C64> {
    Z_SAMPLE.iter().map(|&(re, im)| C64::new(re, im))
}

fn sup<I: IntoIterator<Item = Result<f64, String>>>(values: I) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for v in values {
        let v = v?;
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn biorthogonality_jobs(cfg: &RunConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for m in &cfg.models {
        let p = m.params;
        let name = m.name.clone();
        let grid = cfg.grid;
        jobs.push(Box::new(move || {
            let ortho = biorthogonality_matrix(&p, 8, &grid).map(|r| r.max_deviation).map_err(text);
            vec![check("ortho1", name.clone(), 1e-6, ortho)]
        }));
        let name = m.name.clone();
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let half = grid.x_min.abs().min(grid.x_max.abs());
            if grid.x_min < 0.0 && grid.x_max > 0.0 {
                let area = zero_total_area(&p, half).map_err(text);
                let closed = total_area_closed_form(&p, half).map_err(text);
                let gap = match (&area, &closed) {
                    (Ok(a), Ok(c)) => Ok((a - c).abs()),
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                };
                out.push(check("zero", name.clone(), 1e-8, area.map(f64::abs)));
                out.push(check("zero", format!("{name} closed form"), 1e-10, gap));
            }
            let points = grid.points();
            let split = sup(points.iter().map(|&x| {
                let v = potential(x, &p).map_err(text)?;
                let s = potential_split(x, &p).map_err(text)?;
                Ok((v - s).norm() / v.norm().max(1.0))
            }));
            out.push(check("potparts", name.clone(), 1e-8, split));
            if p.eps == -1.0 {
                let closed = sup(points.iter().map(|&x| {
                    let v = potential(x, &p).map_err(text)?;
                    let c = potential_eps_minus1(x, p.a, p.b, p.c, p.lambda).map_err(text)?;
                    Ok((v - c).norm())
                }));
                out.push(check("potosc", name.clone(), 1e-8, closed));
            }
            out
        }));
    }
    jobs
}

fn algebra_jobs(cfg: &RunConfig) -> Vec<Job<'_>> {
    let n = cfg.truncation;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for &eps in &cfg.eps_list {
        jobs.push(Box::new(move || {
            let case = format!("{} N={n}", eps_case(eps));
            let mut out = match quadratic_algebra_residuals(eps, n) {
                Ok(list) => list.into_iter().map(|(tag, r)| check(tag, case.clone(), 1e-9, Ok(r.relative))).collect(),
                Err(e) => vec![check("Acomm1", case.clone(), 1e-9, Err(e.to_string()))],
            };
            out.push(check("quad1", case, 1e-9, verify_quad1(eps, n).map(|r| r.relative).map_err(text)));
            out
        }));
    }
    for &w in &cfg.w_list {
        jobs.push(Box::new(move || {
            let case = format!("{} N={n}", w_case(w));
            let mut worst: Vec<(&'static str, Result<f64, String>)> = Vec::new();
            for &eps in &cfg.eps_list {
                match distorted_algebra_residuals(w, eps, n) {
                    Ok(list) => {
                        for (tag, r) in list {
                            match worst.iter_mut().find(|(t, _)| *t == tag) {
                                Some((_, Ok(v))) => *v = v.max(r.relative),
                                Some((_, Err(_))) => {}
                                None => worst.push((tag, Ok(r.relative))),
                            }
                        }
                    }
                    Err(e) => worst.push(("rcom2", Err(e.to_string()))),
                }
            }
            worst.into_iter().map(|(tag, v)| check(tag, case.clone(), 1e-12, v)).collect()
        }));
    }
    jobs
}

fn measures_jobs(cfg: &RunConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    let series = SeriesConfig::default();
    for &eps in &cfg.eps_list {
        jobs.push(Box::new(move || {
            let moments = MellinBarnesH::new(eps, &series).map_err(text).and_then(|h| {
                sup(h.moments(5).iter().enumerate().map(|(k, m)| {
                    let exact = h.exact_moment((k + 1) as f64).map_err(text)?;
                    Ok(((m - exact) / exact).abs())
                }))
            });
            vec![check("int4", eps_case(eps), 1e-4, moments)]
        }));
        jobs.push(Box::new(move || {
            let lambdas = natural_lambdas(eps, 4, &series)
                .map(|l| l.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max))
                .map_err(text);
            vec![check("int2", format!("natural {}", eps_case(eps)), 1e-3, lambdas)]
        }));
        jobs.push(Box::new(move || {
            let case = eps_case(eps);
            let kernel = sup(z_sample().map(|z| Ok((natural_kernel(z, z, eps).map_err(text)? - 1.0).norm())));
            let family = Family::Natural { eps };
            let eigen = sup(z_sample().map(|z| {
                let dim = required_dim(family, z).map_err(text)?;
                eigen_residual(&coherent_state(family, z, dim).map_err(text)?).map_err(text)
            }));
            let anchor = natural_variance(C64::new(0.0, 0.0), eps)
                .map(|m| (m.dxdp - 0.5 * (3.0 - 4.0 * eps + eps * eps)).abs())
                .map_err(text);
            let routes = sup(radii(cfg).into_iter().map(|r| {
                let z = C64::new(r, 0.0);
                let closed = natural_variance(z, eps).map_err(text)?.dxdp;
                let dim = required_dim(family, z).map_err(text)? + 4;
                Ok((closed - natural_variance_matrix(z, eps, dim).map_err(text)?).abs())
            }));
            vec![
                check("repro1", format!("natural {case}"), 1e-12, kernel),
                check("natCS", case.clone(), 1e-8, eigen),
                check("variances", format!("{case} r=0"), 1e-14, anchor),
                check("variances", format!("{case} closed vs matrix"), 1e-8, routes),
            ]
        }));
    }
    for &w in cfg.w_list.iter().filter(|&&w| w > 0.0) {
        jobs.push(Box::new(move || {
            let case = w_case(w);
            let lambdas = distorted_lambdas(w, 8)
                .map(|l| l.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max))
                .map_err(text);
            let kernel = sup(z_sample().map(|z| Ok((distorted_kernel(z, z, w).map_err(text)? - 1.0).norm())));
            let family = Family::Distorted { w };
            let eigen = sup(z_sample().map(|z| {
                let dim = required_dim(family, z).map_err(text)?;
                eigen_residual(&coherent_state(family, z, dim).map_err(text)?).map_err(text)
            }));
            let anchor = distorted_variance(C64::new(0.0, 0.0), w).map(|v| (v - w / 2.0).abs()).map_err(text);
            let routes = sup(radii(cfg).into_iter().map(|r| {
                let z = C64::new(r, 0.0);
                let closed = distorted_variance(z, w).map_err(text)?;
                let dim = required_dim(family, z).map_err(text)? + 4;
                Ok((closed - distorted_variance_matrix(z, w, dim).map_err(text)?).abs())
            }));
            let displaced = sup(
                [C64::new(0.4, 0.2), C64::new(0.8, 0.0), C64::new(0.0, -0.3)]
                    .into_iter()
                    .map(|z| displaced_state(z, w, 80).map(|d| d.residual).map_err(text)),
            );
            vec![
                check("int2", format!("distorted {case}"), 1e-6, lambdas),
                check("repro1", format!("distorted {case}"), 1e-12, kernel),
                check("distCS", case.clone(), 1e-8, eigen),
                check("distvaria", format!("{case} r=0"), 1e-14, anchor),
                check("distvaria", format!("{case} closed vs matrix"), 1e-8, routes),
                check("Dop", case, 1e-8, displaced),
            ]
        }));
    }
    jobs
}

const STATE_DIM: usize = 10;
const STATE_COUNT: usize = 100;

fn random_states(seed: u64) -> Vec<Vec<C64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..STATE_COUNT)
        .map(|_| (0..STATE_DIM).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect()
}

fn basis(k: usize, dim: usize) -> Vec<C64> {
    (0..dim).map(|j| C64::new(if j == k { 1.0 } else { 0.0 }, 0.0)).collect()
}

/// Worst |pair(Pₙ, eₘ, eₖ) − δ| over n < 3 and 1 ≤ m, k < 6.
fn excited_pairings(family: BargmannFamily, measure: &Measure) -> Result<f64, String> {
    let dim = 6;
    let mut worst = 0.0f64;
    for n in 0..3 {
        let p = p_representation(PTarget::Excited(n), family).map_err(text)?;
        for m in 1..dim {
            for k in 1..dim {
                let got = pair(&p, measure, &basis(m, dim), &basis(k, dim)).map_err(text)?;
                let expect = if m == n + 1 && k == n + 1 { 1.0 } else { 0.0 };
                worst = worst.max((got - expect).norm());
            }
        }
    }
    Ok(worst)
}

/// Relative error of the displaced-delta pairing against the direct
/// matrix element ⟨u|φ(α)⟩⟨φ(α)|v⟩.
fn coherent_pairing(family: BargmannFamily, measure: &Measure) -> Result<f64, String> {
    let alpha = C64::new(0.6, 0.3);
    let dim = 40;
    let mut rng = StdRng::seed_from_u64(7);
    let mut draw = || -> Vec<C64> { (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect() };
    let (u, v) = (draw(), draw());
    let cs_family = match family {
        BargmannFamily::Natural { eps } => Family::Natural { eps },
        BargmannFamily::Distorted { w } => Family::Distorted { w },
    };
    let state = coherent_state(cs_family, alpha, dim).map_err(text)?;
    let left: C64 = u.iter().zip(&state.coeffs).map(|(a, b)| a.conj() * b).sum();
    let right: C64 = state.coeffs.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    let p = p_representation(PTarget::Coherent(alpha), family).map_err(text)?;
    let got = pair(&p, measure, &u, &v).map_err(text)?;
    Ok((got - left * right).norm() / (left * right).norm().max(1.0))
}

fn bi_product_gap(family: BargmannFamily, measure: &Measure) -> Result<f64, String> {
    let states = random_states(3);
    let g = to_bargmann(&states[0][..7], family).map_err(text)?;
    let f = to_bargmann(&states[1][..7], family).map_err(text)?;
    let series = bi_product_series(&g, &f, family).map_err(text)?;
    let quad = bi_product_quadrature(&g, &f, measure);
    Ok((series - quad).norm() / series.norm().max(1.0))
}

fn bargmann_jobs(cfg: &RunConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    let series = SeriesConfig::default();
    for &eps in &cfg.eps_list {
        jobs.push(Box::new(move || {
            let case = eps_case(eps);
            let fam = BargmannFamily::Natural { eps };
            let homomorphism = || -> Result<(f64, f64), String> {
                let (a, ap) = ladder_a(eps, STATE_DIM).map_err(text)?;
                let ad = ladder_partial(eps, STATE_DIM);
                let (mut pair_gap, mut partial_gap) = (0.0f64, 0.0f64);
                for v in random_states(11) {
                    let f = to_bargmann(&v, fam).map_err(text)?;
                    let scale = f.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
                    let lower = to_bargmann(&a.apply(&v), fam).map_err(text)?.max_diff(&bargmann_annihilate_natural(&f, eps));
                    let raise = to_bargmann(&ap.apply(&v), fam).map_err(text)?.max_diff(&bargmann_create(&f));
                    let partial = to_bargmann(&ad.apply(&v), fam).map_err(text)?.max_diff(&bargmann_partial_natural(&f));
                    pair_gap = pair_gap.max(lower.max(raise) / scale);
                    partial_gap = partial_gap.max(partial / scale);
                }
                Ok((pair_gap, partial_gap))
            };
            let (fock1, fock2) = match homomorphism() {
                Ok((a, b)) => (Ok(a), Ok(b)),
                Err(e) => (Err(e.clone()), Err(e)),
            };
            let mut out = vec![check("fockop1", case.clone(), 1e-12, fock1), check("fockop2", case.clone(), 1e-12, fock2)];
            match Measure::new(fam, &series) {
                Ok(measure) => {
                    out.push(check("inner2", format!("natural {case}"), 1e-4, bi_product_gap(fam, &measure)));
                    out.push(check("P8", case.clone(), 1e-4, excited_pairings(fam, &measure)));
                    out.push(check("P9", case, 1e-10, coherent_pairing(fam, &measure)));
                }
                Err(e) => out.push(check("inner2", format!("natural {case}"), 1e-4, Err(e.to_string()))),
            }
            out
        }));
    }
    for &w in cfg.w_list.iter().filter(|&&w| w > 0.0) {
        jobs.push(Box::new(move || {
            let case = w_case(w);
            let fam = BargmannFamily::Distorted { w };
            let homomorphism = || -> Result<f64, String> {
                let (c, cp, _) = ladder_cw(w, STATE_DIM).map_err(text)?;
                let mut gap = 0.0f64;
                for v in random_states(13) {
                    let g = to_bargmann(&v, fam).map_err(text)?;
                    let scale = g.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
                    let lowered = bargmann_annihilate_distorted(&g, w, g.coeffs[0]).map_err(text)?;
                    let lower = to_bargmann(&c.apply(&v), fam).map_err(text)?.max_diff(&lowered);
                    let raise = to_bargmann(&cp.apply(&v), fam).map_err(text)?.max_diff(&bargmann_create(&g));
                    gap = gap.max(lower.max(raise) / scale);
                }
                Ok(gap)
            };
            let mut out = vec![check("fockop3", case.clone(), 1e-12, homomorphism())];
            match Measure::new(fam, &series) {
                Ok(measure) => {
                    out.push(check("inner2", format!("distorted {case}"), 1e-4, bi_product_gap(fam, &measure)));
                    out.push(check("P10", case.clone(), 1e-4, excited_pairings(fam, &measure)));
                    out.push(check("P11", case, 1e-10, coherent_pairing(fam, &measure)));
                }
                Err(e) => out.push(check("inner2", format!("distorted {case}"), 1e-4, Err(e.to_string()))),
            }
            out
        }));
    }
    jobs
}

fn max_entry_gap(x: &nalgebra::DMatrix<C64>, y: &nalgebra::DMatrix<C64>) -> f64 {
    (x - y).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// γ used for the limit checks; large enough that the M_γ term is below 1e-5.
pub const LIMIT_GAMMA: f64 = 1e6;

fn limits_jobs(cfg: &RunConfig) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    jobs.push(Box::new(move || {
        let devs = oscillator_limit_deviation(LIMIT_GAMMA, LIMIT_LEVELS, &cfg.grid)
            .map(|d| d.into_iter().fold(0.0, f64::max))
            .map_err(text);
        let pot = sup((0..=1200).map(|k| {
            let x = -6.0 + 0.01 * k as f64;
            Ok((amm_potential(x, LIMIT_GAMMA).map_err(text)? - (x * x - 2.0)).abs())
        }));
        vec![
            check("states", format!("gamma={}", format_number(LIMIT_GAMMA)), 1e-5, devs),
            check("potg", format!("gamma={} |x|<=6", format_number(LIMIT_GAMMA)), 1e-5, pot),
        ]
    }));
    let dim = cfg.truncation;
    jobs.push(Box::new(move || {
        // 𝒜 in the limit is the same for every w
        let gap = oscillator_limit_ops(1.0, dim).and_then(|(a_osc, _)| {
            let (a, _) = ladder_a(-1.0, dim)?;
            Ok(max_entry_gap(&a_osc.entries, &a.entries))
        });
        vec![check("aosc", format!("N={dim}"), 1e-12, gap.map_err(text))]
    }));
    for &w in cfg.w_list.iter().filter(|&&w| w > 0.0) {
        jobs.push(Box::new(move || {
            let gap = oscillator_limit_ops(w, dim).and_then(|(_, c_osc)| {
                let (c, _, _) = ladder_cw(w, dim)?;
                Ok(max_entry_gap(&c_osc.entries, &c.entries))
            });
            vec![check("cosc", format!("{} N={dim}", w_case(w)), 1e-12, gap.map_err(text))]
        }));
    }
    jobs
}

/// Run `suite` over the configuration; tolerances are multiplied by `scale`.
pub fn run_suite(cfg: &RunConfig, suite: Suite, scale: f64) -> Report {
    let mut jobs = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Biorthogonality {
        jobs.extend(biorthogonality_jobs(cfg));
    }
    if all || suite == Suite::Algebra {
        jobs.extend(algebra_jobs(cfg));
    }
    if all || suite == Suite::Measures {
        jobs.extend(measures_jobs(cfg));
    }
    if all || suite == Suite::Bargmann {
        jobs.extend(bargmann_jobs(cfg));
    }
    if all || suite == Suite::Limits {
        jobs.extend(limits_jobs(cfg));
    }
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|job| job())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(|mut c| {
            c.tolerance *= scale;
            c
        })
        .collect();
    Report { suite, tolerance_scale: scale, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::load_preset;

    #[test]
    fn algebra_suite_passes_on_default_preset() {
        let cfg = load_preset("fig5a", None).unwrap();
        let report = run_suite(&cfg, Suite::Algebra, 1.0);
        let keys: std::collections::BTreeSet<&str> = report.checks.iter().map(|c| c.key).collect();
        for k in ["Acomm1", "Acomm2", "Acomm3", "Acomm4", "quad1", "rcom2", "dist2"] {
            assert!(keys.contains(k), "{k}");
        }
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn tolerance_scale_can_force_failure() {
        let cfg = load_preset("fig5a", None).unwrap();
        let report = run_suite(&cfg, Suite::Biorthogonality, 1e-30);
        assert!(!report.passed());
        assert_eq!(report.tolerance_scale, 1e-30);
    }

    #[test]
    fn errors_fail_the_check() {
        let c = check("zero", "x", 1.0, Err("boom".into()));
        assert!(!c.passed());
        let c = check("zero", "x", 1.0, Ok(f64::NAN));
        assert!(!c.passed());
    }

    #[test]
    fn json_groups_by_key() {
        let report = Report {
            suite: Suite::Algebra,
            tolerance_scale: 1.0,
            checks: vec![
                check("Acomm1", "a", 1e-9, Ok(1e-12)),
                check("Acomm1", "b", 1e-9, Ok(1e-3)),
                check("quad1", "a", 1e-9, Ok(0.0)),
            ],
        };
        let v = report.to_json();
        assert_eq!(v["pass"], Value::Bool(false));
        assert_eq!(v["checks"]["Acomm1"].as_array().unwrap().len(), 2);
        assert_eq!(v["checks"]["Acomm1"][1]["value"], Value::String("0.001".into()));
    }
}
