//! Figure-data commands. Each returns a [`Table`]; rows are computed in
//! parallel and assembled in grid order.

use std::f64::consts::PI;

use biosc_core::algebra::{ladder_a, ladder_cw, oscillator_limit_ops};
use biosc_core::coherent::{
    distorted_variance, distorted_variance_matrix, natural_variance, natural_variance_matrix, required_dim, Family,
};
use biosc_core::model::{potential, total_area_closed_form, zero_total_area};
use biosc_core::spectral::oscillator_limit_deviation;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::config::{CoherentFamily, RunConfig};
use crate::output::{format_number, Cell, Table};
use crate::CliError;

/// Highest level compared in the oscillator limit.
pub const LIMIT_LEVELS: usize = 4;

fn no_models() -> CliError {
    CliError::Config("the configuration has no [model NAME] section".into())
}

/// Columns x, Re V and Im V per parameter set, and the oscillator reference x².
pub fn cmd_potential(cfg: &RunConfig) -> Result<Table, CliError> {
    if cfg.models.is_empty() {
        return Err(no_models());
    }
    let mut columns = vec!["x".to_string()];
    for m in &cfg.models {
        columns.push(format!("re_v[{}]", m.name));
        columns.push(format!("im_v[{}]", m.name));
    }
    columns.push("v_osc".to_string());
    let mut table = Table::new(columns);

    let grid = cfg.grid;
    table.rows = (0..grid.n_points)
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            let mut row = vec![Cell::Num(x)];
            for m in &cfg.models {
                let v = potential(x, &m.params).map_err(|e| CliError::Config(format!("[model {}]: {e}", m.name)))?;
                row.push(v.re.into());
                row.push(v.im.into());
            }
            row.push((x * x).into());
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;

    // the area check needs a window symmetric about the origin
    let half = grid.x_min.abs().min(grid.x_max.abs());
    for m in &cfg.models {
        table.push_meta(format!("pt_symmetric[{}]", m.name), m.params.is_pt_symmetric().to_string());
        if grid.x_min < 0.0 && grid.x_max > 0.0 {
            let area = zero_total_area(&m.params, half).map_err(|e| CliError::Failure(e.to_string()))?;
            let closed = total_area_closed_form(&m.params, half).map_err(|e| CliError::Failure(e.to_string()))?;
            table.push_meta(format!("zero[{}]", m.name), format_number(area.abs()));
            table.push_meta(format!("zero_closed_form_gap[{}]", m.name), format_number((area - closed).abs()));
        }
    }
    Ok(table)
}

/// Sample radii 0 ..= r_max.
pub fn radii(cfg: &RunConfig) -> Vec<f64> {
    if cfg.r_points == 1 {
        return vec![0.0];
    }
    let last = cfg.r_points - 1;
    (0..cfg.r_points)
        .map(|k| if k == last { cfg.r_max } else { cfg.r_max * k as f64 / last as f64 })
        .collect()
}

/// Uncertainty product against r = |z| per ground energy (natural family) or
/// per distortion parameter (distorted family). The footer records the
/// largest gap between the closed form and the truncated-matrix route.
pub fn cmd_coherent(cfg: &RunConfig, family: CoherentFamily) -> Result<Table, CliError> {
    let (label, params): (&str, Vec<f64>) = match family {
        CoherentFamily::Natural => ("eps", cfg.eps_list.clone()),
        // w = 0 has no distorted coherent states
        CoherentFamily::Distorted => ("w", cfg.w_list.iter().copied().filter(|&w| w > 0.0).collect()),
    };
    if params.is_empty() {
        return Err(CliError::Config(format!("no usable {label} values for the coherent command")));
    }
    let mut columns = vec!["r".to_string()];
    columns.extend(params.iter().map(|v| format!("dxdp[{label}={}]", format_number(*v))));
    let mut table = Table::new(columns);

    let evaluate = |r: f64, v: f64| -> Result<(f64, f64), String> {
        let z = C64::new(r, 0.0);
        let fail = |e: biosc_core::coherent::CoherentError| e.to_string();
        match family {
            CoherentFamily::Natural => {
                let closed = natural_variance(z, v).map_err(fail)?.dxdp;
                let dim = required_dim(Family::Natural { eps: v }, z).map_err(fail)? + 4;
                Ok((closed, natural_variance_matrix(z, v, dim).map_err(fail)?))
            }
            CoherentFamily::Distorted => {
                let closed = distorted_variance(z, v).map_err(fail)?;
                let dim = required_dim(Family::Distorted { w: v }, z).map_err(fail)? + 4;
                Ok((closed, distorted_variance_matrix(z, v, dim).map_err(fail)?))
            }
        }
    };
    let rows: Vec<(Vec<Cell>, f64)> = radii(cfg)
        .into_par_iter()
        .map(|r| {
            let mut row = vec![Cell::Num(r)];
            let mut gap = 0.0f64;
            for &v in &params {
                let (closed, matrix) = evaluate(r, v).map_err(CliError::Failure)?;
                row.push(closed.into());
                gap = gap.max((closed - matrix).abs());
            }
            Ok((row, gap))
        })
        .collect::<Result<_, CliError>>()?;
    let gap = rows.iter().map(|(_, g)| *g).fold(0.0, f64::max);
    table.rows = rows.into_iter().map(|(r, _)| r).collect();
    table.push_meta("family", label_of(family));
    table.push_meta("route_gap", format_number(gap));
    Ok(table)
}

fn label_of(family: CoherentFamily) -> &'static str {
    match family {
        CoherentFamily::Natural => "natural",
        CoherentFamily::Distorted => "distorted",
    }
}

/// sup|ψₙ − φₙ| for n = 0..=4 per γ. Rows with |γ| ≤ √π/2 (where the
/// denominator of the real family can vanish) carry NaN and a status marker.
pub fn cmd_limits(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut columns = vec!["gamma".to_string()];
    columns.extend((0..=LIMIT_LEVELS).map(|n| format!("dev_n{n}")));
    columns.push("status".to_string());
    let mut table = Table::new(columns);

    let threshold = PI.sqrt() / 2.0;
    let results: Vec<Option<Vec<f64>>> = cfg
        .gamma_list
        .par_iter()
        .map(|&g| {
            if g.abs() <= threshold {
                return None;
            }
            oscillator_limit_deviation(g, LIMIT_LEVELS, &cfg.grid).ok()
        })
        .collect();
    for (&g, res) in cfg.gamma_list.iter().zip(&results) {
        let mut row = vec![Cell::Num(g)];
        match res {
            Some(devs) => {
                row.extend(devs.iter().map(|&d| Cell::Num(d)));
                row.push("ok".into());
            }
            None => {
                row.extend((0..=LIMIT_LEVELS).map(|_| Cell::Num(f64::NAN)));
                row.push(if g.abs() <= threshold { "singular" } else { "error" }.into());
            }
        }
        table.rows.push(row);
    }

    // the worst level should shrink as γ grows
    let mut valid: Vec<(f64, f64)> = cfg
        .gamma_list
        .iter()
        .zip(&results)
        .filter_map(|(&g, r)| r.as_ref().map(|d| (g.abs(), d.iter().copied().fold(0.0, f64::max))))
        .collect();
    valid.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = valid.windows(2).all(|w| w[0].0 == w[1].0 || w[1].1 < w[0].1);
    table.push_meta("monotone", monotone.to_string());

    let dim = cfg.truncation;
    let op_err = |e: biosc_core::algebra::AlgebraError| CliError::Failure(e.to_string());
    let gap = |x: &nalgebra::DMatrix<C64>, y: &nalgebra::DMatrix<C64>| (x - y).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (a_osc, _) = oscillator_limit_ops(1.0, dim).map_err(op_err)?;
    let aosc = gap(&a_osc.entries, &ladder_a(-1.0, dim).map_err(op_err)?.0.entries);
    let mut cosc = 0.0f64;
    for &w in cfg.w_list.iter().filter(|&&w| w > 0.0) {
        let (_, c_osc) = oscillator_limit_ops(w, dim).map_err(op_err)?;
        cosc = cosc.max(gap(&c_osc.entries, &ladder_cw(w, dim).map_err(op_err)?.0.entries));
    }
    table.push_meta("aosc", format_number(aosc));
    table.push_meta("cosc", format_number(cosc));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::load_preset;

    #[test]
    fn radii_include_both_ends() {
        let mut cfg = RunConfig::default();
        cfg.r_max = 6.0;
        cfg.r_points = 61;
        let r = radii(&cfg);
        assert_eq!((r[0], r[60], r.len()), (0.0, 6.0, 61));
        cfg.r_points = 1;
        assert_eq!(radii(&cfg), vec![0.0]);
    }

    #[test]
    fn natural_origin_row_matches_anchor() {
        let cfg = load_preset("fig3", None).unwrap();
        let t = cmd_coherent(&cfg, CoherentFamily::Natural).unwrap();
        let origin: Vec<f64> = t.rows[0][1..].iter().map(|c| match c {
            Cell::Num(v) => *v,
            Cell::Text(_) => f64::NAN,
        }).collect();
        assert_eq!(origin, vec![0.625, 12.0, 24.0]);
    }

    #[test]
    fn singular_gamma_is_marked() {
        let mut cfg = RunConfig::default();
        cfg.gamma_list = vec![0.5, 20.0];
        cfg.grid = biosc_core::model::Grid::new(-8.0, 8.0, 801).unwrap();
        let t = cmd_limits(&cfg).unwrap();
        assert_eq!(t.rows[0].last(), Some(&Cell::Text("singular".into())));
        assert_eq!(t.rows[1].last(), Some(&Cell::Text("ok".into())));
    }
}
