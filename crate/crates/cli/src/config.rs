//! Run configuration: an INI-style file with `[run]`, `[grid]` and any number
//! of `[model NAME]` sections.
//!
//! ```text
//! [run]
//! truncation = 30
//! eps_list = 0.5, -3, -5
//!
//! [model pt]
//! eps = -1
//! a = 0.7853981633974483
//! b = 0
//! c = 1
//! lambda = auto        # fixed by 4ac - b^2 = 4 lambda^2
//! ```

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use biosc_core::model::{nodeless_check, Grid, ModelError, ModelParams};

use crate::output::Format;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "line {}, field `{}`: {}", self.line, self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn fail(line: usize, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line, field: field.to_string(), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentFamily {
    Natural,
    Distorted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedModel {
    pub name: String,
    pub params: ModelParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub models: Vec<NamedModel>,
    pub grid: Grid,
    pub truncation: usize,
    pub eps_list: Vec<f64>,
    pub w_list: Vec<f64>,
    pub gamma_list: Vec<f64>,
    pub family: CoherentFamily,
    pub r_max: f64,
    pub r_points: usize,
    pub output_format: Option<Format>,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            models: Vec::new(),
            grid: Grid::default(),
            truncation: 30,
            eps_list: vec![0.5, -1.0, -3.0, -5.0],
            w_list: vec![0.0, 0.1, 0.5, 1.0, 2.0, 3.0],
            gamma_list: vec![2.0, 20.0, 200.0, 2000.0, 1e6],
            family: CoherentFamily::Natural,
            r_max: 6.0,
            r_points: 61,
            output_format: None,
            output_path: None,
        }
    }
}

struct Entry {
    value: String,
    line: usize,
}

struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: HashMap<String, Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        self.entries.remove(key)
    }

    fn reject_leftovers(&self) -> Result<(), ConfigError> {
        let mut left: Vec<(&String, &Entry)> = self.entries.iter().collect();
        left.sort_by_key(|(_, e)| e.line);
        match left.first() {
            Some((key, e)) => Err(fail(e.line, key, format!("unknown key in [{}]", self.kind))),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Section>, ConfigError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split(['#', ';']).next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(inner) = content.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| fail(line, "", "section header is missing `]`"))?
                .trim();
            let mut parts = inner.split_whitespace();
            let kind = parts.next().ok_or_else(|| fail(line, "", "empty section header"))?.to_string();
            let name = parts.next().map(str::to_string);
            if parts.next().is_some() {
                return Err(fail(line, "", "section header has too many words"));
            }
            match (kind.as_str(), &name) {
                ("run" | "grid", None) => {}
                ("model", Some(_)) => {}
                ("model", None) => return Err(fail(line, "", "[model] needs a name, e.g. [model fig5a]")),
                ("run" | "grid", Some(_)) => return Err(fail(line, "", format!("[{kind}] takes no name"))),
                _ => return Err(fail(line, "", format!("unknown section `{kind}`"))),
            }
            let duplicate = sections.iter().any(|s| s.kind == kind && s.name == name);
            if duplicate {
                return Err(fail(line, "", format!("section `{inner}` appears twice")));
            }
            sections.push(Section { kind, name, line, entries: HashMap::new() });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| fail(line, "", "expected `key = value`"))?;
        let key = key.trim().to_string();
        let section = sections
            .last_mut()
            .ok_or_else(|| fail(line, &key, "key appears before any section header"))?;
        if section.entries.contains_key(&key) {
            return Err(fail(line, &key, "key appears twice in this section"));
        }
        section.entries.insert(key, Entry { value: value.trim().to_string(), line });
    }
    Ok(sections)
}

fn number(e: &Entry, key: &str) -> Result<f64, ConfigError> {
    let v: f64 = e.value.parse().map_err(|_| fail(e.line, key, format!("`{}` is not a number", e.value)))?;
    if !v.is_finite() {
        return Err(fail(e.line, key, "must be finite"));
    }
    Ok(v)
}

fn count(e: &Entry, key: &str) -> Result<usize, ConfigError> {
    e.value
        .parse()
        .map_err(|_| fail(e.line, key, format!("`{}` is not a non-negative integer", e.value)))
}

fn list(e: &Entry, key: &str) -> Result<Vec<f64>, ConfigError> {
    let items: Vec<&str> = e.value.split(',').map(str::trim).collect();
    if items.iter().all(|s| s.is_empty()) {
        return Err(fail(e.line, key, "list is empty"));
    }
    items
        .into_iter()
        .map(|s| {
            let v: f64 = s.parse().map_err(|_| fail(e.line, key, format!("`{s}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(fail(e.line, key, "entries must be finite"))
            }
        })
        .collect()
}

fn parse_run(section: &mut Section, cfg: &mut RunConfig) -> Result<(), ConfigError> {
    if let Some(e) = section.take("truncation") {
        cfg.truncation = count(&e, "truncation")?;
        if !(5..=2000).contains(&cfg.truncation) {
            return Err(fail(e.line, "truncation", "must lie in 5..=2000"));
        }
    }
    if let Some(e) = section.take("eps_list") {
        cfg.eps_list = list(&e, "eps_list")?;
        if cfg.eps_list.iter().any(|&v| v >= 1.0) {
            return Err(fail(e.line, "eps_list", "every ground energy must lie below 1"));
        }
    }
    if let Some(e) = section.take("w_list") {
        cfg.w_list = list(&e, "w_list")?;
        if cfg.w_list.iter().any(|&v| v < 0.0) {
            return Err(fail(e.line, "w_list", "distortion parameters must be non-negative"));
        }
    }
    if let Some(e) = section.take("gamma_list") {
        cfg.gamma_list = list(&e, "gamma_list")?;
    }
    if let Some(e) = section.take("family") {
        cfg.family = match e.value.as_str() {
            "natural" => CoherentFamily::Natural,
            "distorted" => CoherentFamily::Distorted,
            other => return Err(fail(e.line, "family", format!("`{other}` is not natural or distorted"))),
        };
    }
    if let Some(e) = section.take("r_max") {
        cfg.r_max = number(&e, "r_max")?;
        if cfg.r_max < 0.0 {
            return Err(fail(e.line, "r_max", "must be non-negative"));
        }
    }
    if let Some(e) = section.take("r_points") {
        cfg.r_points = count(&e, "r_points")?;
        if cfg.r_points < 1 {
            return Err(fail(e.line, "r_points", "must be at least 1"));
        }
    }
    if let Some(e) = section.take("format") {
        cfg.output_format = Some(
            Format::parse(&e.value).ok_or_else(|| fail(e.line, "format", format!("`{}` is not csv or json", e.value)))?,
        );
    }
    if let Some(e) = section.take("out") {
        cfg.output_path = Some(PathBuf::from(e.value));
    }
    section.reject_leftovers()
}

fn parse_grid(section: &mut Section, cfg: &mut RunConfig) -> Result<(), ConfigError> {
    let mut x_min = cfg.grid.x_min;
    let mut x_max = cfg.grid.x_max;
    let mut n = cfg.grid.n_points;
    let mut last_line = section.line;
    if let Some(e) = section.take("x_min") {
        x_min = number(&e, "x_min")?;
        last_line = last_line.max(e.line);
    }
    if let Some(e) = section.take("x_max") {
        x_max = number(&e, "x_max")?;
        last_line = last_line.max(e.line);
    }
    if let Some(e) = section.take("n_points") {
        n = count(&e, "n_points")?;
        last_line = last_line.max(e.line);
    }
    section.reject_leftovers()?;
    cfg.grid = Grid::new(x_min, x_max, n).map_err(|err| fail(last_line, "", err.to_string()))?;
    Ok(())
}

fn parse_model(section: &mut Section, grid: &Grid) -> Result<NamedModel, ConfigError> {
    let name = section.name.clone().unwrap_or_default();
    let mut values = HashMap::new();
    let mut lines = HashMap::new();
    for key in ["eps", "a", "b", "c"] {
        let e = section
            .take(key)
            .ok_or_else(|| fail(section.line, key, format!("[model {name}] is missing `{key}`")))?;
        values.insert(key, number(&e, key)?);
        lines.insert(key, e.line);
    }
    let lambda = section.take("lambda");
    section.reject_leftovers()?;

    let (eps, a, b, c) = (values["eps"], values["a"], values["b"], values["c"]);
    let params = match &lambda {
        Some(e) if e.value != "auto" => {
            lines.insert("lambda", e.line);
            ModelParams::new(eps, number(e, "lambda")?, a, b, c)
        }
        Some(e) => {
            lines.insert("lambda", e.line);
            ModelParams::with_lambda_from_constraint(eps, a, b, c)
        }
        None => ModelParams::with_lambda_from_constraint(eps, a, b, c),
    };
    let params = params.map_err(|err| {
        let field = match &err {
            ModelError::InvalidParameter { field, .. } => *field,
            _ => "lambda",
        };
        let line = lines.get(field).copied().unwrap_or(section.line);
        fail(line, field, err.to_string())
    })?;
    if !nodeless_check(&params, grid) {
        return Err(fail(section.line, "", format!("[model {name}]: alpha^2 has a zero on the grid")));
    }
    Ok(NamedModel { name, params })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut sections = tokenize(text)?;
        let mut cfg = RunConfig::default();
        // grid first: model validation runs on it
        for s in sections.iter_mut().filter(|s| s.kind == "grid") {
            parse_grid(s, &mut cfg)?;
        }
        for s in sections.iter_mut().filter(|s| s.kind == "run") {
            parse_run(s, &mut cfg)?;
        }
        let grid = cfg.grid;
        for s in sections.iter_mut().filter(|s| s.kind == "model") {
            cfg.models.push(parse_model(s, &grid)?);
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "
[run]
truncation = 12
eps_list = 0.5, -3
family = distorted

[grid]
x_min = -5
x_max = 5
n_points = 101

[model pt]
eps = -1
a = 0.7853981633974483
b = 0
c = 1
lambda = 0.886226925452758
";

    #[test]
    fn parses_all_sections() {
        let cfg = RunConfig::parse(GOOD).unwrap();
        assert_eq!(cfg.truncation, 12);
        assert_eq!(cfg.eps_list, vec![0.5, -3.0]);
        assert_eq!(cfg.family, CoherentFamily::Distorted);
        assert_eq!(cfg.grid.n_points, 101);
        assert_eq!(cfg.models.len(), 1);
        assert_eq!(cfg.models[0].name, "pt");
        assert_eq!(cfg.models[0].params.lambda, 0.886226925452758);
        // untouched keys keep their defaults
        assert_eq!(cfg.w_list, RunConfig::default().w_list);
    }

    #[test]
    fn lambda_auto_uses_constraint() {
        let cfg = RunConfig::parse("[model m]\neps = -3\na = 1\nb = 1\nc = 1\nlambda = auto\n").unwrap();
        assert_eq!(cfg.models[0].params.lambda, 0.5 * 3f64.sqrt());
    }

    #[test]
    fn constraint_violation_points_at_lambda() {
        let text = GOOD.replace("lambda = 0.886226925452758", "lambda = 0.9");
        let err = RunConfig::parse(&text).unwrap_err();
        assert_eq!(err.field, "lambda");
        assert_eq!(err.line, 17);
    }

    #[test]
    fn field_errors_carry_lines() {
        let err = RunConfig::parse("[run]\ntruncation = many\n").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (2, "truncation"));
        let err = RunConfig::parse("[run]\n\nspeed = 3\n").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (3, "speed"));
        let err = RunConfig::parse("[model m]\neps = 2\na = 1\nb = 0\nc = 1\n").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (2, "eps"));
        let err = RunConfig::parse("[model m]\neps = -1\na = -1\nb = 0\nc = 1\nlambda = 0\n").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (3, "a"));
        let err = RunConfig::parse("[model m]\neps = -1\nb = 0\nc = 1\n").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (1, "a"));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(RunConfig::parse("x = 1\n").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("[run\n").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("[run]\n[run]\n").unwrap_err().line, 2);
        assert_eq!(RunConfig::parse("[model]\n").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("[wat]\n").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("[run]\nr_max = 1\nr_max = 2\n").unwrap_err().line, 3);
        assert_eq!(RunConfig::parse("[run]\neps_list = 0.5, 1.5\n").unwrap_err().field, "eps_list");
        assert_eq!(RunConfig::parse("[grid]\nn_points = 1\n").unwrap_err().line, 2);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = RunConfig::parse("# top\n\n[run]  ; trailing\nr_points = 7 # seven\n").unwrap();
        assert_eq!(cfg.r_points, 7);
    }
}
