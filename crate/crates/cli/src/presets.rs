//! Built-in parameter sets, overridable by files in `$BIOSC_PRESET_DIR`.

use std::path::PathBuf;

use crate::config::{ConfigError, RunConfig};

pub const PRESET_DIR_VAR: &str = "BIOSC_PRESET_DIR";

pub const BUILTIN: [(&str, &str); 10] = [
    ("fig1a", include_str!("../presets/fig1a.ini")),
    ("fig1b", include_str!("../presets/fig1b.ini")),
    ("fig1c", include_str!("../presets/fig1c.ini")),
    ("fig1d", include_str!("../presets/fig1d.ini")),
    ("fig1e", include_str!("../presets/fig1e.ini")),
    ("fig1f", include_str!("../presets/fig1f.ini")),
    ("fig3", include_str!("../presets/fig3.ini")),
    ("fig4", include_str!("../presets/fig4.ini")),
    ("fig5a", include_str!("../presets/fig5a.ini")),
    ("fig5b", include_str!("../presets/fig5b.ini")),
];

/// Used when neither `--config` nor `--preset` is given.
pub const DEFAULT_PRESET: &str = "fig5a";

#[derive(Debug)]
pub enum PresetError {
    Unknown(String),
    Unreadable { path: PathBuf, reason: String },
    Invalid { source_name: String, error: ConfigError },
}

impl std::fmt::Display for PresetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PresetError::Unknown(name) => {
                let known: Vec<&str> = BUILTIN.iter().map(|(n, _)| *n).collect();
                write!(f, "unknown preset `{name}` (known: {})", known.join(", "))
            }
            PresetError::Unreadable { path, reason } => write!(f, "cannot read {}: {reason}", path.display()),
            PresetError::Invalid { source_name, error } => write!(f, "{source_name}: {error}"),
        }
    }
}

impl std::error::Error for PresetError {}

/// Text of preset `name`, from `dir` when given, else built in.
pub fn preset_text(name: &str, dir: Option<&std::path::Path>) -> Result<String, PresetError> {
    match dir {
        Some(dir) => {
            let path = dir.join(format!("{name}.ini"));
            std::fs::read_to_string(&path).map_err(|e| PresetError::Unreadable { path, reason: e.to_string() })
        }
        None => BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| PresetError::Unknown(name.to_string())),
    }
}

pub fn load_preset(name: &str, dir: Option<&std::path::Path>) -> Result<RunConfig, PresetError> {
    let text = preset_text(name, dir)?;
    RunConfig::parse(&text).map_err(|error| PresetError::Invalid { source_name: format!("preset {name}"), error })
}
