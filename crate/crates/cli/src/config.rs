//! Layered run configuration: command-line flags override `LANDEN_*`
//! environment variables, which override an optional `key=value` config
//! file, which overrides the built-in defaults.

use std::fmt;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use landen_core::quad;

/// Output encoding for every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Text => write!(f, "text"),
            Format::Csv => write!(f, "csv"),
            Format::Json => write!(f, "json"),
        }
    }
}

impl Format {
    fn parse(value: &str) -> Result<Self, String> {
        match value.trim() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format {other:?} (expected text, csv, or json)"
            )),
        }
    }
}

/// Fully resolved settings shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub max_iter: usize,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: quad::DEFAULT_TOL,
            max_iter: quad::DEFAULT_MAX_ITER,
            format: Format::Text,
        }
    }
}

/// Unresolved inputs in precedence order: flags beat environment beats file.
pub struct Layers<'a> {
    pub flag_tol: Option<f64>,
    pub flag_max_iter: Option<usize>,
    pub flag_format: Option<Format>,
    pub config_path: Option<&'a Path>,
}

impl Layers<'_> {
    pub fn resolve(&self) -> Result<Settings, String> {
        let mut settings = Settings::default();
        if let Some(path) = self.config_path {
            apply_file(&mut settings, path)?;
        }
        apply_env(&mut settings)?;
        if let Some(tol) = self.flag_tol {
            settings.tol = tol;
        }
        if let Some(max_iter) = self.flag_max_iter {
            settings.max_iter = max_iter;
        }
        if let Some(format) = self.flag_format {
            settings.format = format;
        }
        if !settings.tol.is_finite() || settings.tol <= 0.0 {
            return Err(format!("tolerance must be positive, got {}", settings.tol));
        }
        if settings.max_iter == 0 {
            return Err("max_iter must be at least 1".into());
        }
        Ok(settings)
    }
}

fn apply_file(settings: &mut Settings, path: &Path) -> Result<(), String> {
    let text = fs::read_to_string(path)
        .map_err(|err| format!("cannot read config file {}: {err}", path.display()))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}:{}: expected key=value, got {line:?}",
                path.display(),
                lineno + 1
            ));
        };
        apply_pair(settings, key.trim(), value.trim())
            .map_err(|err| format!("{}:{}: {err}", path.display(), lineno + 1))?;
    }
    Ok(())
}

fn apply_env(settings: &mut Settings) -> Result<(), String> {
    for (var, key) in [
        ("LANDEN_TOL", "tol"),
        ("LANDEN_MAX_ITER", "max_iter"),
        ("LANDEN_FORMAT", "format"),
    ] {
        if let Ok(value) = std::env::var(var) {
            apply_pair(settings, key, &value).map_err(|err| format!("{var}: {err}"))?;
        }
    }
    Ok(())
}

fn apply_pair(settings: &mut Settings, key: &str, value: &str) -> Result<(), String> {
    match key {
        "tol" => {
            settings.tol = value
                .parse()
                .map_err(|_| format!("invalid tolerance {value:?}"))?;
        }
        "max_iter" => {
            settings.max_iter = value
                .parse()
                .map_err(|_| format!("invalid max_iter {value:?}"))?;
        }
        "format" => settings.format = Format::parse(value)?,
        other => return Err(format!("unknown setting {other:?}")),
    }
    Ok(())
}
