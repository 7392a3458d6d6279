use std::path::{Path, PathBuf};

use ideal_moments::{FieldDescriptor, NumberField};
use serde::Deserialize;

use crate::{CliError, Global};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

/// Grid in the config file: the flag syntax or explicit pairs.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GridSpec {
    Text(String),
    Pairs(Vec<(f64, Option<f64>)>),
}

/// Field in the config file: inline descriptor, inline JSON text, or a path.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FieldSpec {
    Descriptor(FieldDescriptor),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    field: Option<FieldSpec>,
    bound: Option<u64>,
    grid: Option<GridSpec>,
    theta: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    jobs: Option<usize>,
    no_cache: Option<bool>,
    naive_oracle: Option<bool>,
    cache_dir: Option<PathBuf>,
    counts_only: Option<bool>,
    z1: Option<f64>,
    z2: Option<f64>,
    no_timestamp: Option<bool>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub field: Option<FieldDescriptor>,
    pub bound: Option<u64>,
    /// `(x, theta)`; theta is `None` where neither the entry nor `--theta` gave one.
    pub grid: Vec<(f64, Option<f64>)>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
    pub no_cache: bool,
    pub naive_oracle: bool,
    pub counts_only: bool,
    pub cache_dir: Option<PathBuf>,
    pub z1: f64,
    pub z2: f64,
    pub timestamp: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::usage(msg)
}

/// `x:theta,x:theta,...`; a bare `x` takes the default theta.
pub fn parse_grid(s: &str, theta: Option<f64>) -> Result<Vec<(f64, Option<f64>)>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (x, t) = match item.split_once(':') {
            Some((x, t)) => (x, Some(t)),
            None => (item, None),
        };
        let x: f64 = x.trim().parse().map_err(|_| usage(format!("bad grid x {x:?}")))?;
        let t = match t {
            Some(t) => Some(
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("bad grid theta {t:?}")))?,
            ),
            None => theta,
        };
        if !(x.is_finite() && x > 0.0) || t.is_some_and(|t| !t.is_finite()) {
            return Err(usage(format!("grid entry {item:?} must have finite x > 0")));
        }
        out.push((x, t));
    }
    Ok(out)
}

fn descriptor_from_text(text: &str, base: Option<&Path>) -> Result<FieldDescriptor, CliError> {
    let t = text.trim();
    if t.starts_with('{') {
        return FieldDescriptor::from_json(t).map_err(|e| usage(format!("invalid field descriptor: {e}")));
    }
    let path = match base {
        Some(dir) if Path::new(t).is_relative() => dir.join(t),
        _ => PathBuf::from(t),
    };
    let body =
        std::fs::read_to_string(&path).map_err(|e| usage(format!("cannot read field {}: {e}", path.display())))?;
    FieldDescriptor::from_json(&body).map_err(|e| usage(format!("invalid field descriptor in {}: {e}", path.display())))
}

impl ExperimentConfig {
    /// Flags first, then the config file, then defaults.
    pub fn resolve(g: &Global) -> Result<Self, CliError> {
        let (file, base) = match &g.config {
            Some(path) => {
                let body = std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
                let cfg: FileConfig = serde_json::from_str(&body)
                    .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?;
                (cfg, path.parent().map(Path::to_path_buf))
            }
            None => (FileConfig::default(), None),
        };
        let field = match (&g.field, file.field) {
            (Some(text), _) => Some(descriptor_from_text(text, None)?),
            (None, Some(FieldSpec::Descriptor(d))) => Some(d),
            (None, Some(FieldSpec::Text(t))) => Some(descriptor_from_text(&t, base.as_deref())?),
            (None, None) => None,
        };
        let theta = g.theta.or(file.theta);
        let grid = match (&g.grid, file.grid) {
            (Some(s), _) => parse_grid(s, theta)?,
            (None, Some(GridSpec::Text(s))) => parse_grid(&s, theta)?,
            (None, Some(GridSpec::Pairs(p))) => p.into_iter().map(|(x, t)| (x, t.or(theta))).collect(),
            (None, None) => Vec::new(),
        };
        let jobs = g.jobs.or(file.jobs).unwrap_or(1);
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        Ok(Self {
            field,
            bound: g.bound.or(file.bound),
            grid,
            out: g.out.clone().or(file.out),
            format: g.format.or(file.format).unwrap_or(Format::Csv),
            jobs,
            no_cache: g.no_cache || file.no_cache.unwrap_or(false),
            naive_oracle: g.naive_oracle || file.naive_oracle.unwrap_or(false),
            counts_only: g.counts_only || file.counts_only.unwrap_or(false),
            cache_dir: g.cache_dir.clone().or(file.cache_dir),
            z1: g.z1.or(file.z1).unwrap_or(-0.10),
            z2: g.z2.or(file.z2).unwrap_or(-0.05),
            timestamp: !(g.no_timestamp || file.no_timestamp.unwrap_or(false)),
        })
    }

    pub fn number_field(&self) -> Result<NumberField, CliError> {
        let d = self.field.as_ref().ok_or_else(|| usage("--field is required"))?;
        d.build().map_err(|e| usage(format!("invalid field: {e}")))
    }

    pub fn field_label(&self) -> String {
        self.field.as_ref().map(FieldDescriptor::label).unwrap_or_default()
    }
}
