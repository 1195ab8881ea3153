use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::clustering::FeatureGroup;
use crate::error::{Error, Result};
use crate::turbulence::MIN_LENGTH;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub corpus_path: PathBuf,
    pub output_dir: PathBuf,
    pub min_length: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub seed: u64,
    pub restarts: usize,
    pub groups: Vec<FeatureGroup>,
    /// Adds a `generated_at_unix` field to the summary report.
    pub timestamp: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            corpus_path: PathBuf::from("corpus.tsv"),
            output_dir: PathBuf::from("out"),
            min_length: MIN_LENGTH,
            k_min: 2,
            k_max: 9,
            seed: 42,
            restarts: 50,
            groups: FeatureGroup::ALL.to_vec(),
            timestamp: false,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T> {
    v.parse().map_err(|_| {
        Error::Config(format!(
            "line {line}: `{key}` expects an integer, got {v:?}"
        ))
    })
}

pub fn parse_groups(v: &str) -> Result<Vec<FeatureGroup>> {
    let mut out: Vec<FeatureGroup> = Vec::new();
    for g in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let g: FeatureGroup = g.parse()?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

impl PipelineConfig {
    /// Applies flat `key = value` lines on top of `self`. `#` starts a
    /// comment; blank lines are ignored.
    pub fn apply_text(mut self, text: &str) -> Result<Self> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {line}: expected key=value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "corpus" | "corpus_path" => self.corpus_path = PathBuf::from(value),
                "output" | "output_dir" => self.output_dir = PathBuf::from(value),
                "min_length" => self.min_length = parse_num(key, value, line)?,
                "k_min" => self.k_min = parse_num(key, value, line)?,
                "k_max" => self.k_max = parse_num(key, value, line)?,
                "seed" => self.seed = parse_num(key, value, line)?,
                "restarts" => self.restarts = parse_num(key, value, line)?,
                "groups" => self.groups = parse_groups(value)?,
                "timestamp" => {
                    self.timestamp = match value {
                        "true" | "1" | "yes" => true,
                        "false" | "0" | "no" => false,
                        _ => {
                            return Err(Error::Config(format!(
                                "line {line}: bad boolean {value:?}"
                            )))
                        }
                    }
                }
                other => return Err(Error::Config(format!("line {line}: unknown key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        PipelineConfig::default().apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_min < 2 || self.k_min > self.k_max {
            return Err(Error::Config(format!(
                "need 2 <= k_min <= k_max, got k_min={} k_max={}",
                self.k_min, self.k_max
            )));
        }
        if self.min_length < MIN_LENGTH {
            return Err(Error::Config(format!(
                "min_length must be at least {MIN_LENGTH}, got {}",
                self.min_length
            )));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be positive".into()));
        }
        if self.groups.is_empty() {
            return Err(Error::Config("no feature groups selected".into()));
        }
        Ok(())
    }
}
