//! Pipeline configuration: one versioned key-value text file carrying every
//! tunable, with per-module defaults.

use std::fmt::Write as _;
use std::path::Path;

use crate::lexicon::{OovMode, SimilarityConfig};
use crate::{Error, Result};

const HEADER: &str = "config v1";

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Background-chain stay probability.
    pub gamma: f64,
    /// Foreground emission softmax temperature.
    pub tau: f64,
    /// Embedding distance scale in the similarity map 1/(1 + d/scale).
    pub distance_scale: f64,
    pub oov_mode: OovMode,
    /// Ingredient canonicalization similarity threshold.
    pub canonicalization_threshold: f64,
    /// Naive Bayes smoothing pseudo-count.
    pub smoothing: f64,
    /// Confidence weights (visual, affordance); must sum to 1.
    pub lambda_visual: f64,
    pub lambda_affordance: f64,
    /// Affordance SVD rank cap.
    pub rank: usize,
    /// Visual refinement shift bound in seconds.
    pub max_shift: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            gamma: 0.7,
            tau: 1.0,
            distance_scale: 1.0,
            oov_mode: OovMode::EditDistanceFallback,
            canonicalization_threshold: 0.75,
            smoothing: 1.0,
            lambda_visual: 0.5,
            lambda_affordance: 0.5,
            rank: 50,
            max_shift: 3.0,
        }
    }
}

impl PipelineConfig {
    pub fn similarity(&self) -> SimilarityConfig {
        SimilarityConfig {
            oov_mode: self.oov_mode,
            distance_scale: self.distance_scale,
        }
    }

    pub fn align_config(&self) -> crate::align::AlignConfig {
        crate::align::AlignConfig {
            gamma: self.gamma,
            tau: self.tau,
            similarity: self.similarity(),
        }
    }

    pub fn parser_config(&self) -> crate::parser::ParserConfig {
        crate::parser::ParserConfig {
            canonicalization_threshold: self.canonicalization_threshold,
            similarity: self.similarity(),
        }
    }

    pub fn weights(&self) -> (f64, f64) {
        (self.lambda_visual, self.lambda_affordance)
    }
}

pub fn write_config(config: &PipelineConfig, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "gamma = {}", config.gamma).unwrap();
    writeln!(out, "tau = {}", config.tau).unwrap();
    writeln!(out, "distance_scale = {}", config.distance_scale).unwrap();
    let oov = match config.oov_mode {
        OovMode::EditDistanceFallback => "edit-distance",
        OovMode::ZeroSimilarity => "zero",
    };
    writeln!(out, "oov_mode = {oov}").unwrap();
    writeln!(out, "canonicalization_threshold = {}", config.canonicalization_threshold).unwrap();
    writeln!(out, "smoothing = {}", config.smoothing).unwrap();
    writeln!(out, "lambda_visual = {}", config.lambda_visual).unwrap();
    writeln!(out, "lambda_affordance = {}", config.lambda_affordance).unwrap();
    writeln!(out, "rank = {}", config.rank).unwrap();
    writeln!(out, "max_shift = {}", config.max_shift).unwrap();
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_config(path: &Path) -> Result<PipelineConfig> {
    let content = std::fs::read_to_string(path)?;
    parse_config(&content, &path.display().to_string())
}

pub(crate) fn parse_config(content: &str, name: &str) -> Result<PipelineConfig> {
    let mut lines = content.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        other => {
            return Err(Error::Version {
                path: name.to_string(),
                expected: HEADER.to_string(),
                found: other.map(|(_, h)| h.to_string()).unwrap_or_default(),
            })
        }
    }
    let mut config = PipelineConfig::default();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::format(name, lineno, "expected `key = value`"))?;
        let parse_f = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::format(name, lineno, format!("bad number `{v}`")))
        };
        match key {
            "gamma" => config.gamma = parse_f(value)?,
            "tau" => config.tau = parse_f(value)?,
            "distance_scale" => config.distance_scale = parse_f(value)?,
            "oov_mode" => {
                config.oov_mode = match value {
                    "edit-distance" => OovMode::EditDistanceFallback,
                    "zero" => OovMode::ZeroSimilarity,
                    other => {
                        return Err(Error::format(name, lineno, format!("unknown oov_mode `{other}`")))
                    }
                }
            }
            "canonicalization_threshold" => config.canonicalization_threshold = parse_f(value)?,
            "smoothing" => config.smoothing = parse_f(value)?,
            "lambda_visual" => config.lambda_visual = parse_f(value)?,
            "lambda_affordance" => config.lambda_affordance = parse_f(value)?,
            "rank" => {
                config.rank = value.parse().map_err(|_| {
                    Error::format(name, lineno, format!("bad integer `{value}`"))
                })?
            }
            "max_shift" => config.max_shift = parse_f(value)?,
            other => {
                return Err(Error::format(name, lineno, format!("unknown key `{other}`")));
            }
        }
    }
    Ok(config)
}
