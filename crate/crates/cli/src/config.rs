//! Run configuration: defaults, `key = value` config files, flag overrides.
//!
//! A config file is a flat list of `key = value` lines with `#` comments.
//! Command-line flags win over file values, which win over defaults. The
//! resolved configuration is validated before any work starts and serialized
//! next to the outputs for reproducibility.

use std::path::{Path, PathBuf};

use serde::Serialize;

use prunetm_core::tm::ModelConfig;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub train_path: Option<PathBuf>,
    pub vocab_max_size: usize,
    /// Number of classes; inferred from the training labels when absent.
    pub num_classes: Option<usize>,
    pub clauses_per_class: usize,
    pub num_states: u32,
    pub vote_clip_t: i32,
    pub specificity_s: f64,
    pub epochs: usize,
    pub seed: u64,
    pub fractions: Vec<f64>,
    pub metric: Option<String>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            train_path: None,
            vocab_max_size: 5000,
            num_classes: None,
            clauses_per_class: 200,
            num_states: 256,
            vote_clip_t: 20,
            specificity_s: 5.0,
            epochs: 50,
            seed: 42,
            fractions: Vec::new(),
            metric: None,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> CliResult<RunConfig> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = RunConfig::default();
        for (line_number, raw) in content.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "config line {}: expected key = value, got {raw:?}",
                    line_number + 1
                )));
            };
            config.apply(key.trim(), value.trim(), line_number + 1)?;
        }
        Ok(config)
    }

    fn apply(&mut self, key: &str, value: &str, line: usize) -> CliResult<()> {
        let bad = |what: &str| {
            CliError::Config(format!(
                "config line {line}: {key} must be {what}, got {value:?}"
            ))
        };
        match key {
            "train" | "train_path" => self.train_path = Some(PathBuf::from(value)),
            "vocab_max_size" => {
                self.vocab_max_size = value.parse().map_err(|_| bad("an integer"))?
            }
            "num_classes" => self.num_classes = Some(value.parse().map_err(|_| bad("an integer"))?),
            "clauses_per_class" => {
                self.clauses_per_class = value.parse().map_err(|_| bad("an integer"))?
            }
            "num_states" => self.num_states = value.parse().map_err(|_| bad("an integer"))?,
            "vote_clip_t" => self.vote_clip_t = value.parse().map_err(|_| bad("an integer"))?,
            "specificity_s" => self.specificity_s = value.parse().map_err(|_| bad("a real"))?,
            "epochs" => self.epochs = value.parse().map_err(|_| bad("an integer"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("an integer"))?,
            "fractions" | "sweep" => {
                self.fractions = parse_fraction_list(value)
                    .map_err(|_| bad("a comma-separated list of reals"))?
            }
            "metric" => self.metric = Some(value.to_string()),
            "out_dir" => self.out_dir = PathBuf::from(value),
            other => {
                return Err(CliError::Config(format!(
                    "config line {line}: unknown key {other:?}"
                )))
            }
        }
        Ok(())
    }

    /// Hyperparameters for a model with `num_classes` classes.
    pub fn model_config(&self, num_classes: usize) -> ModelConfig {
        ModelConfig {
            num_classes,
            clauses_per_class: self.clauses_per_class,
            num_states: self.num_states,
            vote_clip_t: self.vote_clip_t,
            specificity_s: self.specificity_s,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        // Shape-check the hyperparameters with a placeholder class count;
        // the real count is validated again once labels are known.
        self.model_config(self.num_classes.unwrap_or(2))
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if self.vocab_max_size == 0 {
            return Err(CliError::Config("vocab_max_size must be positive".into()));
        }
        for &fraction in &self.fractions {
            if !(0.0..=0.5).contains(&fraction) {
                return Err(CliError::Config(format!(
                    "prune fraction {fraction} outside [0, 0.5]"
                )));
            }
        }
        if let Some(metric) = &self.metric {
            if metric != "comprehensiveness" && metric != "sufficiency" {
                return Err(CliError::Config(format!(
                    "metric must be comprehensiveness or sufficiency, got {metric:?}"
                )));
            }
        }
        Ok(())
    }
}

pub fn parse_fraction_list(value: &str) -> Result<Vec<f64>, std::num::ParseFloatError> {
    value
        .split(',')
        .map(|part| part.trim().parse::<f64>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(content: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, content).unwrap();
        (dir, path)
    }

    #[test]
    fn parses_keys_comments_and_defaults() {
        let (_dir, path) = write_config(
            "# comment\ntrain = data/train.jsonl\nepochs = 7\nfractions = 0.05, 0.25\nseed=9\n",
        );
        let config = RunConfig::from_file(&path).unwrap();
        assert_eq!(config.train_path, Some(PathBuf::from("data/train.jsonl")));
        assert_eq!(config.epochs, 7);
        assert_eq!(config.fractions, vec![0.05, 0.25]);
        assert_eq!(config.seed, 9);
        assert_eq!(config.vocab_max_size, 5000);
        assert!(config.validate().is_ok());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let (_dir, path) = write_config("mystery = 1\n");
        assert!(matches!(
            RunConfig::from_file(&path),
            Err(CliError::Config(_))
        ));

        let (_dir2, path2) = write_config("epochs = soon\n");
        assert!(matches!(
            RunConfig::from_file(&path2),
            Err(CliError::Config(_))
        ));

        let (_dir3, path3) = write_config("epochs 5\n");
        assert!(matches!(
            RunConfig::from_file(&path3),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn validation_catches_bad_hyperparameters() {
        let mut config = RunConfig {
            clauses_per_class: 3,
            ..RunConfig::default()
        };
        assert!(config.validate().is_err());
        config.clauses_per_class = 4;
        config.fractions = vec![0.7];
        assert!(config.validate().is_err());
        config.fractions = vec![0.3];
        config.metric = Some("vibes".into());
        assert!(config.validate().is_err());
    }
}
