//! Model hyperparameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hyperparameters of a clause bank.
///
/// `clauses_per_class` must be even: within each class, clauses at even
/// 0-based positions vote for the class and clauses at odd positions vote
/// against it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub num_classes: usize,
    pub clauses_per_class: usize,
    /// Total states per automaton; the include threshold is `num_states / 2`.
    pub num_states: u32,
    /// Vote clip bound `T`: class scores are clamped to `[-T, T]` for
    /// feedback gating and confidence normalization.
    pub vote_clip_t: i32,
    /// Specificity `s`: Type I feedback strengthens matching literals with
    /// probability `(s - 1) / s` and weakens with probability `1 / s`.
    pub specificity_s: f64,
    pub seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            num_classes: 2,
            clauses_per_class: 200,
            num_states: 256,
            vote_clip_t: 20,
            specificity_s: 5.0,
            seed: 42,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_classes < 2 {
            return Err(Error::InvalidConfig(format!(
                "num_classes must be >= 2, got {}",
                self.num_classes
            )));
        }
        if self.clauses_per_class < 2 || !self.clauses_per_class.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "clauses_per_class must be an even integer >= 2, got {}",
                self.clauses_per_class
            )));
        }
        if self.num_states < 2 || !self.num_states.is_multiple_of(2) || self.num_states > 65_536 {
            return Err(Error::InvalidConfig(format!(
                "num_states must be an even integer in [2, 65536], got {}",
                self.num_states
            )));
        }
        if self.vote_clip_t < 1 {
            return Err(Error::InvalidConfig(format!(
                "vote_clip_t must be >= 1, got {}",
                self.vote_clip_t
            )));
        }
        if self.specificity_s <= 1.0 || !self.specificity_s.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "specificity_s must be a finite real > 1, got {}",
                self.specificity_s
            )));
        }
        Ok(())
    }

    /// States at or above this value mean Include.
    pub fn include_threshold(&self) -> u16 {
        (self.num_states / 2) as u16
    }

    pub fn total_clauses(&self) -> usize {
        self.num_classes * self.clauses_per_class
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert!(ModelConfig::default().validate().is_ok());
        assert_eq!(ModelConfig::default().include_threshold(), 128);
    }

    #[test]
    fn rejects_odd_clause_count() {
        let cfg = ModelConfig {
            clauses_per_class: 3,
            ..ModelConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_single_class() {
        let cfg = ModelConfig {
            num_classes: 1,
            ..ModelConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_low_specificity() {
        let cfg = ModelConfig {
            specificity_s: 1.0,
            ..ModelConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
