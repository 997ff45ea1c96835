//! Tsetlin Machine model: clause bank, inference, and training.
//!
//! A model holds `num_classes * clauses_per_class` conjunctive clauses over
//! the original and negated literals of a Boolean bag-of-words input. Within
//! each class, clauses alternate polarity: even 0-based positions vote for
//! the class, odd positions against. Prediction is the argmax of the per-class
//! vote sums.

mod config;
mod io;
mod state;
mod train;

pub use config::ModelConfig;
pub use state::TaStateMatrix;
pub use train::{TrainLog, TrainOptions};

use crate::bow::BooleanBow;
use crate::error::{Error, Result};
use crate::text::Vocabulary;

/// A trained or in-training clause bank bound to one vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    config: ModelConfig,
    ta: TaStateMatrix,
    vocab_fingerprint: u64,
}

impl Model {
    /// Fresh model bound to `vocab`. All automata start one step below the
    /// include threshold, so every clause is empty.
    pub fn new(config: ModelConfig, vocab: &Vocabulary) -> Result<Self> {
        config.validate()?;
        if vocab.is_empty() {
            return Err(Error::InvalidConfig("vocabulary is empty".into()));
        }
        let ta = TaStateMatrix::new(config.total_clauses(), vocab.len(), config.num_states);
        Ok(Model {
            config,
            ta,
            vocab_fingerprint: vocab.fingerprint(),
        })
    }

    /// Reassemble a model from parts (deserialization, hand-built tests).
    pub fn from_parts(
        config: ModelConfig,
        ta: TaStateMatrix,
        vocab_fingerprint: u64,
    ) -> Result<Self> {
        config.validate()?;
        if ta.rows() != config.total_clauses() || ta.num_states() != config.num_states {
            return Err(Error::ModelFormat(format!(
                "state matrix shape ({} rows, {} states) does not match config ({} clauses, {} states)",
                ta.rows(),
                ta.num_states(),
                config.total_clauses(),
                config.num_states
            )));
        }
        Ok(Model {
            config,
            ta,
            vocab_fingerprint,
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn ta(&self) -> &TaStateMatrix {
        &self.ta
    }

    pub(crate) fn ta_mut(&mut self) -> &mut TaStateMatrix {
        &mut self.ta
    }

    pub fn vocab_fingerprint(&self) -> u64 {
        self.vocab_fingerprint
    }

    pub fn vocab_size(&self) -> usize {
        self.ta.vocab_size()
    }

    pub fn num_clauses(&self) -> usize {
        self.ta.rows()
    }

    /// Errors unless `vocab` is the vocabulary this model was trained on.
    pub fn check_vocab(&self, vocab: &Vocabulary) -> Result<()> {
        if vocab.fingerprint() != self.vocab_fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: self.vocab_fingerprint,
                actual: vocab.fingerprint(),
            });
        }
        Ok(())
    }

    fn check_input(&self, x: &BooleanBow) -> Result<()> {
        if x.len() != self.vocab_size() {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size(),
                input: x.len(),
            });
        }
        Ok(())
    }

    fn check_class(&self, class: usize) -> Result<()> {
        if class >= self.config.num_classes {
            return Err(Error::ClassOutOfRange {
                class,
                num_classes: self.config.num_classes,
            });
        }
        Ok(())
    }

    pub fn clause(&self, clause: usize) -> Result<ClauseView<'_>> {
        if clause >= self.num_clauses() {
            return Err(Error::ClauseOutOfRange {
                clause,
                num_clauses: self.num_clauses(),
            });
        }
        Ok(ClauseView {
            model: self,
            row: clause,
        })
    }

    pub fn clauses(&self) -> impl Iterator<Item = ClauseView<'_>> {
        (0..self.num_clauses()).map(|row| ClauseView { model: self, row })
    }

    /// Inference-time clause output: 1 iff every included original literal is
    /// present and every included negated literal absent. An empty clause
    /// returns 0 so fully pruned clauses cannot vote.
    pub fn evaluate_clause(&self, clause: usize, x: &BooleanBow) -> Result<bool> {
        self.clause(clause)?.evaluate(x)
    }

    /// Unclipped vote sum for one class: positive-polarity clause outputs
    /// minus negative-polarity ones.
    pub fn class_score_raw(&self, x: &BooleanBow, class: usize) -> Result<i32> {
        self.check_input(x)?;
        self.check_class(class)?;
        let alpha = self.config.clauses_per_class;
        let base = class * alpha;
        let mut score = 0i32;
        for j in 0..alpha {
            let row = base + j;
            if !self.ta.row_is_empty(row) && self.ta.conjunction(row, x) {
                score += if j % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(score)
    }

    /// Vote sum clamped to `[-T, T]`.
    pub fn class_score(&self, x: &BooleanBow, class: usize) -> Result<i32> {
        let t = self.config.vote_clip_t;
        Ok(self.class_score_raw(x, class)?.clamp(-t, t))
    }

    /// Clamped vote sums for all classes.
    pub fn class_scores(&self, x: &BooleanBow) -> Result<Vec<i32>> {
        (0..self.config.num_classes)
            .map(|class| self.class_score(x, class))
            .collect()
    }

    /// Argmax of the clamped class scores; ties go to the lowest class index.
    pub fn predict(&self, x: &BooleanBow) -> Result<usize> {
        let scores = self.class_scores(x)?;
        let mut best = 0usize;
        for (class, &score) in scores.iter().enumerate().skip(1) {
            if score > scores[best] {
                best = class;
            }
        }
        Ok(best)
    }

    /// Vocabulary-word indices included in a clause, original and negated
    /// separately, ascending.
    pub fn clause_literal_indices(&self, clause: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let view = self.clause(clause)?;
        Ok((view.include_original(), view.include_negated()))
    }

    /// Same as [`Model::clause_literal_indices`] but resolved to vocabulary
    /// words. The vocabulary must match the model's binding.
    pub fn clause_literals(
        &self,
        clause: usize,
        vocab: &Vocabulary,
    ) -> Result<(Vec<String>, Vec<String>)> {
        self.check_vocab(vocab)?;
        let (orig, neg) = self.clause_literal_indices(clause)?;
        let resolve = |ids: Vec<usize>| {
            ids.into_iter()
                .map(|k| vocab.word(k).to_string())
                .collect::<Vec<_>>()
        };
        Ok((resolve(orig), resolve(neg)))
    }
}

/// Read-only view over one clause row.
#[derive(Debug, Clone, Copy)]
pub struct ClauseView<'a> {
    model: &'a Model,
    row: usize,
}

impl<'a> ClauseView<'a> {
    pub fn id(&self) -> usize {
        self.row
    }

    pub fn class(&self) -> usize {
        self.row / self.model.config.clauses_per_class
    }

    /// Position within the class, 0-based.
    pub fn index_in_class(&self) -> usize {
        self.row % self.model.config.clauses_per_class
    }

    /// +1 for clauses voting for their class, -1 against.
    pub fn polarity(&self) -> i8 {
        if self.index_in_class().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.model.ta.row_is_empty(self.row)
    }

    /// Number of included literals.
    pub fn literal_count(&self) -> usize {
        self.model.ta.row_include_count(self.row)
    }

    pub fn include_original(&self) -> Vec<usize> {
        self.model.ta.row_included_words(self.row, false)
    }

    pub fn include_negated(&self) -> Vec<usize> {
        self.model.ta.row_included_words(self.row, true)
    }

    /// Inference-time output; see [`Model::evaluate_clause`].
    pub fn evaluate(&self, x: &BooleanBow) -> Result<bool> {
        self.model.check_input(x)?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.model.ta.conjunction(self.row, x))
    }
}

#[cfg(test)]
mod tests;
