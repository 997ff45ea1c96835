//! Training: per-sample Type I / Type II feedback over the clause bank.
//!
//! For every `(x, label)` pair the true class is updated toward firing and
//! one uniformly drawn other class is updated away from it. Whether a clause
//! receives feedback at all is gated by the class vote sum clamped to
//! `[-T, T]`: the farther the sum already is in the desired direction, the
//! fewer clauses are touched.
//!
//! Training is single-threaded and draws from one seeded stream, so a fixed
//! seed reproduces the state matrix bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bow::BooleanBow;
use crate::error::{Error, Result};
use crate::tm::Model;

#[derive(Debug, Clone)]
pub struct TrainOptions {
    pub epochs: usize,
    pub seed: u64,
    /// Stop after any epoch whose training accuracy reaches this level.
    pub early_stop_train_accuracy: Option<f64>,
}

impl TrainOptions {
    pub fn new(epochs: usize, seed: u64) -> Self {
        TrainOptions {
            epochs,
            seed,
            early_stop_train_accuracy: None,
        }
    }
}

/// Per-epoch record of a training run.
#[derive(Debug, Clone)]
pub struct TrainLog {
    /// Training-set accuracy measured after each completed epoch.
    pub epoch_accuracy: Vec<f64>,
}

impl TrainLog {
    pub fn epochs_run(&self) -> usize {
        self.epoch_accuracy.len()
    }

    pub fn final_accuracy(&self) -> Option<f64> {
        self.epoch_accuracy.last().copied()
    }
}

impl Model {
    /// Train on `(input, label)` pairs for up to `options.epochs` passes.
    /// Samples are visited in the given order; epochs of zero leave the model
    /// unchanged.
    pub fn fit(
        &mut self,
        data: &[(BooleanBow, usize)],
        options: &TrainOptions,
    ) -> Result<TrainLog> {
        if data.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let num_classes = self.config().num_classes;
        for (x, label) in data {
            self.check_input_width(x)?;
            if *label >= num_classes {
                return Err(Error::LabelOutOfRange {
                    label: *label,
                    num_classes,
                });
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut log = TrainLog {
            epoch_accuracy: Vec::with_capacity(options.epochs),
        };
        for _ in 0..options.epochs {
            for (x, label) in data {
                self.train_one(x, *label, &mut rng);
            }
            let correct = data
                .iter()
                .filter(|(x, label)| self.predict(x).map(|p| p == *label).unwrap_or(false))
                .count();
            let accuracy = correct as f64 / data.len() as f64;
            log.epoch_accuracy.push(accuracy);
            if options
                .early_stop_train_accuracy
                .is_some_and(|target| accuracy >= target)
            {
                break;
            }
        }
        Ok(log)
    }

    fn check_input_width(&self, x: &BooleanBow) -> Result<()> {
        if x.len() != self.vocab_size() {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size(),
                input: x.len(),
            });
        }
        Ok(())
    }

    fn train_one(&mut self, x: &BooleanBow, label: usize, rng: &mut ChaCha8Rng) {
        self.update_class(x, label, true, rng);
        let num_classes = self.config().num_classes;
        let negative = if num_classes == 2 {
            1 - label
        } else {
            let pick = rng.random_range(0..num_classes - 1);
            if pick >= label {
                pick + 1
            } else {
                pick
            }
        };
        self.update_class(x, negative, false, rng);
    }

    /// Apply one round of feedback to all clauses of `class`. `toward` means
    /// the class should fire on `x` (true class); otherwise it should not.
    fn update_class(&mut self, x: &BooleanBow, class: usize, toward: bool, rng: &mut ChaCha8Rng) {
        let t = self.config().vote_clip_t;
        let alpha = self.config().clauses_per_class;
        let base = class * alpha;

        // Vote sum with the training convention: empty clauses match
        // everything, so fresh models start at full feedback pressure.
        let mut sum = 0i32;
        for j in 0..alpha {
            if self.ta().conjunction(base + j, x) {
                sum += if j % 2 == 0 { 1 } else { -1 };
            }
        }
        let clamped = sum.clamp(-t, t);
        let probability = if toward {
            (t - clamped) as f64 / (2 * t) as f64
        } else {
            (t + clamped) as f64 / (2 * t) as f64
        };

        for j in 0..alpha {
            if rng.random::<f64>() >= probability {
                continue;
            }
            let row = base + j;
            let votes_for = j % 2 == 0;
            if votes_for == toward {
                self.type_i_row(row, x, rng);
            } else {
                self.type_ii_row(row, x);
            }
        }
    }

    /// Type I feedback: reinforce the clause toward matching `x`.
    ///
    /// Clause output uses the training convention (an empty clause fires).
    /// On output 1, literals whose value is 1 move toward Include with
    /// probability `(s - 1) / s` and literals whose value is 0 move toward
    /// Exclude with probability `1 / s`; on output 0 every literal moves
    /// toward Exclude with probability `1 / s`. All steps saturate at the
    /// state-range bounds.
    pub fn type_i_feedback<R: Rng>(
        &mut self,
        clause: usize,
        x: &BooleanBow,
        rng: &mut R,
    ) -> Result<()> {
        self.check_clause_and_input(clause, x)?;
        self.type_i_row(clause, x, rng);
        Ok(())
    }

    /// Type II feedback: on clause output 1 (training convention), every
    /// excluded literal whose value is 0 takes one step toward Include,
    /// planting blockers against false positives. Output 0 changes nothing.
    pub fn type_ii_feedback(&mut self, clause: usize, x: &BooleanBow) -> Result<()> {
        self.check_clause_and_input(clause, x)?;
        self.type_ii_row(clause, x);
        Ok(())
    }

    fn check_clause_and_input(&self, clause: usize, x: &BooleanBow) -> Result<()> {
        if clause >= self.num_clauses() {
            return Err(Error::ClauseOutOfRange {
                clause,
                num_clauses: self.num_clauses(),
            });
        }
        self.check_input_width(x)
    }

    fn type_i_row<R: Rng>(&mut self, row: usize, x: &BooleanBow, rng: &mut R) {
        let s = self.config().specificity_s;
        let p_strengthen = (s - 1.0) / s;
        let p_weaken = 1.0 / s;
        let n = self.vocab_size();
        let fires = self.ta().conjunction(row, x);

        if fires {
            for word in 0..n {
                let present = x.get(word);
                // Original literal column.
                if present {
                    if rng.random::<f64>() < p_strengthen {
                        self.ta_mut().nudge_up(row, 2 * word);
                    }
                } else if rng.random::<f64>() < p_weaken {
                    self.ta_mut().nudge_down(row, 2 * word);
                }
                // Negated literal column has the complementary value.
                if !present {
                    if rng.random::<f64>() < p_strengthen {
                        self.ta_mut().nudge_up(row, 2 * word + 1);
                    }
                } else if rng.random::<f64>() < p_weaken {
                    self.ta_mut().nudge_down(row, 2 * word + 1);
                }
            }
        } else {
            for col in 0..2 * n {
                if rng.random::<f64>() < p_weaken {
                    self.ta_mut().nudge_down(row, col);
                }
            }
        }
    }

    fn type_ii_row(&mut self, row: usize, x: &BooleanBow) {
        if !self.ta().conjunction(row, x) {
            return;
        }
        let threshold = self.ta().include_threshold();
        let n = self.vocab_size();
        for word in 0..n {
            let present = x.get(word);
            if !present && self.ta().state(row, 2 * word) < threshold {
                self.ta_mut().nudge_up(row, 2 * word);
            }
            if present && self.ta().state(row, 2 * word + 1) < threshold {
                self.ta_mut().nudge_up(row, 2 * word + 1);
            }
        }
    }
}
