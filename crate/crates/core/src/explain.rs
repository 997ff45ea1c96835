//! Attention-map extraction through input perturbation.
//!
//! The model's confidence in class `d` on input `x` is the clipped vote sum
//! of `d` minus the summed clipped vote sums of every other class, in
//! absolute value, normalized by the analytic bound `num_classes * T` so it
//! lands in `[0, 1]` independent of the document.
//!
//! Comprehensiveness of a token set is the confidence drop when those tokens
//! are removed; sufficiency is the drop when only those tokens are kept.
//! Removal acts on token positions but reaches the model through the Boolean
//! bag-of-words, so a word's bit only clears once every occurrence is gone.
//!
//! A full attention map scores each position with its leave-one-out
//! perturbation and min-max normalizes over the document; a constant raw
//! vector maps to all zeros.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bow::BooleanBow;
use crate::error::{Error, Result};
use crate::text::Vocabulary;
use crate::tm::Model;

/// Token-aligned importance scores in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttentionMap {
    scores: Vec<f64>,
    mode: MapMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMode {
    Comprehensiveness,
    Sufficiency,
    Human,
}

impl MapMode {
    pub fn tag(&self) -> &'static str {
        match self {
            MapMode::Comprehensiveness => "comprehensiveness",
            MapMode::Sufficiency => "sufficiency",
            MapMode::Human => "human",
        }
    }
}

impl AttentionMap {
    pub fn new(scores: Vec<f64>, mode: MapMode) -> Result<AttentionMap> {
        for &score in &scores {
            if !(0.0..=1.0).contains(&score) {
                return Err(Error::ScoreOutOfRange(score));
            }
        }
        Ok(AttentionMap { scores, mode })
    }

    /// Binary human map from 0/1 annotations.
    pub fn from_ham_bits(bits: &[u8]) -> AttentionMap {
        AttentionMap {
            scores: bits.iter().map(|&b| f64::from(b.min(1))).collect(),
            mode: MapMode::Human,
        }
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }
}

/// A perturbed view of a document: either drop the listed token positions or
/// keep only them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Perturbation {
    Removed(BTreeSet<usize>),
    Kept(BTreeSet<usize>),
}

impl Perturbation {
    pub fn removed(indices: &[usize], token_count: usize) -> Result<Perturbation> {
        Ok(Perturbation::Removed(check_indices(indices, token_count)?))
    }

    pub fn kept(indices: &[usize], token_count: usize) -> Result<Perturbation> {
        Ok(Perturbation::Kept(check_indices(indices, token_count)?))
    }

    /// Tokens surviving the perturbation, in document order.
    pub fn apply<'a>(&self, tokens: &'a [String]) -> Vec<&'a str> {
        let keep = |position: &usize| match self {
            Perturbation::Removed(set) => !set.contains(position),
            Perturbation::Kept(set) => set.contains(position),
        };
        tokens
            .iter()
            .enumerate()
            .filter(|(position, _)| keep(position))
            .map(|(_, token)| token.as_str())
            .collect()
    }
}

fn check_indices(indices: &[usize], token_count: usize) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = indices.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= token_count) {
        return Err(Error::TokenIndexOutOfRange {
            index: bad,
            len: token_count,
        });
    }
    Ok(set)
}

/// Normalized confidence for one class; always in `[0, 1]`.
pub fn model_confidence(model: &Model, x: &BooleanBow, class: usize) -> Result<f64> {
    let scores = model.class_scores(x)?;
    if class >= scores.len() {
        return Err(Error::ClassOutOfRange {
            class,
            num_classes: scores.len(),
        });
    }
    let own = scores[class] as f64;
    let others: f64 = scores
        .iter()
        .enumerate()
        .filter(|(other, _)| *other != class)
        .map(|(_, &score)| score as f64)
        .sum();
    let bound = (model.config().num_classes as i64 * model.config().vote_clip_t as i64) as f64;
    Ok((own - others).abs() / bound)
}

/// Confidence drop for `class` after deleting the listed token positions.
/// Positive means the removed tokens were carrying signal.
pub fn comprehensiveness(
    model: &Model,
    vocab: &Vocabulary,
    tokens: &[String],
    removed: &[usize],
    class: usize,
) -> Result<f64> {
    model.check_vocab(vocab)?;
    let perturbation = Perturbation::removed(removed, tokens.len())?;
    let full = model_confidence(model, &vocab.vectorize(tokens), class)?;
    let reduced = model_confidence(model, &vocab.vectorize(&perturbation.apply(tokens)), class)?;
    Ok(full - reduced)
}

/// Confidence drop for `class` when only the listed token positions remain.
/// Low values mean the kept tokens already suffice.
pub fn sufficiency(
    model: &Model,
    vocab: &Vocabulary,
    tokens: &[String],
    kept: &[usize],
    class: usize,
) -> Result<f64> {
    model.check_vocab(vocab)?;
    let perturbation = Perturbation::kept(kept, tokens.len())?;
    let full = model_confidence(model, &vocab.vectorize(tokens), class)?;
    let reduced = model_confidence(model, &vocab.vectorize(&perturbation.apply(tokens)), class)?;
    Ok(full - reduced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TamMode {
    Comprehensiveness,
    Sufficiency,
}

impl TamMode {
    pub fn map_mode(&self) -> MapMode {
        match self {
            TamMode::Comprehensiveness => MapMode::Comprehensiveness,
            TamMode::Sufficiency => MapMode::Sufficiency,
        }
    }
}

/// Machine attention map for one document: leave-one-out perturbation per
/// token position against the predicted class, min-max normalized over the
/// document. Sufficiency raw scores are kept as-is (not inverted); the
/// sufficiency similarity metric accounts for the polarity.
pub fn tam(
    model: &Model,
    vocab: &Vocabulary,
    tokens: &[String],
    mode: TamMode,
) -> Result<AttentionMap> {
    model.check_vocab(vocab)?;
    if tokens.is_empty() {
        return AttentionMap::new(Vec::new(), mode.map_mode());
    }
    let predicted = model.predict(&vocab.vectorize(tokens))?;
    let raw: Vec<f64> = (0..tokens.len())
        .map(|position| match mode {
            TamMode::Comprehensiveness => {
                comprehensiveness(model, vocab, tokens, &[position], predicted)
            }
            TamMode::Sufficiency => sufficiency(model, vocab, tokens, &[position], predicted),
        })
        .collect::<Result<_>>()?;
    AttentionMap::new(min_max_normalize(&raw), mode.map_mode())
}

/// Min-max to `[0, 1]`; a constant vector (including a singleton) maps to all
/// zeros.
fn min_max_normalize(raw: &[f64]) -> Vec<f64> {
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max <= min {
        return vec![0.0; raw.len()];
    }
    let range = max - min;
    raw.iter()
        .map(|&score| ((score - min) / range).clamp(0.0, 1.0))
        .collect()
}
