//! Hand-built models, random state matrices, and naive reference oracles for
//! tests. The oracles read raw automaton states and walk literal sets with
//! plain loops, staying independent of the packed-mask evaluation path they
//! are used to check.
//!
//! Compiled only for tests (enabled through the `test-support` feature).

use rand::Rng;

use crate::bow::BooleanBow;
use crate::text::Vocabulary;
use crate::tm::{Model, ModelConfig, TaStateMatrix};

/// Vocabulary of `n` systematic words `w000`, `w001`, ...
pub fn test_vocab(n: usize) -> Vocabulary {
    Vocabulary::from_words((0..n).map(|i| format!("w{i:03}")).collect())
}

fn config(num_classes: usize, clauses_per_class: usize) -> ModelConfig {
    ModelConfig {
        num_classes,
        clauses_per_class,
        ..ModelConfig::default()
    }
}

/// Two-class model with every clause empty (fresh automata).
pub fn blank_model(clauses_per_class: usize, vocab_size: usize) -> Model {
    Model::new(config(2, clauses_per_class), &test_vocab(vocab_size)).unwrap()
}

/// Force one automaton to Include (state = threshold).
pub fn set_include(model: &mut Model, row: usize, col: usize) {
    let threshold = model.ta().include_threshold();
    set_state(model, row, col, threshold);
}

/// Force one automaton to Exclude (state = threshold - 1).
pub fn set_exclude(model: &mut Model, row: usize, col: usize) {
    let threshold = model.ta().include_threshold();
    set_state(model, row, col, threshold - 1);
}

pub fn set_state(model: &mut Model, row: usize, col: usize, value: u16) {
    model.ta_mut().set_state(row, col, value);
}

/// Model with uniformly random automaton states.
pub fn random_model<R: Rng>(
    rng: &mut R,
    num_classes: usize,
    clauses_per_class: usize,
    vocab_size: usize,
) -> Model {
    let cfg = config(num_classes, clauses_per_class);
    let rows = cfg.total_clauses();
    let states: Vec<u16> = (0..rows * 2 * vocab_size)
        .map(|_| rng.random_range(0..cfg.num_states) as u16)
        .collect();
    let ta = TaStateMatrix::from_states(rows, vocab_size, cfg.num_states, states).unwrap();
    Model::from_parts(cfg, ta, test_vocab(vocab_size).fingerprint()).unwrap()
}

/// Random models tend to include ~half of all literals, which makes almost
/// every clause unsatisfiable. This variant includes each literal with a
/// small probability so clause outputs actually vary.
pub fn sparse_random_model<R: Rng>(
    rng: &mut R,
    num_classes: usize,
    clauses_per_class: usize,
    vocab_size: usize,
    include_probability: f64,
) -> Model {
    let cfg = config(num_classes, clauses_per_class);
    let rows = cfg.total_clauses();
    let threshold = cfg.include_threshold();
    let states: Vec<u16> = (0..rows * 2 * vocab_size)
        .map(|_| {
            if rng.random::<f64>() < include_probability {
                rng.random_range(threshold as u32..cfg.num_states) as u16
            } else {
                rng.random_range(0..threshold as u32) as u16
            }
        })
        .collect();
    let ta = TaStateMatrix::from_states(rows, vocab_size, cfg.num_states, states).unwrap();
    Model::from_parts(cfg, ta, test_vocab(vocab_size).fingerprint()).unwrap()
}

pub fn random_bow<R: Rng>(rng: &mut R, n: usize) -> BooleanBow {
    let bits: Vec<u8> = (0..n).map(|_| rng.random_range(0..2u8)).collect();
    BooleanBow::from_bits(&bits).unwrap()
}

/// Bag-of-words for bit index `i` of an exhaustive sweep over `n` words.
pub fn bow_from_counter(counter: u64, n: usize) -> BooleanBow {
    let bits: Vec<u8> = (0..n).map(|k| (counter >> k & 1) as u8).collect();
    BooleanBow::from_bits(&bits).unwrap()
}

/// Include sets of one clause read straight from the raw states.
pub fn oracle_literal_sets(model: &Model, row: usize) -> (Vec<usize>, Vec<usize>) {
    let threshold = model.ta().include_threshold();
    let n = model.vocab_size();
    let mut orig = Vec::new();
    let mut neg = Vec::new();
    for word in 0..n {
        if model.ta().state(row, 2 * word) >= threshold {
            orig.push(word);
        }
        if model.ta().state(row, 2 * word + 1) >= threshold {
            neg.push(word);
        }
    }
    (orig, neg)
}

/// Brute-force conjunction over the include sets; empty clauses return false
/// (the inference-time convention).
pub fn oracle_clause_output(model: &Model, row: usize, x: &BooleanBow) -> bool {
    let (orig, neg) = oracle_literal_sets(model, row);
    if orig.is_empty() && neg.is_empty() {
        return false;
    }
    orig.iter().all(|&k| x.get(k)) && neg.iter().all(|&k| !x.get(k))
}

/// Brute-force unclipped vote sum: odd 1-based clause positions vote +1,
/// even -1.
pub fn oracle_class_score_raw(model: &Model, x: &BooleanBow, class: usize) -> i32 {
    let alpha = model.config().clauses_per_class;
    let mut score = 0;
    for j in 0..alpha {
        if oracle_clause_output(model, class * alpha + j, x) {
            score += if j % 2 == 0 { 1 } else { -1 };
        }
    }
    score
}

/// Brute-force prediction: argmax of clipped scores, ties to the lowest
/// class index.
pub fn oracle_predict(model: &Model, x: &BooleanBow) -> usize {
    let t = model.config().vote_clip_t;
    let scores: Vec<i32> = (0..model.config().num_classes)
        .map(|class| oracle_class_score_raw(model, x, class).clamp(-t, t))
        .collect();
    let mut best = 0;
    for (class, &score) in scores.iter().enumerate() {
        if score > scores[best] {
            best = class;
        }
    }
    best
}
