//! Planted-keyword synthetic task.
//!
//! Two balanced classes over a 200-word universe: 5 keywords per class, 50
//! noise words injected uniformly into documents of both classes, and 140
//! rarer background words. Each document of 10 to 30 tokens carries 1 to 3
//! distinct keywords of its own class and never a keyword of the other, so
//! the task is perfectly separable and every token has a ground-truth
//! importance bit: 1 on own-class keyword positions, 0 elsewhere. That mask
//! ships as the single human attention map of each document.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::text::{Dataset, Document, Split};

pub const CLASS_A_KEYWORDS: [&str; 5] = ["superb", "delicious", "friendly", "cozy", "spotless"];
pub const CLASS_B_KEYWORDS: [&str; 5] = ["terrible", "bland", "rude", "filthy", "overpriced"];
pub const NOISE_WORDS: usize = 50;
pub const BACKGROUND_WORDS: usize = 140;

pub const LABELS: [&str; 2] = ["positive", "negative"];

#[derive(Debug, Clone)]
pub struct SyntheticSpec {
    pub train_documents: usize,
    pub test_documents: usize,
    pub min_tokens: usize,
    pub max_tokens: usize,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            train_documents: 2000,
            test_documents: 400,
            min_tokens: 10,
            max_tokens: 30,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticData {
    pub train: Dataset,
    pub test: Dataset,
}

pub fn keywords_for(class: usize) -> &'static [&'static str; 5] {
    if class == 0 {
        &CLASS_A_KEYWORDS
    } else {
        &CLASS_B_KEYWORDS
    }
}

pub fn is_keyword(word: &str) -> bool {
    CLASS_A_KEYWORDS.contains(&word) || CLASS_B_KEYWORDS.contains(&word)
}

pub fn noise_word(index: usize) -> String {
    format!("noise{index:02}")
}

pub fn background_word(index: usize) -> String {
    format!("word{index:03}")
}

/// Generate with the default spec at the given seed.
pub fn generate(seed: u64) -> SyntheticData {
    generate_with(&SyntheticSpec {
        seed,
        ..SyntheticSpec::default()
    })
}

pub fn generate_with(spec: &SyntheticSpec) -> SyntheticData {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let train = make_split(spec, spec.train_documents, Split::Train, &mut rng);
    let test = make_split(spec, spec.test_documents, Split::Custom, &mut rng);
    SyntheticData { train, test }
}

fn make_split(spec: &SyntheticSpec, count: usize, split: Split, rng: &mut ChaCha8Rng) -> Dataset {
    let documents = (0..count)
        .map(|i| make_document(spec, i % 2, rng))
        .collect();
    Dataset {
        documents,
        split,
        label_names: LABELS.iter().map(|l| l.to_string()).collect(),
    }
}

fn make_document(spec: &SyntheticSpec, class: usize, rng: &mut ChaCha8Rng) -> Document {
    let length = rng.random_range(spec.min_tokens..=spec.max_tokens);
    let keyword_count = rng.random_range(1..=3.min(length));

    let mut pool = keywords_for(class).to_vec();
    pool.shuffle(rng);
    let mut tokens: Vec<String> = pool[..keyword_count]
        .iter()
        .map(|w| w.to_string())
        .collect();

    for _ in keyword_count..length {
        if rng.random::<f64>() < 0.5 {
            tokens.push(noise_word(rng.random_range(0..NOISE_WORDS)));
        } else {
            tokens.push(background_word(rng.random_range(0..BACKGROUND_WORDS)));
        }
    }
    tokens.shuffle(rng);

    let mask: Vec<u8> = tokens
        .iter()
        .map(|t| u8::from(keywords_for(class).contains(&t.as_str())))
        .collect();

    let text = tokens.join(" ");
    let mut doc = Document::new(text, class);
    debug_assert_eq!(doc.tokens, tokens);
    doc.hams.push(mask);
    doc
}
