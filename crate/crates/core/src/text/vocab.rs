//! Vocabulary construction and Boolean bag-of-words vectorization.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::bow::BooleanBow;
use crate::error::{Error, Result};

/// Word-to-index map with a stable fingerprint over the ordered word list.
/// Indices are dense in `[0, n)`, ordered by descending corpus frequency and
/// then lexicographically.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
    fingerprint: u64,
}

impl Vocabulary {
    /// Build from a flat token stream, keeping the `max_size` most frequent
    /// words. Frequency ties break lexicographically.
    pub fn build<'a, I>(tokens: I, max_size: usize) -> Result<Vocabulary>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for token in tokens {
            *counts.entry(token).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut ranked: Vec<(&str, u64)> = counts.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        ranked.truncate(max_size);
        Ok(Vocabulary::from_words(
            ranked.into_iter().map(|(w, _)| w.to_string()).collect(),
        ))
    }

    /// Use an explicit ordered word list as the vocabulary.
    pub fn from_words(words: Vec<String>) -> Vocabulary {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let fingerprint = fingerprint_words(&words);
        Vocabulary {
            words,
            index,
            fingerprint,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Index of `word`, or `None` for out-of-vocabulary words.
    pub fn get(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn word(&self, index: usize) -> &str {
        &self.words[index]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Presence vector over this vocabulary: bit `k` set iff word `k` occurs
    /// at least once in `tokens`. Unknown tokens are ignored.
    pub fn vectorize<S: AsRef<str>>(&self, tokens: &[S]) -> BooleanBow {
        let mut bow = BooleanBow::zeros(self.len());
        for token in tokens {
            if let Some(k) = self.get(token.as_ref()) {
                bow.set(k, true);
            }
        }
        bow
    }

    /// Write the word list, one per line, under a fingerprint header line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "# fingerprint: {:016x}", self.fingerprint)?;
        for word in &self.words {
            writeln!(out, "{word}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Load a word list written by [`Vocabulary::save`], verifying the
    /// recorded fingerprint against the recomputed one.
    pub fn load(path: &Path) -> Result<Vocabulary> {
        let reader = BufReader::new(File::open(path)?);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::ModelFormat("empty vocabulary file".into()))?;
        let hex = header
            .strip_prefix("# fingerprint: ")
            .ok_or_else(|| Error::ModelFormat("missing vocabulary fingerprint header".into()))?;
        let expected = u64::from_str_radix(hex.trim(), 16)
            .map_err(|_| Error::ModelFormat(format!("bad fingerprint {hex:?}")))?;
        let words: Vec<String> = lines.collect::<std::io::Result<_>>()?;
        let vocab = Vocabulary::from_words(words);
        if vocab.fingerprint != expected {
            return Err(Error::FingerprintMismatch {
                expected,
                actual: vocab.fingerprint,
            });
        }
        Ok(vocab)
    }
}

/// FNV-1a over the ordered word list, with a separator byte between words so
/// `["ab", "c"]` and `["a", "bc"]` hash differently.
fn fingerprint_words(words: &[String]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for word in words {
        for &byte in word.as_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
