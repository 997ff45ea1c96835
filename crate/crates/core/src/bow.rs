//! Boolean bag-of-words input vectors.

use crate::bits::PackedBits;
use crate::error::{Error, Result};

/// Binary presence vector over a vocabulary: bit `k` is set iff vocabulary
/// word `k` occurs in the document. Length always equals the vocabulary size
/// it was built against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanBow {
    bits: PackedBits,
}

impl BooleanBow {
    /// All-zero vector for a vocabulary of `n` words.
    pub fn zeros(n: usize) -> Self {
        BooleanBow {
            bits: PackedBits::zeros(n),
        }
    }

    /// Build from explicit 0/1 entries. Rejects anything else.
    pub fn from_bits(entries: &[u8]) -> Result<Self> {
        let mut bow = BooleanBow::zeros(entries.len());
        for (k, &bit) in entries.iter().enumerate() {
            match bit {
                0 => {}
                1 => bow.bits.set(k, true),
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "bag-of-words entry {k} is {other}, expected 0 or 1"
                    )))
                }
            }
        }
        Ok(bow)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, word: usize) -> bool {
        self.bits.get(word)
    }

    pub fn set(&mut self, word: usize, present: bool) {
        self.bits.set(word, present);
    }

    pub fn words(&self) -> &[u64] {
        self.bits.words()
    }

    /// Indices of present words in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_bits_accepts_binary_only() {
        let bow = BooleanBow::from_bits(&[1, 0, 1]).unwrap();
        assert_eq!(bow.len(), 3);
        assert!(bow.get(0) && !bow.get(1) && bow.get(2));
        assert!(BooleanBow::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn zeros_has_no_ones() {
        let bow = BooleanBow::zeros(100);
        assert_eq!(bow.count_ones(), 0);
        assert_eq!(bow.ones().count(), 0);
    }
}
