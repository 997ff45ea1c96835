//! Tsetlin Automaton state storage.
//!
//! One row per clause, two automata per vocabulary word: column `2k` controls
//! the original literal `x_k`, column `2k + 1` the negated literal `!x_k`.
//! A literal takes part in its clause iff its state is at or above
//! `num_states / 2`.
//!
//! Alongside the raw states the matrix keeps per-row packed include masks
//! (one bitset over the original literals, one over the negated) so clause
//! evaluation is a handful of word-wide ANDs instead of a scan over `2n`
//! states. Every state mutation goes through [`TaStateMatrix::set_state`] or
//! the nudge methods, which keep the masks in sync.

use crate::bits::{words_for, PackedBits};
use crate::bow::BooleanBow;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaStateMatrix {
    rows: usize,
    vocab_size: usize,
    num_states: u32,
    include_threshold: u16,
    /// Row-major, `rows * 2 * vocab_size` entries.
    states: Vec<u16>,
    /// Include masks over original literals, `words_per_row` words per row.
    inc_orig: Vec<u64>,
    /// Include masks over negated literals.
    inc_neg: Vec<u64>,
    words_per_row: usize,
}

impl TaStateMatrix {
    /// Fresh matrix with every automaton one step below the include
    /// threshold, so all clauses start empty.
    pub fn new(rows: usize, vocab_size: usize, num_states: u32) -> Self {
        let include_threshold = (num_states / 2) as u16;
        let words_per_row = words_for(vocab_size);
        TaStateMatrix {
            rows,
            vocab_size,
            num_states,
            include_threshold,
            states: vec![include_threshold - 1; rows * 2 * vocab_size],
            inc_orig: vec![0; rows * words_per_row],
            inc_neg: vec![0; rows * words_per_row],
            words_per_row,
        }
    }

    /// Rebuild from raw states (model files, hand-built tests). Every state
    /// must lie in `[0, num_states - 1]`.
    pub fn from_states(
        rows: usize,
        vocab_size: usize,
        num_states: u32,
        states: Vec<u16>,
    ) -> Result<Self> {
        if states.len() != rows * 2 * vocab_size {
            return Err(Error::ModelFormat(format!(
                "state matrix has {} entries, expected {} ({} rows x {} literals)",
                states.len(),
                rows * 2 * vocab_size,
                rows,
                2 * vocab_size
            )));
        }
        if let Some(bad) = states.iter().find(|&&s| s as u32 >= num_states) {
            return Err(Error::ModelFormat(format!(
                "state {bad} outside [0, {}]",
                num_states - 1
            )));
        }
        let mut matrix = TaStateMatrix::new(rows, vocab_size, num_states);
        matrix.states = states;
        matrix.rebuild_masks();
        Ok(matrix)
    }

    fn rebuild_masks(&mut self) {
        self.inc_orig.iter_mut().for_each(|w| *w = 0);
        self.inc_neg.iter_mut().for_each(|w| *w = 0);
        for row in 0..self.rows {
            for word in 0..self.vocab_size {
                if self.state(row, 2 * word) >= self.include_threshold {
                    self.set_mask_bit(row, word, false, true);
                }
                if self.state(row, 2 * word + 1) >= self.include_threshold {
                    self.set_mask_bit(row, word, true, true);
                }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn include_threshold(&self) -> u16 {
        self.include_threshold
    }

    pub fn states(&self) -> &[u16] {
        &self.states
    }

    #[inline]
    pub fn state(&self, row: usize, col: usize) -> u16 {
        self.states[row * 2 * self.vocab_size + col]
    }

    #[inline]
    pub fn is_included(&self, row: usize, col: usize) -> bool {
        self.state(row, col) >= self.include_threshold
    }

    /// Overwrite one state, keeping the include masks in sync.
    pub fn set_state(&mut self, row: usize, col: usize, value: u16) {
        assert!(
            (value as u32) < self.num_states,
            "state {value} out of range"
        );
        let was = self.state(row, col) >= self.include_threshold;
        let now = value >= self.include_threshold;
        self.states[row * 2 * self.vocab_size + col] = value;
        if was != now {
            self.set_mask_bit(row, col / 2, col % 2 == 1, now);
        }
    }

    /// One step toward Include, saturating at `num_states - 1`.
    #[inline]
    pub fn nudge_up(&mut self, row: usize, col: usize) {
        let idx = row * 2 * self.vocab_size + col;
        let state = self.states[idx];
        if (state as u32) < self.num_states - 1 {
            self.states[idx] = state + 1;
            if state + 1 == self.include_threshold {
                self.set_mask_bit(row, col / 2, col % 2 == 1, true);
            }
        }
    }

    /// One step toward Exclude, saturating at 0.
    #[inline]
    pub fn nudge_down(&mut self, row: usize, col: usize) {
        let idx = row * 2 * self.vocab_size + col;
        let state = self.states[idx];
        if state > 0 {
            self.states[idx] = state - 1;
            if state == self.include_threshold {
                self.set_mask_bit(row, col / 2, col % 2 == 1, false);
            }
        }
    }

    #[inline]
    fn set_mask_bit(&mut self, row: usize, word: usize, negated: bool, value: bool) {
        let mask = if negated {
            &mut self.inc_neg
        } else {
            &mut self.inc_orig
        };
        let slot = row * self.words_per_row + word / 64;
        let bit = 1u64 << (word % 64);
        if value {
            mask[slot] |= bit;
        } else {
            mask[slot] &= !bit;
        }
    }

    fn orig_words(&self, row: usize) -> &[u64] {
        &self.inc_orig[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    fn neg_words(&self, row: usize) -> &[u64] {
        &self.inc_neg[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Raw conjunction of the row's included literals over `x`. An empty row
    /// matches everything and returns `true`; inference-time semantics for
    /// empty clauses are applied by the caller.
    #[inline]
    pub fn conjunction(&self, row: usize, x: &BooleanBow) -> bool {
        debug_assert_eq!(x.len(), self.vocab_size);
        let xw = x.words();
        for (i, (&inc, &neg)) in self
            .orig_words(row)
            .iter()
            .zip(self.neg_words(row))
            .enumerate()
        {
            // Included original literal missing from x, or included negated
            // literal present in x, kills the conjunction.
            if inc & !xw[i] != 0 || neg & xw[i] != 0 {
                return false;
            }
        }
        true
    }

    /// True when the row includes no literal at all.
    pub fn row_is_empty(&self, row: usize) -> bool {
        self.orig_words(row).iter().all(|&w| w == 0) && self.neg_words(row).iter().all(|&w| w == 0)
    }

    /// Number of literals included in the row.
    pub fn row_include_count(&self, row: usize) -> usize {
        let orig: u32 = self.orig_words(row).iter().map(|w| w.count_ones()).sum();
        let neg: u32 = self.neg_words(row).iter().map(|w| w.count_ones()).sum();
        (orig + neg) as usize
    }

    /// Vocabulary-word indices whose original (`negated = false`) or negated
    /// literal is included in the row, ascending.
    pub fn row_included_words(&self, row: usize, negated: bool) -> Vec<usize> {
        let words = if negated {
            self.neg_words(row)
        } else {
            self.orig_words(row)
        };
        let mut bits = PackedBits::zeros(self.vocab_size);
        for (i, &w) in words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                bits.set(i * 64 + bit, true);
                rest &= rest - 1;
            }
        }
        bits.ones().collect()
    }

    /// Number of rows currently including literal column `col`.
    pub fn column_include_count(&self, col: usize) -> u32 {
        let word = col / 2;
        let mask = if col % 2 == 1 {
            &self.inc_neg
        } else {
            &self.inc_orig
        };
        let bit = 1u64 << (word % 64);
        (0..self.rows)
            .filter(|row| mask[row * self.words_per_row + word / 64] & bit != 0)
            .count() as u32
    }

    /// Force every state in literal column `col` to 0, excluding the literal
    /// from all clauses.
    pub fn zero_column(&mut self, col: usize) {
        for row in 0..self.rows {
            self.set_state(row, col, 0);
        }
    }
}
