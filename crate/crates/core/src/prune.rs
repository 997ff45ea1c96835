//! Post-hoc clause pruning.
//!
//! Literals are ranked by how many clauses include them, across all classes
//! of the trained model. Pruning takes the least frequent fraction of the
//! ranked literals and forces their state columns to 0, excluding them from
//! every clause. Literals included nowhere are not ranked: pruning them would
//! be a no-op and would dilute the requested percentage.
//!
//! Everything here is a pure function over an immutable input model; `prune`
//! returns a new model and leaves its argument untouched.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tm::Model;

/// Include-counts per literal column: entry `j` is the number of clauses
/// (across all classes) currently including literal `j`. Column `2k` is the
/// original literal of vocabulary word `k`, column `2k + 1` the negated one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralFrequencyTable {
    counts: Vec<u32>,
}

impl LiteralFrequencyTable {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, literal: usize) -> u32 {
        self.counts[literal]
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of all include decisions in the model.
    pub fn total_includes(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    #[cfg(test)]
    pub(crate) fn from_counts(counts: Vec<u32>) -> Self {
        LiteralFrequencyTable { counts }
    }
}

/// Exact include-counts of every literal over all clauses.
pub fn literal_frequencies(model: &Model) -> LiteralFrequencyTable {
    let columns = 2 * model.vocab_size();
    let counts = (0..columns)
        .map(|col| model.ta().column_include_count(col))
        .collect();
    LiteralFrequencyTable { counts }
}

/// Literal ids ordered least frequent first; ties break toward the lower id.
/// Literals with count 0 are not ranked.
pub fn rank_literals(table: &LiteralFrequencyTable) -> Vec<usize> {
    let mut ranked: Vec<usize> = (0..table.len()).filter(|&j| table.count(j) > 0).collect();
    ranked.sort_by_key(|&j| (table.count(j), j));
    ranked
}

/// What a prune did: which literals were zeroed and how much each clause
/// shrank.
#[derive(Debug, Clone, Serialize)]
pub struct PruneReport {
    /// Fingerprint of the vocabulary the model is bound to.
    pub vocab_fingerprint: String,
    /// Fraction of ranked literals requested for removal.
    pub fraction: f64,
    /// Literal column ids whose states were forced to 0, in prune order.
    pub pruned_literals: Vec<usize>,
    pub clause_literal_counts_before: Vec<usize>,
    pub clause_literal_counts_after: Vec<usize>,
    /// Per-clause percent reduction in literal count; 0 for clauses that were
    /// already empty.
    pub clause_reduction_pct: Vec<f64>,
}

impl PruneReport {
    pub fn total_literals_before(&self) -> usize {
        self.clause_literal_counts_before.iter().sum()
    }

    pub fn total_literals_after(&self) -> usize {
        self.clause_literal_counts_after.iter().sum()
    }
}

/// Zero out the least frequent `fraction` of ranked literals. The number
/// removed is `floor(fraction * R)` with `R` the ranked-literal count; the
/// input model is left unmodified.
pub fn prune(model: &Model, fraction: f64) -> Result<(Model, PruneReport)> {
    if !(0.0..=0.5).contains(&fraction) {
        return Err(Error::InvalidFraction(fraction));
    }
    let table = literal_frequencies(model);
    let ranked = rank_literals(&table);
    // Nudge before flooring so fractions like 0.3 * 10 don't land one short
    // of the exact product.
    let target = ((fraction * ranked.len() as f64) + 1e-9).floor() as usize;
    let pruned_literals: Vec<usize> = ranked.into_iter().take(target).collect();

    let before: Vec<usize> = (0..model.num_clauses())
        .map(|row| model.ta().row_include_count(row))
        .collect();

    let mut pruned = model.clone();
    for &literal in &pruned_literals {
        pruned.ta_mut().zero_column(literal);
    }

    let after: Vec<usize> = (0..pruned.num_clauses())
        .map(|row| pruned.ta().row_include_count(row))
        .collect();
    let reduction = before
        .iter()
        .zip(&after)
        .map(|(&b, &a)| {
            if b == 0 {
                0.0
            } else {
                100.0 * (b - a) as f64 / b as f64
            }
        })
        .collect();

    let report = PruneReport {
        vocab_fingerprint: format!("{:016x}", model.vocab_fingerprint()),
        fraction,
        pruned_literals,
        clause_literal_counts_before: before,
        clause_literal_counts_after: after,
        clause_reduction_pct: reduction,
    };
    Ok((pruned, report))
}

/// Prune the same base model at each fraction independently (not
/// cumulatively).
pub fn prune_sweep(model: &Model, fractions: &[f64]) -> Result<Vec<(f64, Model, PruneReport)>> {
    fractions
        .iter()
        .map(|&fraction| prune(model, fraction).map(|(m, r)| (fraction, m, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{blank_model, random_model, set_include};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fresh_model_has_zero_table() {
        let model = blank_model(2, 4);
        let table = literal_frequencies(&model);
        assert!(table.counts().iter().all(|&c| c == 0));
        assert_eq!(table.total_includes(), 0);
        assert!(rank_literals(&table).is_empty());
    }

    #[test]
    fn counts_match_hand_built_model() {
        // Literal 2 (original form of word 1) included in 3 of 4 clauses.
        let mut model = blank_model(2, 4);
        for row in [0, 1, 3] {
            set_include(&mut model, row, 2);
        }
        let table = literal_frequencies(&model);
        assert_eq!(table.count(2), 3);
        assert_eq!(table.total_includes(), 3);
    }

    #[test]
    fn counts_equal_naive_double_loop() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let model = random_model(&mut rng, 2, 6, 9);
            let table = literal_frequencies(&model);
            for col in 0..2 * model.vocab_size() {
                let naive = (0..model.num_clauses())
                    .filter(|&row| model.ta().is_included(row, col))
                    .count() as u32;
                assert_eq!(table.count(col), naive);
            }
        }
    }

    #[test]
    fn ranking_ascending_with_id_ties() {
        let table = LiteralFrequencyTable::from_counts(vec![5, 1, 3]);
        assert_eq!(rank_literals(&table), vec![1, 2, 0]);
        let tied = LiteralFrequencyTable::from_counts(vec![2, 2]);
        assert_eq!(rank_literals(&tied), vec![0, 1]);
    }

    #[test]
    fn ranking_skips_zero_counts() {
        let table = LiteralFrequencyTable::from_counts(vec![0, 4, 0, 1]);
        assert_eq!(rank_literals(&table), vec![3, 1]);
    }

    #[test]
    fn ranking_matches_reference_sort() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let counts: Vec<u32> = (0..40).map(|_| rng.random_range(0..5)).collect();
            let table = LiteralFrequencyTable::from_counts(counts.clone());
            let mut reference: Vec<(u32, usize)> = counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(j, &c)| (c, j))
                .collect();
            reference.sort();
            let expected: Vec<usize> = reference.into_iter().map(|(_, j)| j).collect();
            assert_eq!(rank_literals(&table), expected);
        }
    }

    #[test]
    fn zero_fraction_is_identity() {
        let mut rng = StdRng::seed_from_u64(3);
        let model = random_model(&mut rng, 2, 4, 8);
        let (pruned, report) = prune(&model, 0.0).unwrap();
        assert_eq!(pruned, model);
        assert!(report.pruned_literals.is_empty());
    }

    #[test]
    fn quarter_fraction_takes_least_frequent() {
        // Counts [1, 4, 4, 9] over four ranked literals: floor(0.25 * 4) = 1,
        // so only the count-1 literal goes.
        let mut model = blank_model(6, 2);
        set_include(&mut model, 0, 0);
        for row in 0..4 {
            set_include(&mut model, row, 1);
            set_include(&mut model, row, 2);
        }
        for row in 0..9 {
            set_include(&mut model, row, 3);
        }
        let (_, report) = prune(&model, 0.25).unwrap();
        assert_eq!(report.pruned_literals, vec![0]);
    }

    #[test]
    fn pruned_ids_recount_to_zero() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..10 {
            let model = random_model(&mut rng, 2, 6, 10);
            let (pruned, report) = prune(&model, 0.4).unwrap();
            let recount = literal_frequencies(&pruned);
            for &literal in &report.pruned_literals {
                assert_eq!(recount.count(literal), 0);
            }
        }
    }

    #[test]
    fn sweep_is_independent_and_nested() {
        let mut rng = StdRng::seed_from_u64(9);
        let model = random_model(&mut rng, 2, 8, 12);
        let sweep = prune_sweep(&model, &[0.05, 0.40]).unwrap();
        assert_eq!(sweep.len(), 2);
        let small: std::collections::HashSet<_> =
            sweep[0].2.pruned_literals.iter().copied().collect();
        let large: std::collections::HashSet<_> =
            sweep[1].2.pruned_literals.iter().copied().collect();
        assert!(small.is_subset(&large));

        let base = prune_sweep(&model, &[0.0]).unwrap();
        assert_eq!(base[0].1, model);
    }

    #[test]
    fn fraction_bounds_enforced() {
        let model = blank_model(2, 2);
        assert!(matches!(
            prune(&model, 0.51),
            Err(Error::InvalidFraction(_))
        ));
        assert!(matches!(
            prune(&model, -0.1),
            Err(Error::InvalidFraction(_))
        ));
        assert!(matches!(
            prune(&model, f64::NAN),
            Err(Error::InvalidFraction(_))
        ));
        assert!(prune(&model, 0.5).is_ok());
    }

    #[test]
    fn dense_clause_sheds_a_large_share_at_quarter_pruning() {
        // A clause stuffed with literals nobody else uses, next to clauses
        // sharing moderately frequent literals: quarter pruning should strip
        // the dense clause of a large share of its literals (the rare ones)
        // while the widely shared ones survive.
        let rows = 8;
        let mut model = blank_model(4, 160); // 8 clauses over 160 words

        // 20 common literals included by every clause (count 8).
        for row in 0..rows {
            for word in 0..20 {
                set_include(&mut model, row, 2 * word);
            }
        }
        // Clause 0 additionally carries 30 literals of its own (count 1).
        for word in 20..50 {
            set_include(&mut model, 0, 2 * word);
        }
        // Rows 1..7 share 105 further literals pairwise (count 2).
        let mut word = 50;
        for first in 1..rows {
            for second in (first + 1)..rows {
                for _ in 0..5 {
                    set_include(&mut model, first, 2 * word);
                    set_include(&mut model, second, 2 * word);
                    word += 1;
                }
            }
        }
        assert_eq!(word, 155);

        // Ranked pool: 30 + 105 + 20 = 155 literals; a quarter is 38, which
        // covers all 30 of clause 0's singletons plus 8 shared ones.
        let (_, report) = prune(&model, 0.25).unwrap();
        assert_eq!(report.pruned_literals.len(), 38);
        assert_eq!(report.clause_literal_counts_before[0], 50);
        let reduction = report.clause_reduction_pct[0];
        assert!(
            (30.0..=70.0).contains(&reduction),
            "dense clause reduced by {reduction}%"
        );
    }

    #[test]
    fn idempotent_after_zero_fraction_reprune() {
        let mut rng = StdRng::seed_from_u64(13);
        let model = random_model(&mut rng, 2, 4, 7);
        let (once, _) = prune(&model, 0.3).unwrap();
        let (again, _) = prune(&once, 0.0).unwrap();
        assert_eq!(once, again);
    }
}
