use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bow::BooleanBow;
use crate::error::Error;
use crate::test_support::{
    blank_model, bow_from_counter, oracle_class_score_raw, oracle_clause_output, oracle_predict,
    random_bow, set_include, sparse_random_model, test_vocab,
};
use crate::tm::{Model, ModelConfig, TrainOptions};

fn bow(bits: &[u8]) -> BooleanBow {
    BooleanBow::from_bits(bits).unwrap()
}

#[test]
fn clause_matches_literal_definition() {
    // I = {terrible}, negated = {good}: fires iff terrible present, good absent.
    let vocab = crate::text::Vocabulary::from_words(vec!["terrible".into(), "good".into()]);
    let mut model = Model::new(
        ModelConfig {
            clauses_per_class: 2,
            ..ModelConfig::default()
        },
        &vocab,
    )
    .unwrap();
    set_include(&mut model, 0, 0); // terrible
    set_include(&mut model, 0, 3); // !good
    assert!(model.evaluate_clause(0, &bow(&[1, 0])).unwrap());
    assert!(!model.evaluate_clause(0, &bow(&[1, 1])).unwrap());
    assert!(!model.evaluate_clause(0, &bow(&[0, 0])).unwrap());
}

#[test]
fn empty_clause_is_zero_at_inference() {
    let model = blank_model(2, 4);
    for counter in 0..16u64 {
        assert!(!model
            .evaluate_clause(0, &bow_from_counter(counter, 4))
            .unwrap());
    }
}

#[test]
fn clause_rejects_width_mismatch() {
    let model = blank_model(2, 4);
    assert!(matches!(
        model.evaluate_clause(0, &bow(&[1, 0])),
        Err(Error::DimensionMismatch {
            expected: 4,
            input: 2
        })
    ));
    assert!(matches!(
        model.evaluate_clause(99, &bow(&[0, 0, 0, 0])),
        Err(Error::ClauseOutOfRange { clause: 99, .. })
    ));
}

#[test]
fn thousand_random_clauses_match_conjunction_oracle() {
    let mut rng = StdRng::seed_from_u64(101);
    let n = 16;
    for _ in 0..125 {
        // 8 clauses per model, 125 models = 1000 random clauses.
        let model = sparse_random_model(&mut rng, 2, 4, n, 0.15);
        for _ in 0..64 {
            let x = random_bow(&mut rng, n);
            for clause in 0..model.num_clauses() {
                assert_eq!(
                    model.evaluate_clause(clause, &x).unwrap(),
                    oracle_clause_output(&model, clause, &x),
                );
            }
        }
    }
}

#[test]
fn clause_matches_oracle_exhaustively_up_to_n16() {
    let mut rng = StdRng::seed_from_u64(102);
    for n in [4usize, 12, 16] {
        let model = sparse_random_model(&mut rng, 2, 4, n, 0.2);
        for counter in 0..(1u64 << n) {
            let x = bow_from_counter(counter, n);
            for clause in 0..model.num_clauses() {
                assert_eq!(
                    model.evaluate_clause(clause, &x).unwrap(),
                    oracle_clause_output(&model, clause, &x),
                );
            }
        }
    }
}

#[test]
fn class_score_counts_polarity_votes() {
    // Four clauses per class, T = 10. Both positive clauses fire, the
    // negative ones cannot: score +2.
    let mut model = Model::new(
        ModelConfig {
            clauses_per_class: 4,
            vote_clip_t: 10,
            ..ModelConfig::default()
        },
        &test_vocab(4),
    )
    .unwrap();
    set_include(&mut model, 0, 0);
    set_include(&mut model, 2, 0);
    set_include(&mut model, 1, 2); // negative clause wants w001
    set_include(&mut model, 3, 2);
    let x = bow(&[1, 0, 0, 0]);
    assert_eq!(model.class_score(&x, 0).unwrap(), 2);

    // No clause fires anywhere on the empty input.
    assert_eq!(model.class_score(&BooleanBow::zeros(4), 0).unwrap(), 0);
    assert!(matches!(
        model.class_score(&x, 5),
        Err(Error::ClassOutOfRange { class: 5, .. })
    ));
}

#[test]
fn raw_score_matches_brute_force_sum() {
    let mut rng = StdRng::seed_from_u64(202);
    for _ in 0..30 {
        let model = sparse_random_model(&mut rng, 3, 6, 10, 0.1);
        for _ in 0..50 {
            let x = random_bow(&mut rng, 10);
            for class in 0..3 {
                assert_eq!(
                    model.class_score_raw(&x, class).unwrap(),
                    oracle_class_score_raw(&model, &x, class),
                );
            }
        }
    }
}

#[test]
fn scores_are_clipped_and_bounded_by_alpha_half() {
    let mut rng = StdRng::seed_from_u64(203);
    let model = sparse_random_model(&mut rng, 2, 8, 6, 0.05);
    let t = model.config().vote_clip_t;
    for counter in 0..64u64 {
        let x = bow_from_counter(counter, 6);
        let raw = model.class_score_raw(&x, 0).unwrap();
        assert!(raw.abs() <= 4); // alpha / 2
        let clipped = model.class_score(&x, 0).unwrap();
        assert_eq!(clipped, raw.clamp(-t, t));
    }
}

#[test]
fn predict_breaks_ties_toward_lower_class() {
    // Hand-built scores [3, -1] and [2, 2].
    let mut model = Model::new(
        ModelConfig {
            clauses_per_class: 8,
            ..ModelConfig::default()
        },
        &test_vocab(2),
    )
    .unwrap();
    // Class 0: three positive clauses fire on x_0.
    for j in [0, 2, 4] {
        set_include(&mut model, j, 0);
    }
    // Class 1: one negative clause fires on x_0.
    set_include(&mut model, 8 + 1, 0);
    let x = bow(&[1, 0]);
    assert_eq!(model.class_score(&x, 0).unwrap(), 3);
    assert_eq!(model.class_score(&x, 1).unwrap(), -1);
    assert_eq!(model.predict(&x).unwrap(), 0);

    // Tie: two positive clauses fire in each class.
    let mut tied = Model::new(
        ModelConfig {
            clauses_per_class: 4,
            ..ModelConfig::default()
        },
        &test_vocab(2),
    )
    .unwrap();
    for row in [0, 2, 4, 6] {
        set_include(&mut tied, row, 0);
    }
    assert_eq!(tied.class_score(&x, 0).unwrap(), 2);
    assert_eq!(tied.class_score(&x, 1).unwrap(), 2);
    assert_eq!(tied.predict(&x).unwrap(), 0);
}

#[test]
fn predict_matches_oracle_exhaustively() {
    let mut rng = StdRng::seed_from_u64(303);
    let n = 8;
    for _ in 0..20 {
        let model = sparse_random_model(&mut rng, 2, 4, n, 0.15);
        for counter in 0..(1u64 << n) {
            let x = bow_from_counter(counter, n);
            assert_eq!(model.predict(&x).unwrap(), oracle_predict(&model, &x));
        }
    }
}

#[test]
fn predict_invariant_under_same_polarity_clause_permutation() {
    let mut rng = StdRng::seed_from_u64(404);
    let model = sparse_random_model(&mut rng, 2, 6, 8, 0.12);

    // Swap two positive-polarity clause rows of class 0 (rows 0 and 2) by
    // rebuilding the state matrix with the rows exchanged.
    let width = 2 * model.vocab_size();
    let mut states = model.ta().states().to_vec();
    for offset in 0..width {
        states.swap(offset, 2 * width + offset);
    }
    let swapped = Model::from_parts(
        model.config().clone(),
        crate::tm::TaStateMatrix::from_states(
            model.num_clauses(),
            model.vocab_size(),
            model.config().num_states,
            states,
        )
        .unwrap(),
        model.vocab_fingerprint(),
    )
    .unwrap();

    for counter in 0..256u64 {
        let x = bow_from_counter(counter, 8);
        assert_eq!(model.predict(&x).unwrap(), swapped.predict(&x).unwrap());
    }
}

#[test]
fn clause_literals_fresh_and_hand_built() {
    let model = blank_model(2, 8);
    assert_eq!(model.clause_literal_indices(0).unwrap(), (vec![], vec![]));

    let mut built = blank_model(2, 8);
    crate::test_support::set_state(&mut built, 1, 2 * 3, 200);
    crate::test_support::set_state(&mut built, 1, 2 * 7 + 1, 255);
    assert_eq!(built.clause_literal_indices(1).unwrap(), (vec![3], vec![7]));

    let vocab = test_vocab(8);
    let (orig, neg) = built.clause_literals(1, &vocab).unwrap();
    assert_eq!(orig, vec!["w003"]);
    assert_eq!(neg, vec!["w007"]);

    let wrong_vocab = test_vocab(9);
    assert!(matches!(
        built.clause_literals(1, &wrong_vocab),
        Err(Error::FingerprintMismatch { .. })
    ));
}

#[test]
fn fit_zero_epochs_changes_nothing() {
    let mut model = blank_model(4, 6);
    let before = model.clone();
    let data = vec![(bow(&[1, 0, 0, 1, 0, 0]), 0), (bow(&[0, 1, 1, 0, 0, 0]), 1)];
    let log = model.fit(&data, &TrainOptions::new(0, 42)).unwrap();
    assert_eq!(log.epochs_run(), 0);
    assert_eq!(model, before);
}

#[test]
fn fit_rejects_bad_data() {
    let mut model = blank_model(4, 6);
    assert!(matches!(
        model.fit(&[], &TrainOptions::new(1, 42)),
        Err(Error::EmptyDataset)
    ));
    let bad_label = vec![(bow(&[1, 0, 0, 0, 0, 0]), 7)];
    assert!(matches!(
        model.fit(&bad_label, &TrainOptions::new(1, 42)),
        Err(Error::LabelOutOfRange { label: 7, .. })
    ));
}

#[test]
fn fit_same_seed_is_bit_identical() {
    let mut rng = StdRng::seed_from_u64(505);
    let data: Vec<(BooleanBow, usize)> =
        (0..40).map(|i| (random_bow(&mut rng, 12), i % 2)).collect();
    let make = || {
        let mut model = Model::new(
            ModelConfig {
                clauses_per_class: 10,
                ..ModelConfig::default()
            },
            &test_vocab(12),
        )
        .unwrap();
        model.fit(&data, &TrainOptions::new(3, 99)).unwrap();
        model
    };
    let a = make();
    let b = make();
    assert_eq!(a.ta().states(), b.ta().states());

    // A different seed diverges somewhere.
    let mut c = Model::new(
        ModelConfig {
            clauses_per_class: 10,
            ..ModelConfig::default()
        },
        &test_vocab(12),
    )
    .unwrap();
    c.fit(&data, &TrainOptions::new(3, 100)).unwrap();
    assert_ne!(a.ta().states(), c.ta().states());
}

#[test]
fn type_i_saturates_at_top_state() {
    let mut model = blank_model(2, 2);
    crate::test_support::set_state(&mut model, 0, 0, 255);
    let x = bow(&[1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        model.type_i_feedback(0, &x, &mut rng).unwrap();
    }
    assert_eq!(model.ta().state(0, 0), 255);
    for col in 0..4 {
        assert!(model.ta().state(0, col) <= 255);
    }
}

#[test]
fn type_ii_on_non_firing_clause_is_a_no_op() {
    let mut model = blank_model(2, 4);
    set_include(&mut model, 0, 0); // clause wants w000
    let before = model.ta().states().to_vec();
    let x = bow(&[0, 1, 0, 0]); // w000 absent: clause output 0
    model.type_ii_feedback(0, &x).unwrap();
    assert_eq!(model.ta().states(), &before[..]);
}

#[test]
fn type_ii_nudges_only_false_valued_excluded_literals() {
    let mut model = blank_model(2, 2);
    let x = bow(&[1, 0]);
    // Fresh clause is empty, so it fires under the training convention.
    model.type_ii_feedback(0, &x).unwrap();
    // w000 present: original untouched, negated nudged. w001 absent: original
    // nudged, negated untouched.
    assert_eq!(model.ta().state(0, 0), 127);
    assert_eq!(model.ta().state(0, 1), 128);
    assert_eq!(model.ta().state(0, 2), 128);
    assert_eq!(model.ta().state(0, 3), 127);
}

/// Drift of a single automaton chain under repeated Type I feedback, checked
/// against an independent Monte-Carlo simulation of the written update rule.
#[test]
fn type_i_drift_matches_monte_carlo_simulation() {
    const TRIALS: usize = 100_000;
    const STEPS: usize = 10;
    let s = 5.0f64;
    let x = bow(&[1]);

    // Implementation side: a 1-word model, clause 0, input x_0 = 1. The
    // clause always fires (the negated column only ever weakens), so the
    // original column takes +1 with probability (s-1)/s and the negated
    // column -1 with probability 1/s, both saturating.
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut impl_orig_sum = 0.0f64;
    let mut impl_neg_sum = 0.0f64;
    for _ in 0..TRIALS {
        let mut model = blank_model(2, 1);
        for _ in 0..STEPS {
            model.type_i_feedback(0, &x, &mut rng).unwrap();
        }
        impl_orig_sum += model.ta().state(0, 0) as f64;
        impl_neg_sum += model.ta().state(0, 1) as f64;
    }

    // Oracle side: simulate the textual rule directly with its own stream.
    let mut oracle_rng = ChaCha8Rng::seed_from_u64(707);
    let mut oracle_orig_sum = 0.0f64;
    let mut oracle_neg_sum = 0.0f64;
    for _ in 0..TRIALS {
        let mut orig: i32 = 127;
        let mut neg: i32 = 127;
        for _ in 0..STEPS {
            if oracle_rng.random::<f64>() < (s - 1.0) / s {
                orig = (orig + 1).min(255);
            }
            if oracle_rng.random::<f64>() < 1.0 / s {
                neg = (neg - 1).max(0);
            }
        }
        oracle_orig_sum += orig as f64;
        oracle_neg_sum += neg as f64;
    }

    let trials = TRIALS as f64;
    assert!(
        (impl_orig_sum / trials - oracle_orig_sum / trials).abs() < 0.1,
        "original-literal drift {} vs {}",
        impl_orig_sum / trials,
        oracle_orig_sum / trials
    );
    assert!(
        (impl_neg_sum / trials - oracle_neg_sum / trials).abs() < 0.1,
        "negated-literal drift {} vs {}",
        impl_neg_sum / trials,
        oracle_neg_sum / trials
    );
}

#[test]
fn feedback_never_escapes_state_range() {
    let mut rng = StdRng::seed_from_u64(808);
    let mut chacha = ChaCha8Rng::seed_from_u64(909);
    let mut model = sparse_random_model(&mut rng, 2, 4, 8, 0.3);
    let num_states = model.config().num_states;
    for i in 0..20_000 {
        let x = random_bow(&mut rng, 8);
        let clause = rng.random_range(0..model.num_clauses());
        if i % 2 == 0 {
            model.type_i_feedback(clause, &x, &mut chacha).unwrap();
        } else {
            model.type_ii_feedback(clause, &x).unwrap();
        }
    }
    assert!(model
        .ta()
        .states()
        .iter()
        .all(|&state| (state as u32) < num_states));
}

#[test]
fn model_rejects_mismatched_parts() {
    let vocab = test_vocab(4);
    let config = ModelConfig::default();
    let wrong = crate::tm::TaStateMatrix::new(10, 4, 256);
    assert!(Model::from_parts(config, wrong, vocab.fingerprint()).is_err());
}
