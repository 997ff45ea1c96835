//! `prunetm inspect-clauses`: print clauses as propositional rules, optionally
//! against a sample document and a pruned model to diff against.
//!
//! Literals are listed most frequent first (by include count over the whole
//! model), original form plain and negated prefixed with a negation sign.
//! With `--diff`, literals present here but gone from the pruned model are
//! marked `[-literal]`.

use std::io::Write;
use std::path::Path;

use prunetm_core::prune::literal_frequencies;
use prunetm_core::text::{Dataset, Format};
use prunetm_core::tm::Model;
use prunetm_core::Vocabulary;

use crate::commands::{load_labels, load_model, load_vocab_for};
use crate::{CliError, CliResult};

pub struct InspectArgsResolved<'a> {
    pub model_path: &'a Path,
    pub vocab_path: &'a Path,
    pub labels_path: &'a Path,
    pub sample: Option<(&'a Path, usize)>,
    pub count: usize,
    pub diff: Option<&'a Path>,
}

pub fn run<W: Write>(args: InspectArgsResolved<'_>, mut out: W) -> CliResult<usize> {
    let model = load_model(args.model_path)?;
    let vocab = load_vocab_for(&model, args.vocab_path)?;
    let labels = load_labels(args.labels_path, model.config().num_classes)?;

    let pruned = match args.diff {
        Some(path) => {
            let pruned = load_model(path)?;
            if pruned.vocab_fingerprint() != model.vocab_fingerprint()
                || pruned.num_clauses() != model.num_clauses()
            {
                return Err(CliError::Format(format!(
                    "pruned model {} does not match the base model",
                    path.display()
                )));
            }
            Some(pruned)
        }
        None => None,
    };

    let rows = select_rows(&model, &vocab, args.sample, args.count)?;
    let frequencies = literal_frequencies(&model);

    for &row in &rows {
        let clause = model.clause(row)?;
        let polarity = if clause.polarity() > 0 { '+' } else { '-' };
        let label = &labels[clause.class()];
        write!(
            out,
            "clause {row} (class {label}, polarity {polarity}, {} literals): ",
            clause.literal_count()
        )?;

        if clause.is_empty() {
            writeln!(out, "(empty)")?;
            continue;
        }

        // Literal columns of this clause, most frequent first, id as tie-break.
        let mut columns: Vec<usize> = clause
            .include_original()
            .into_iter()
            .map(|word| 2 * word)
            .chain(
                clause
                    .include_negated()
                    .into_iter()
                    .map(|word| 2 * word + 1),
            )
            .collect();
        columns.sort_by_key(|&col| (std::cmp::Reverse(frequencies.count(col)), col));

        let rendered: Vec<String> = columns
            .iter()
            .map(|&col| {
                let word = vocab.word(col / 2);
                let text = if col % 2 == 1 {
                    format!("\u{00ac}{word}")
                } else {
                    word.to_string()
                };
                match &pruned {
                    Some(pruned_model) if !pruned_model.ta().is_included(row, col) => {
                        format!("[-{text}]")
                    }
                    _ => text,
                }
            })
            .collect();
        writeln!(out, "{}", rendered.join(" \u{2227} "))?;
    }
    Ok(rows.len())
}

/// Which clauses to show: the ones firing on the sample document, or the
/// `count` with the most literals when no sample is given.
fn select_rows(
    model: &Model,
    vocab: &Vocabulary,
    sample: Option<(&Path, usize)>,
    count: usize,
) -> CliResult<Vec<usize>> {
    match sample {
        Some((path, row_index)) => {
            let dataset = Dataset::load(path, Format::from_path(path))?;
            let doc = dataset.documents.get(row_index).ok_or_else(|| {
                CliError::Data(format!(
                    "sample row {row_index} out of range, {} has {} documents",
                    path.display(),
                    dataset.len()
                ))
            })?;
            let x = vocab.vectorize(&doc.tokens);
            let mut rows = Vec::new();
            for clause in 0..model.num_clauses() {
                if model.evaluate_clause(clause, &x)? {
                    rows.push(clause);
                    if rows.len() == count {
                        break;
                    }
                }
            }
            Ok(rows)
        }
        None => {
            let mut rows: Vec<usize> = (0..model.num_clauses()).collect();
            rows.sort_by_key(|&row| (std::cmp::Reverse(model.ta().row_include_count(row)), row));
            rows.truncate(count);
            Ok(rows)
        }
    }
}
