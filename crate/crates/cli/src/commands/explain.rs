//! `prunetm explain`: emit token/score pairs for each input document.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use prunetm_core::explain::{tam, TamMode};
use prunetm_core::text::{Dataset, Format};

use crate::commands::{load_labels, load_model, load_vocab_for};
use crate::CliResult;

#[derive(Serialize)]
struct Explanation<'a> {
    tokens: &'a [String],
    scores: &'a [f64],
    mode: &'a str,
    predicted_class: usize,
    predicted_label: &'a str,
    vocab_fingerprint: &'a str,
}

pub fn run<W: Write>(
    model_path: &Path,
    vocab_path: &Path,
    labels_path: &Path,
    input: &Path,
    mode: TamMode,
    mut out: W,
) -> CliResult<usize> {
    let model = load_model(model_path)?;
    let vocab = load_vocab_for(&model, vocab_path)?;
    let labels = load_labels(labels_path, model.config().num_classes)?;
    let dataset = Dataset::load_with_labels(input, Format::from_path(input), &labels)?;

    let mode_tag = mode.map_mode().tag();
    let fingerprint = format!("{:016x}", vocab.fingerprint());
    for doc in &dataset.documents {
        let map = tam(&model, &vocab, &doc.tokens, mode)?;
        let predicted = model.predict(&vocab.vectorize(&doc.tokens))?;
        let record = Explanation {
            tokens: &doc.tokens,
            scores: map.scores(),
            mode: mode_tag,
            predicted_class: predicted,
            predicted_label: &labels[predicted],
            vocab_fingerprint: &fingerprint,
        };
        serde_json::to_writer(&mut out, &record).map_err(prunetm_core::Error::from)?;
        out.write_all(b"\n")?;
    }
    Ok(dataset.len())
}
