//! Subcommand implementations.

pub mod eval;
pub mod explain;
pub mod inspect;
pub mod prune;
pub mod train;

use std::path::{Path, PathBuf};

use prunetm_core::text::Vocabulary;
use prunetm_core::tm::Model;

use crate::{CliError, CliResult};

/// Sibling path of a model file: same directory, fixed file name.
fn sibling(model_path: &Path, name: &str) -> PathBuf {
    model_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(name)
}

pub fn default_vocab_path(model_path: &Path) -> PathBuf {
    sibling(model_path, "vocab.txt")
}

pub fn default_labels_path(model_path: &Path) -> PathBuf {
    sibling(model_path, "labels.json")
}

pub fn load_model(path: &Path) -> CliResult<Model> {
    Ok(Model::load(path)?)
}

/// Load the vocabulary and verify it is the one the model was trained on.
pub fn load_vocab_for(model: &Model, path: &Path) -> CliResult<Vocabulary> {
    let vocab = Vocabulary::load(path)?;
    model.check_vocab(&vocab)?;
    Ok(vocab)
}

/// Label names from `labels.json`, or numeric fallbacks when the file is
/// absent.
pub fn load_labels(path: &Path, num_classes: usize) -> CliResult<Vec<String>> {
    if !path.exists() {
        return Ok((0..num_classes).map(|c| c.to_string()).collect());
    }
    let content = std::fs::read_to_string(path)?;
    #[derive(serde::Deserialize)]
    struct LabelsFile {
        labels: Vec<String>,
    }
    let labels = serde_json::from_str::<LabelsFile>(&content)
        .map_err(|e| CliError::Data(format!("labels file {}: {e}", path.display())))?
        .labels;
    if labels.len() != num_classes {
        return Err(CliError::Data(format!(
            "labels file {} names {} classes, model has {num_classes}",
            path.display(),
            labels.len()
        )));
    }
    Ok(labels)
}

/// Variant name of a model file: its stem.
pub fn variant_name(path: &Path) -> String {
    path.file_stem()
        .map(|stem| stem.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Percent label for a prune fraction: 0.25 -> "25", 0.125 -> "12.5".
pub fn percent_label(fraction: f64) -> String {
    let percent = fraction * 100.0;
    if (percent - percent.round()).abs() < 1e-9 {
        format!("{}", percent.round() as i64)
    } else {
        format!("{percent}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_labels() {
        assert_eq!(percent_label(0.25), "25");
        assert_eq!(percent_label(0.05), "5");
        assert_eq!(percent_label(0.0), "0");
        assert_eq!(percent_label(0.125), "12.5");
    }

    #[test]
    fn sibling_paths() {
        let model = Path::new("out/tm.model");
        assert_eq!(default_vocab_path(model), Path::new("out/vocab.txt"));
        assert_eq!(default_labels_path(model), Path::new("out/labels.json"));
        assert_eq!(variant_name(model), "tm");
    }
}
