//! Similarity between human and machine attention maps, accuracy, and the
//! pairwise report table.
//!
//! `pair_sim` treats the binary human map as ground truth and scores one
//! document as one minus the mean absolute per-token difference. The
//! sufficiency variant drops the `1 -` term on purpose: low sufficiency marks
//! important words, so the raw mean difference is reported as printed in its
//! defining equation, even though identical maps then score 0. Callers that
//! want an actual similarity out of it can take the complement, which is
//! emitted alongside in reports.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::explain::AttentionMap;
use crate::text::{Dataset, Vocabulary};
use crate::tm::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityMetric {
    Comprehensiveness,
    Sufficiency,
}

impl SimilarityMetric {
    pub fn tag(&self) -> &'static str {
        match self {
            SimilarityMetric::Comprehensiveness => "comprehensiveness",
            SimilarityMetric::Sufficiency => "sufficiency",
        }
    }

    fn pair(&self, ham: &AttentionMap, mam: &AttentionMap) -> Result<f64> {
        match self {
            SimilarityMetric::Comprehensiveness => pair_sim(ham, mam),
            SimilarityMetric::Sufficiency => pair_sim_sufficiency(ham, mam),
        }
    }
}

fn mean_absolute_difference(ham: &AttentionMap, mam: &AttentionMap) -> Result<f64> {
    if ham.len() != mam.len() {
        return Err(Error::MapLengthMismatch {
            left: ham.len(),
            right: mam.len(),
        });
    }
    if ham.is_empty() {
        return Err(Error::EmptyMap);
    }
    let total: f64 = ham
        .scores()
        .iter()
        .zip(mam.scores())
        .map(|(&h, &m)| (h - m).abs())
        .sum();
    Ok(total / ham.len() as f64)
}

/// `1 - mean_k |ham_k - mam_k|`; 1 means identical maps.
pub fn pair_sim(ham: &AttentionMap, mam: &AttentionMap) -> Result<f64> {
    Ok(1.0 - mean_absolute_difference(ham, mam)?)
}

/// `mean_k |ham_k - mam_k|`, the sufficiency-variant pairing; identical maps
/// score 0 here.
pub fn pair_sim_sufficiency(ham: &AttentionMap, mam: &AttentionMap) -> Result<f64> {
    mean_absolute_difference(ham, mam)
}

/// Dataset-level similarity: the mean pair score over aligned (HAM, MAM)
/// map sequences.
pub fn sim_measure(
    hams: &[AttentionMap],
    mams: &[AttentionMap],
    metric: SimilarityMetric,
) -> Result<f64> {
    if hams.len() != mams.len() {
        return Err(Error::MapCountMismatch {
            expected: hams.len(),
            actual: mams.len(),
        });
    }
    if hams.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let total: f64 = hams
        .iter()
        .zip(mams)
        .map(|(ham, mam)| metric.pair(ham, mam))
        .sum::<Result<f64>>()?;
    Ok(total / hams.len() as f64)
}

/// Fraction of documents whose prediction matches the label.
pub fn accuracy(model: &Model, vocab: &Vocabulary, dataset: &Dataset) -> Result<f64> {
    model.check_vocab(vocab)?;
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let num_classes = model.config().num_classes;
    let mut correct = 0usize;
    for doc in &dataset.documents {
        if doc.label >= num_classes {
            return Err(Error::LabelOutOfRange {
                label: doc.label,
                num_classes,
            });
        }
        if model.predict(&vocab.vectorize(&doc.tokens))? == doc.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / dataset.len() as f64)
}

/// One source of attention maps to place in the table: annotators first, then
/// machine variants.
#[derive(Debug, Clone)]
pub struct MapSource {
    pub name: String,
    pub prune_fraction: Option<f64>,
    pub maps: Vec<AttentionMap>,
}

/// Full pairwise table: one row per source (HAM rows first, machine variants
/// after), one column per annotator.
#[derive(Debug, Clone, Serialize)]
pub struct SimilarityReport {
    pub metric: String,
    pub dataset: String,
    /// Fingerprint of the vocabulary behind the machine maps, when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vocab_fingerprint: Option<String>,
    pub annotators: Vec<String>,
    pub rows: Vec<SimilarityRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimilarityRow {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prune_fraction: Option<f64>,
    pub values: Vec<f64>,
}

/// Compute the pairwise table between annotator maps and machine-variant
/// maps. Every source must carry one map per document, aligned with the
/// annotator maps.
pub fn pairwise_table(
    annotators: &[MapSource],
    variants: &[MapSource],
    metric: SimilarityMetric,
    dataset_tag: &str,
) -> Result<SimilarityReport> {
    if annotators.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut rows = Vec::with_capacity(annotators.len() + variants.len());
    for source in annotators.iter().chain(variants) {
        let values = annotators
            .iter()
            .map(|annotator| sim_measure(&annotator.maps, &source.maps, metric))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(SimilarityRow {
            variant: source.name.clone(),
            prune_fraction: source.prune_fraction,
            values,
        });
    }
    Ok(SimilarityReport {
        metric: metric.tag().to_string(),
        dataset: dataset_tag.to_string(),
        vocab_fingerprint: None,
        annotators: annotators.iter().map(|a| a.name.clone()).collect(),
        rows,
    })
}

impl SimilarityReport {
    /// The same table with every value replaced by `1 - value`, for reading
    /// the sufficiency variant as a similarity.
    pub fn complement(&self, metric_label: &str) -> SimilarityReport {
        SimilarityReport {
            metric: metric_label.to_string(),
            dataset: self.dataset.clone(),
            vocab_fingerprint: self.vocab_fingerprint.clone(),
            annotators: self.annotators.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| SimilarityRow {
                    variant: row.variant.clone(),
                    prune_fraction: row.prune_fraction,
                    values: row.values.iter().map(|v| 1.0 - v).collect(),
                })
                .collect(),
        }
    }

    pub fn value(&self, variant: &str, annotator: &str) -> Option<f64> {
        let column = self.annotators.iter().position(|a| a == annotator)?;
        self.rows
            .iter()
            .find(|row| row.variant == variant)
            .map(|row| row.values[column])
    }

    /// Long-form CSV: model_variant, prune_fraction, annotator, metric,
    /// sim_measure, dataset.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record([
            "model_variant",
            "prune_fraction",
            "annotator",
            "metric",
            "sim_measure",
            "dataset",
        ])?;
        for row in &self.rows {
            for (annotator, value) in self.annotators.iter().zip(&row.values) {
                writer.write_record([
                    row.variant.as_str(),
                    &row.prune_fraction
                        .map(|f| f.to_string())
                        .unwrap_or_default(),
                    annotator,
                    &self.metric,
                    &value.to_string(),
                    &self.dataset,
                ])?;
            }
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
