//! `prunetm eval`: accuracy per model variant, plus the pairwise similarity
//! table between human attention maps and each variant's machine maps when a
//! similarity metric is requested.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use prunetm_core::eval::{accuracy, pairwise_table, MapSource, SimilarityMetric};
use prunetm_core::explain::{tam, AttentionMap, TamMode};
use prunetm_core::text::{Dataset, Format};
use prunetm_core::tm::Model;
use prunetm_core::Vocabulary;

use crate::commands::{load_labels, load_model, load_vocab_for, variant_name};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotatorPick {
    All,
    One(usize),
}

impl std::str::FromStr for AnnotatorPick {
    type Err = String;

    fn from_str(value: &str) -> Result<Self, Self::Err> {
        if value == "all" {
            return Ok(AnnotatorPick::All);
        }
        value
            .parse::<usize>()
            .ok()
            .filter(|&i| i >= 1)
            .map(AnnotatorPick::One)
            .ok_or_else(|| format!("annotator must be a 1-based index or \"all\", got {value:?}"))
    }
}

pub struct EvalOutcome {
    pub accuracy_csv: PathBuf,
    pub similarity_files: Vec<PathBuf>,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    model_paths: &[PathBuf],
    vocab_path: &Path,
    labels_path: &Path,
    dataset_path: &Path,
    metric: Option<SimilarityMetric>,
    annotator: AnnotatorPick,
    dataset_tag: &str,
    out_dir: &Path,
) -> CliResult<EvalOutcome> {
    if model_paths.is_empty() {
        return Err(CliError::Config("no model files given (--model)".into()));
    }
    let models: Vec<(String, Model)> = model_paths
        .iter()
        .map(|path| load_model(path).map(|m| (variant_name(path), m)))
        .collect::<CliResult<_>>()?;
    let vocab = load_vocab_for(&models[0].1, vocab_path)?;
    for (_, model) in &models {
        model.check_vocab(&vocab)?;
    }
    let labels = load_labels(labels_path, models[0].1.config().num_classes)?;
    let dataset =
        Dataset::load_with_labels(dataset_path, Format::from_path(dataset_path), &labels)?;
    if dataset.is_empty() {
        return Err(CliError::Data(format!(
            "dataset {} is empty",
            dataset_path.display()
        )));
    }

    // Validate the similarity prerequisites up front so a refused run does
    // not leave partial outputs behind.
    if metric.is_some() {
        pick_annotators(&dataset, annotator)?;
    }

    std::fs::create_dir_all(out_dir)?;
    let fingerprint = format!("{:016x}", vocab.fingerprint());
    let accuracy_csv = out_dir.join("accuracy.csv");
    let mut acc_out = File::create(&accuracy_csv)?;
    writeln!(
        acc_out,
        "model_variant,prune_fraction,accuracy,dataset,vocab_fingerprint"
    )?;
    for (name, model) in &models {
        let value = accuracy(model, &vocab, &dataset)?;
        writeln!(
            acc_out,
            "{name},{},{value},{dataset_tag},{fingerprint}",
            fraction_from_name(name)
                .map(|f| f.to_string())
                .unwrap_or_default()
        )?;
    }

    let mut similarity_files = Vec::new();
    if let Some(metric) = metric {
        similarity_files = similarity_reports(
            &models,
            &vocab,
            &dataset,
            metric,
            annotator,
            dataset_tag,
            out_dir,
        )?;
    }

    Ok(EvalOutcome {
        accuracy_csv,
        similarity_files,
    })
}

/// Annotator indices to report on, or a data error when the dataset cannot
/// support the request.
fn pick_annotators(dataset: &Dataset, annotator: AnnotatorPick) -> CliResult<Vec<usize>> {
    let available = dataset.common_annotator_count();
    if available == 0 {
        return Err(CliError::Data(
            "similarity metrics need human attention maps, but the dataset has none \
             (add \"hams\" to every row or evaluate accuracy only)"
                .into(),
        ));
    }
    match annotator {
        AnnotatorPick::All => Ok((0..available).collect()),
        AnnotatorPick::One(index) => {
            if index > available {
                return Err(CliError::Data(format!(
                    "annotator {index} requested but the dataset has {available}"
                )));
            }
            Ok(vec![index - 1])
        }
    }
}

fn similarity_reports(
    models: &[(String, Model)],
    vocab: &Vocabulary,
    dataset: &Dataset,
    metric: SimilarityMetric,
    annotator: AnnotatorPick,
    dataset_tag: &str,
    out_dir: &Path,
) -> CliResult<Vec<PathBuf>> {
    let picked = pick_annotators(dataset, annotator)?;

    let annotators: Vec<MapSource> = picked
        .iter()
        .map(|&a| MapSource {
            name: format!("HAM{}", a + 1),
            prune_fraction: None,
            maps: dataset
                .documents
                .iter()
                .map(|doc| AttentionMap::from_ham_bits(&doc.hams[a]))
                .collect(),
        })
        .collect();

    let tam_mode = match metric {
        SimilarityMetric::Comprehensiveness => TamMode::Comprehensiveness,
        SimilarityMetric::Sufficiency => TamMode::Sufficiency,
    };
    let variants: Vec<MapSource> = models
        .iter()
        .map(|(name, model)| {
            let maps = dataset
                .documents
                .iter()
                .map(|doc| tam(model, vocab, &doc.tokens, tam_mode))
                .collect::<prunetm_core::Result<Vec<_>>>()?;
            Ok(MapSource {
                name: name.clone(),
                prune_fraction: fraction_from_name(name),
                maps,
            })
        })
        .collect::<CliResult<_>>()?;

    let mut report = pairwise_table(&annotators, &variants, metric, dataset_tag)?;
    report.vocab_fingerprint = Some(format!("{:016x}", vocab.fingerprint()));
    let mut files = Vec::new();
    files.extend(write_report(&report, metric.tag(), out_dir)?);
    if metric == SimilarityMetric::Sufficiency {
        // The literal pairing scores identical maps 0; ship the complement
        // alongside so both readings are on disk.
        let complement = report.complement("sufficiency-complement");
        files.extend(write_report(
            &complement,
            "sufficiency-complement",
            out_dir,
        )?);
    }
    Ok(files)
}

fn write_report(
    report: &prunetm_core::eval::SimilarityReport,
    name: &str,
    out_dir: &Path,
) -> CliResult<Vec<PathBuf>> {
    let csv_path = out_dir.join(format!("similarity-{name}.csv"));
    let json_path = out_dir.join(format!("similarity-{name}.json"));
    let file = File::create(&csv_path)?;
    report.write_csv(file)?;
    std::fs::write(&json_path, report.to_json()? + "\n")?;
    Ok(vec![csv_path, json_path])
}

/// Prune fraction encoded in a pruned-model file name, e.g. `tm.pruned-25`.
fn fraction_from_name(stem: &str) -> Option<f64> {
    let (_, percent) = stem.rsplit_once(".pruned-")?;
    percent.parse::<f64>().ok().map(|p| p / 100.0)
}
