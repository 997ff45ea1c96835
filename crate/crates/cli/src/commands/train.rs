//! `prunetm train`: fit a model and persist it with its vocabulary, label
//! map, per-epoch log, and the resolved run configuration.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use prunetm_core::text::{Dataset, Format};
use prunetm_core::tm::{Model, TrainOptions};
use prunetm_core::Vocabulary;

use crate::config::RunConfig;
use crate::{CliError, CliResult};

#[derive(Serialize)]
struct EpochRecord {
    epoch: usize,
    train_accuracy: f64,
}

#[derive(Serialize)]
struct LabelsFile<'a> {
    vocab_fingerprint: &'a str,
    labels: &'a [String],
}

#[derive(Serialize)]
struct ConfigFile<'a> {
    vocab_fingerprint: &'a str,
    #[serde(flatten)]
    config: &'a RunConfig,
}

pub struct TrainOutcome {
    pub model_path: std::path::PathBuf,
    pub final_train_accuracy: f64,
    pub epochs_run: usize,
}

pub fn run(config: &RunConfig) -> CliResult<TrainOutcome> {
    config.validate()?;
    let train_path = config
        .train_path
        .as_ref()
        .ok_or_else(|| CliError::Config("no training dataset given (train/--train)".into()))?;

    let dataset = Dataset::load(train_path, Format::from_path(train_path))?;
    if dataset.is_empty() {
        return Err(CliError::Data(format!(
            "training dataset {} is empty",
            train_path.display()
        )));
    }
    let num_classes = dataset.label_names.len();
    if let Some(expected) = config.num_classes {
        if expected != num_classes {
            return Err(CliError::Config(format!(
                "config says {expected} classes but the data has {num_classes} labels"
            )));
        }
    }
    if num_classes < 2 {
        return Err(CliError::Data(format!(
            "training dataset has a single label {:?}; need at least two",
            dataset.label_names[0]
        )));
    }

    let vocab = Vocabulary::build(
        dataset
            .documents
            .iter()
            .flat_map(|d| d.tokens.iter().map(|t| t.as_str())),
        config.vocab_max_size,
    )?;

    let examples: Vec<_> = dataset
        .documents
        .iter()
        .map(|d| (vocab.vectorize(&d.tokens), d.label))
        .collect();

    let mut model = Model::new(config.model_config(num_classes), &vocab)?;
    let log = model.fit(
        &examples,
        &TrainOptions {
            epochs: config.epochs,
            seed: config.seed,
            early_stop_train_accuracy: None,
        },
    )?;

    std::fs::create_dir_all(&config.out_dir)?;
    let fingerprint = format!("{:016x}", vocab.fingerprint());
    let model_path = config.out_dir.join("tm.model");
    model.save(&model_path)?;
    vocab.save(&config.out_dir.join("vocab.txt"))?;
    write_json(
        &config.out_dir.join("labels.json"),
        &LabelsFile {
            vocab_fingerprint: &fingerprint,
            labels: &dataset.label_names,
        },
    )?;
    write_json(
        &config.out_dir.join("run_config.json"),
        &ConfigFile {
            vocab_fingerprint: &fingerprint,
            config,
        },
    )?;

    let mut log_out = BufWriter::new(File::create(config.out_dir.join("train_log.jsonl"))?);
    serde_json::to_writer(
        &mut log_out,
        &serde_json::json!({ "vocab_fingerprint": fingerprint, "epochs": log.epochs_run() }),
    )
    .map_err(prunetm_core::Error::from)?;
    log_out.write_all(b"\n")?;
    for (index, &train_accuracy) in log.epoch_accuracy.iter().enumerate() {
        serde_json::to_writer(
            &mut log_out,
            &EpochRecord {
                epoch: index + 1,
                train_accuracy,
            },
        )
        .map_err(prunetm_core::Error::from)?;
        log_out.write_all(b"\n")?;
    }
    log_out.flush()?;

    Ok(TrainOutcome {
        model_path,
        final_train_accuracy: log.final_accuracy().unwrap_or(0.0),
        epochs_run: log.epochs_run(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let json = serde_json::to_string_pretty(value).map_err(prunetm_core::Error::from)?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}
