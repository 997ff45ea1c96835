use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prunetm_cli::commands::eval::AnnotatorPick;
use prunetm_cli::commands::{self, default_labels_path, default_vocab_path};
use prunetm_cli::config::{parse_fraction_list, RunConfig};
use prunetm_cli::{CliError, CliResult};
use prunetm_core::eval::SimilarityMetric;
use prunetm_core::explain::TamMode;

#[derive(Parser)]
#[command(
    name = "prunetm",
    version,
    about = "Tsetlin Machine text classification with post-hoc literal pruning and attention-map explainability"
)]
struct Cli {
    /// Force the single-threaded deterministic mode. This build is always
    /// single-threaded; the flag is accepted for script compatibility.
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model and write it with vocabulary, labels, and training log.
    Train(TrainArgs),
    /// Prune a trained model at one or more fractions.
    Prune(PruneArgs),
    /// Emit per-token attention scores for input documents.
    Explain(ExplainArgs),
    /// Evaluate accuracy and attention-map similarity for model variants.
    Eval(EvalArgs),
    /// Print clauses as propositional rules.
    #[command(name = "inspect-clauses")]
    InspectClauses(InspectArgs),
}

#[derive(Args)]
struct TrainArgs {
    /// Config file with key = value lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Training dataset (JSONL or CSV).
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    vocab_max_size: Option<usize>,
    #[arg(long)]
    clauses_per_class: Option<usize>,
    #[arg(long)]
    num_states: Option<u32>,
    #[arg(long)]
    vote_clip_t: Option<i32>,
    #[arg(long)]
    specificity_s: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct PruneArgs {
    #[arg(long)]
    model: PathBuf,
    /// Single prune fraction in [0, 0.5].
    #[arg(long, conflicts_with = "sweep")]
    fraction: Option<f64>,
    /// Comma-separated list of fractions, e.g. 0.05,0.10,0.15.
    #[arg(long)]
    sweep: Option<String>,
    /// Output directory; defaults to the model's directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ExplainArgs {
    #[arg(long)]
    model: PathBuf,
    /// Vocabulary file; defaults to vocab.txt next to the model.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Label names file; defaults to labels.json next to the model.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Input documents (JSONL or CSV).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_metric, default_value = "comprehensiveness")]
    mode: SimilarityMetric,
    /// Write the JSONL output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Model file; repeat for several variants.
    #[arg(long, required = true)]
    model: Vec<PathBuf>,
    #[arg(long)]
    vocab: Option<PathBuf>,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    dataset: PathBuf,
    /// Similarity metric; omit to evaluate accuracy only.
    #[arg(long, value_parser = parse_metric)]
    metric: Option<SimilarityMetric>,
    /// Annotator column selection: 1, 2, 3, ... or "all".
    #[arg(long, default_value = "all")]
    annotator: AnnotatorPick,
    /// Tag recorded in the dataset column of the reports.
    #[arg(long, default_value = "custom")]
    dataset_tag: String,
    #[arg(long, default_value = "eval-out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    vocab: Option<PathBuf>,
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Show clauses that fire on a document from this file.
    #[arg(long)]
    sample: Option<PathBuf>,
    /// Row of the sample file to use.
    #[arg(long, default_value_t = 0)]
    row: usize,
    /// Maximum number of clauses to print.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Pruned model to diff against; removed literals are marked [-literal].
    #[arg(long)]
    diff: Option<PathBuf>,
}

fn parse_metric(value: &str) -> Result<SimilarityMetric, String> {
    match value {
        "comprehensiveness" => Ok(SimilarityMetric::Comprehensiveness),
        "sufficiency" => Ok(SimilarityMetric::Sufficiency),
        other => Err(format!(
            "metric must be comprehensiveness or sufficiency, got {other:?}"
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("{error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Train(args) => {
            let config = resolve_train_config(&args)?;
            let outcome = commands::train::run(&config)?;
            println!(
                "trained {} epochs, final train accuracy {:.4}, model at {}",
                outcome.epochs_run,
                outcome.final_train_accuracy,
                outcome.model_path.display()
            );
            Ok(())
        }
        Command::Prune(args) => {
            let fractions = match (&args.fraction, &args.sweep) {
                (Some(f), None) => vec![*f],
                (None, Some(list)) => parse_fraction_list(list)
                    .map_err(|e| CliError::Config(format!("bad --sweep list {list:?}: {e}")))?,
                (None, None) => Vec::new(),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let outcome = commands::prune::run(&args.model, &fractions, args.out_dir.as_deref())?;
            for (fraction, model_path, report_path) in &outcome.outputs {
                println!(
                    "pruned {:.0}% -> {} (report {})",
                    fraction * 100.0,
                    model_path.display(),
                    report_path.display()
                );
            }
            Ok(())
        }
        Command::Explain(args) => {
            let vocab = args
                .vocab
                .clone()
                .unwrap_or_else(|| default_vocab_path(&args.model));
            let labels = args
                .labels
                .clone()
                .unwrap_or_else(|| default_labels_path(&args.model));
            let mode = match args.mode {
                SimilarityMetric::Comprehensiveness => TamMode::Comprehensiveness,
                SimilarityMetric::Sufficiency => TamMode::Sufficiency,
            };
            match &args.out {
                Some(path) => {
                    let file = std::fs::File::create(path)?;
                    commands::explain::run(&args.model, &vocab, &labels, &args.input, mode, file)?;
                }
                None => {
                    let stdout = std::io::stdout().lock();
                    commands::explain::run(
                        &args.model,
                        &vocab,
                        &labels,
                        &args.input,
                        mode,
                        stdout,
                    )?;
                }
            }
            Ok(())
        }
        Command::Eval(args) => {
            let vocab = args
                .vocab
                .clone()
                .unwrap_or_else(|| default_vocab_path(&args.model[0]));
            let labels = args
                .labels
                .clone()
                .unwrap_or_else(|| default_labels_path(&args.model[0]));
            let outcome = commands::eval::run(
                &args.model,
                &vocab,
                &labels,
                &args.dataset,
                args.metric,
                args.annotator,
                &args.dataset_tag,
                &args.out_dir,
            )?;
            println!("accuracy table at {}", outcome.accuracy_csv.display());
            for file in &outcome.similarity_files {
                println!("similarity report at {}", file.display());
            }
            Ok(())
        }
        Command::InspectClauses(args) => {
            let vocab = args
                .vocab
                .clone()
                .unwrap_or_else(|| default_vocab_path(&args.model));
            let labels = args
                .labels
                .clone()
                .unwrap_or_else(|| default_labels_path(&args.model));
            let resolved = commands::inspect::InspectArgsResolved {
                model_path: &args.model,
                vocab_path: &vocab,
                labels_path: &labels,
                sample: args.sample.as_deref().map(|path| (path, args.row)),
                count: args.count,
                diff: args.diff.as_deref(),
            };
            let stdout = std::io::stdout().lock();
            commands::inspect::run(resolved, stdout)?;
            Ok(())
        }
    }
}

fn resolve_train_config(args: &TrainArgs) -> CliResult<RunConfig> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(path) = &args.train {
        config.train_path = Some(path.clone());
    }
    if let Some(value) = args.vocab_max_size {
        config.vocab_max_size = value;
    }
    if let Some(value) = args.clauses_per_class {
        config.clauses_per_class = value;
    }
    if let Some(value) = args.num_states {
        config.num_states = value;
    }
    if let Some(value) = args.vote_clip_t {
        config.vote_clip_t = value;
    }
    if let Some(value) = args.specificity_s {
        config.specificity_s = value;
    }
    if let Some(value) = args.epochs {
        config.epochs = value;
    }
    if let Some(value) = args.seed {
        config.seed = value;
    }
    if let Some(value) = &args.out_dir {
        config.out_dir = value.clone();
    }
    Ok(config)
}
