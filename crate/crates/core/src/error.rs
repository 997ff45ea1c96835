//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("input has {input} bits but the model is bound to a vocabulary of {expected}")]
    DimensionMismatch { expected: usize, input: usize },

    #[error("class index {class} out of range for {num_classes} classes")]
    ClassOutOfRange { class: usize, num_classes: usize },

    #[error("clause id {clause} out of range for {num_clauses} clauses")]
    ClauseOutOfRange { clause: usize, num_clauses: usize },

    #[error("label index {label} out of range for {num_classes} classes")]
    LabelOutOfRange { label: usize, num_classes: usize },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("prune fraction {0} outside [0, 0.5]")]
    InvalidFraction(f64),

    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("row {row}: unknown label {label:?}")]
    UnknownLabel { row: usize, label: String },

    #[error("row {row}: attention map {annotator} has {ham_len} entries for {token_len} tokens")]
    HamMisaligned {
        row: usize,
        annotator: usize,
        ham_len: usize,
        token_len: usize,
    },

    #[error("attention maps have different lengths ({left} vs {right})")]
    MapLengthMismatch { left: usize, right: usize },

    #[error("empty attention map")]
    EmptyMap,

    #[error("attention map score {0} outside [0, 1]")]
    ScoreOutOfRange(f64),

    #[error("expected {expected} attention maps, got {actual}")]
    MapCountMismatch { expected: usize, actual: usize },

    #[error("token index {index} out of range for document of {len} tokens")]
    TokenIndexOutOfRange { index: usize, len: usize },

    #[error("vocabulary fingerprint {actual:016x} does not match model binding {expected:016x}")]
    FingerprintMismatch { expected: u64, actual: u64 },

    #[error("model format: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
