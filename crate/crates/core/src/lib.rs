//! Tsetlin Machine text classification with post-hoc literal pruning and
//! perturbation-based attention maps.
//!
//! The pieces, bottom up:
//!
//! - [`text`]: tokenizer, vocabulary, Boolean bag-of-words vectorization,
//!   dataset I/O with optional human attention maps.
//! - [`tm`]: the clause bank itself: training via Type I/II feedback,
//!   bitwise clause evaluation, vote aggregation, model persistence.
//! - [`prune`]: rank literals by include frequency across all clauses and
//!   zero out the least frequent fraction.
//! - [`explain`]: comprehensiveness/sufficiency perturbations and per-token
//!   attention maps derived from them.
//! - [`eval`]: similarity between human and machine attention maps, accuracy,
//!   and pairwise report tables.
//! - [`synthetic`]: a planted-keyword benchmark task with ground-truth
//!   importance masks.

pub mod bits;
pub mod bow;
pub mod error;
pub mod eval;
pub mod explain;
pub mod prune;
pub mod synthetic;
pub mod text;
pub mod tm;

#[cfg(any(test, feature = "test-support"))]
pub mod test_support;

pub use bow::BooleanBow;
pub use error::{Error, Result};
pub use explain::{AttentionMap, MapMode, TamMode};
pub use text::{Dataset, Document, Vocabulary};
pub use tm::{Model, ModelConfig, TrainLog, TrainOptions};
