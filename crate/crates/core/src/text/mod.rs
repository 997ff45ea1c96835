//! Text pipeline: tokenization, vocabulary, vectorization, dataset I/O.

mod dataset;
mod tokenize;
mod vocab;

pub use dataset::{Dataset, Document, Format, Split};
pub use tokenize::tokenize;
pub use vocab::Vocabulary;
