//! Write a planted-keyword dataset to disk for driving the CLI.
//!
//! ```text
//! cargo run -p prunetm-core --example make_dataset -- <out-dir> [train-docs] [test-docs] [seed]
//! ```
//!
//! Produces `train.jsonl` and `test.jsonl` in the canonical dataset format,
//! each document carrying its ground-truth importance mask as a single human
//! attention map.

use std::path::PathBuf;

use prunetm_core::synthetic::{generate_with, SyntheticSpec};

fn main() {
    let mut args = std::env::args().skip(1);
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| "data".into()));
    let mut spec = SyntheticSpec::default();
    if let Some(n) = args.next() {
        spec.train_documents = n.parse().expect("train-docs must be an integer");
    }
    if let Some(n) = args.next() {
        spec.test_documents = n.parse().expect("test-docs must be an integer");
    }
    if let Some(n) = args.next() {
        spec.seed = n.parse().expect("seed must be an integer");
    }

    std::fs::create_dir_all(&out_dir).expect("create output directory");
    let data = generate_with(&spec);
    let train_path = out_dir.join("train.jsonl");
    let test_path = out_dir.join("test.jsonl");
    data.train
        .save_jsonl(&train_path)
        .expect("write train split");
    data.test.save_jsonl(&test_path).expect("write test split");
    println!(
        "wrote {} train and {} test documents under {}",
        data.train.len(),
        data.test.len(),
        out_dir.display()
    );
}
