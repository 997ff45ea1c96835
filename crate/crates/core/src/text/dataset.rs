//! Dataset ingestion: labeled documents with optional token-aligned human
//! attention maps.
//!
//! Canonical row (JSONL, one object per line):
//!
//! ```json
//! {"text": "Great food", "label": "positive", "hams": [[1, 0]]}
//! ```
//!
//! `hams` is optional; each inner vector is one annotator's binary map,
//! aligned 1:1 with the tokens our tokenizer produces for `text`. The CSV
//! format carries the same columns, with annotator maps encoded as strings of
//! `0`/`1` joined by `|` (for example `10|01`).
//!
//! Label strings map to class indices by first appearance in the file.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::tokenize;

/// One labeled document. `hams` holds zero or more binary human attention
/// maps, each exactly as long as `tokens`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub raw_text: String,
    pub tokens: Vec<String>,
    pub label: usize,
    pub hams: Vec<Vec<u8>>,
}

impl Document {
    /// Tokenize `text` and attach a label index. HAMs can be added afterward;
    /// they are validated on dataset construction and load.
    pub fn new(text: impl Into<String>, label: usize) -> Document {
        let raw_text = text.into();
        let tokens = tokenize(&raw_text);
        Document {
            raw_text,
            tokens,
            label,
            hams: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Split {
    Train,
    Test50,
    Test100,
    Test200,
    Custom,
}

impl Split {
    pub fn tag(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test50 => "test-50",
            Split::Test100 => "test-100",
            Split::Test200 => "test-200",
            Split::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

impl Format {
    /// Guess from the file extension, defaulting to JSONL.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            _ => Format::Jsonl,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub documents: Vec<Document>,
    pub split: Split,
    /// Label strings in index order (first appearance in the source file).
    pub label_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    text: String,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    hams: Option<Vec<Vec<u8>>>,
}

impl Dataset {
    /// Load a dataset, discovering labels by first appearance.
    pub fn load(path: &Path, format: Format) -> Result<Dataset> {
        Dataset::load_impl(path, format, None)
    }

    /// Load against a fixed label set; rows with labels outside it are
    /// rejected with their row index.
    pub fn load_with_labels(path: &Path, format: Format, labels: &[String]) -> Result<Dataset> {
        Dataset::load_impl(path, format, Some(labels))
    }

    fn load_impl(path: &Path, format: Format, fixed: Option<&[String]>) -> Result<Dataset> {
        let rows = match format {
            Format::Jsonl => read_jsonl(path)?,
            Format::Csv => read_csv(path)?,
        };
        let mut label_names: Vec<String> = fixed.map(|l| l.to_vec()).unwrap_or_default();
        let mut documents = Vec::with_capacity(rows.len());
        for (row_index, row) in rows.into_iter().enumerate() {
            let label = match label_names.iter().position(|l| l == &row.label) {
                Some(index) => index,
                None if fixed.is_none() => {
                    label_names.push(row.label.clone());
                    label_names.len() - 1
                }
                None => {
                    return Err(Error::UnknownLabel {
                        row: row_index,
                        label: row.label,
                    })
                }
            };
            let mut doc = Document::new(row.text, label);
            for (annotator, ham) in row.hams.unwrap_or_default().into_iter().enumerate() {
                if ham.len() != doc.tokens.len() {
                    return Err(Error::HamMisaligned {
                        row: row_index,
                        annotator,
                        ham_len: ham.len(),
                        token_len: doc.tokens.len(),
                    });
                }
                if let Some(&bad) = ham.iter().find(|&&b| b > 1) {
                    return Err(Error::MalformedRow {
                        row: row_index,
                        message: format!("attention map entry {bad} is not 0 or 1"),
                    });
                }
                doc.hams.push(ham);
            }
            documents.push(doc);
        }
        Ok(Dataset {
            documents,
            split: Split::Custom,
            label_names,
        })
    }

    /// Write canonical JSONL: one compact object per line, fields in
    /// `text`, `label`, `hams` order, `hams` omitted when empty.
    pub fn save_jsonl(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        for doc in &self.documents {
            let row = Row {
                text: doc.raw_text.clone(),
                label: self.label_names[doc.label].clone(),
                hams: if doc.hams.is_empty() {
                    None
                } else {
                    Some(doc.hams.clone())
                },
            };
            serde_json::to_writer(&mut out, &row)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Number of annotators present on every document (the usable HAM count).
    pub fn common_annotator_count(&self) -> usize {
        self.documents
            .iter()
            .map(|d| d.hams.len())
            .min()
            .unwrap_or(0)
    }

    pub fn with_split(mut self, split: Split) -> Dataset {
        self.split = split;
        self
    }
}

fn read_jsonl(path: &Path) -> Result<Vec<Row>> {
    let reader = BufReader::new(File::open(path)?);
    let mut rows = Vec::new();
    for (row_index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(&line).map_err(|e| Error::MalformedRow {
            row: row_index,
            message: e.to_string(),
        })?;
        rows.push(row);
    }
    Ok(rows)
}

fn read_csv(path: &Path) -> Result<Vec<Row>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let text_col = headers.iter().position(|h| h == "text");
    let label_col = headers.iter().position(|h| h == "label");
    let hams_col = headers.iter().position(|h| h == "hams");
    let (text_col, label_col) = match (text_col, label_col) {
        (Some(t), Some(l)) => (t, l),
        _ => {
            return Err(Error::MalformedRow {
                row: 0,
                message: "csv header must contain text and label columns".into(),
            })
        }
    };
    let mut rows = Vec::new();
    for (row_index, record) in reader.records().enumerate() {
        let record = record?;
        let text = record.get(text_col).unwrap_or_default().to_string();
        let label = record.get(label_col).unwrap_or_default().to_string();
        if label.is_empty() {
            return Err(Error::MalformedRow {
                row: row_index,
                message: "missing label".into(),
            });
        }
        let hams = match hams_col
            .and_then(|c| record.get(c))
            .filter(|v| !v.is_empty())
        {
            Some(encoded) => Some(parse_ham_strings(encoded, row_index)?),
            None => None,
        };
        rows.push(Row { text, label, hams });
    }
    Ok(rows)
}

fn parse_ham_strings(encoded: &str, row: usize) -> Result<Vec<Vec<u8>>> {
    encoded
        .split('|')
        .map(|bits| {
            bits.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::MalformedRow {
                        row,
                        message: format!("attention map char {other:?} is not 0 or 1"),
                    }),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(path: &Path, content: &str) {
        std::fs::write(path, content).unwrap();
    }

    #[test]
    fn jsonl_row_with_three_hams() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write(
            &path,
            r#"{"text": "Great food here", "label": "positive", "hams": [[1,0,0],[1,1,0],[0,0,1]]}
"#,
        );
        let ds = Dataset::load(&path, Format::Jsonl).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.documents[0].hams.len(), 3);
        assert_eq!(ds.label_names, vec!["positive"]);
    }

    #[test]
    fn misaligned_ham_names_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write(
            &path,
            "{\"text\": \"two tokens\", \"label\": \"a\", \"hams\": [[1]]}\n",
        );
        match Dataset::load(&path, Format::Jsonl) {
            Err(Error::HamMisaligned {
                row: 0,
                ham_len: 1,
                token_len: 2,
                ..
            }) => {}
            other => panic!("expected alignment error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_row_is_indexed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write(&path, "{\"text\": \"ok\", \"label\": \"a\"}\nnot json\n");
        match Dataset::load(&path, Format::Jsonl) {
            Err(Error::MalformedRow { row: 1, .. }) => {}
            other => panic!("expected malformed row 1, got {other:?}"),
        }
    }

    #[test]
    fn unknown_label_against_fixed_set() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write(&path, "{\"text\": \"x\", \"label\": \"mystery\"}\n");
        let labels = vec!["a".to_string(), "b".to_string()];
        match Dataset::load_with_labels(&path, Format::Jsonl, &labels) {
            Err(Error::UnknownLabel { row: 0, label }) => assert_eq!(label, "mystery"),
            other => panic!("expected unknown label, got {other:?}"),
        }
    }

    #[test]
    fn labels_indexed_by_first_appearance() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write(
            &path,
            "{\"text\": \"x\", \"label\": \"neg\"}\n{\"text\": \"y\", \"label\": \"pos\"}\n{\"text\": \"z\", \"label\": \"neg\"}\n",
        );
        let ds = Dataset::load(&path, Format::Jsonl).unwrap();
        assert_eq!(ds.label_names, vec!["neg", "pos"]);
        assert_eq!(
            ds.documents.iter().map(|d| d.label).collect::<Vec<_>>(),
            vec![0, 1, 0]
        );
    }

    #[test]
    fn save_load_identity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        let mut doc = Document::new("nice spot really", 0);
        doc.hams.push(vec![1, 0, 0]);
        doc.hams.push(vec![0, 1, 1]);
        let ds = Dataset {
            documents: vec![doc, Document::new("awful place", 1)],
            split: Split::Custom,
            label_names: vec!["pos".into(), "neg".into()],
        };
        ds.save_jsonl(&path).unwrap();
        let reloaded = Dataset::load(&path, Format::Jsonl).unwrap();
        assert_eq!(reloaded, ds);

        // Byte stability of the canonical form.
        let bytes = std::fs::read(&path).unwrap();
        let path2 = dir.path().join("d2.jsonl");
        reloaded.save_jsonl(&path2).unwrap();
        assert_eq!(bytes, std::fs::read(&path2).unwrap());
    }

    #[test]
    fn csv_roundtrip_of_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        write(
            &path,
            "text,label,hams\nGreat food,positive,10\nBad food,negative,\n",
        );
        let ds = Dataset::load(&path, Format::Csv).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.documents[0].hams, vec![vec![1, 0]]);
        assert!(ds.documents[1].hams.is_empty());
        assert_eq!(ds.label_names, vec!["positive", "negative"]);
    }
}
