//! Model persistence: versioned binary container and a canonical JSON debug
//! export.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! magic            8 bytes  "PTMMODEL"
//! format_version   u32
//! num_classes      u32
//! clauses_per_class u32
//! vocab_size       u32
//! num_states       u32
//! vote_clip_t      i32
//! specificity_s    f64
//! seed             u64
//! vocab_fingerprint u64
//! states           u16 x (num_classes * clauses_per_class * 2 * vocab_size),
//!                  row-major
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tm::{Model, ModelConfig, TaStateMatrix};

const MAGIC: &[u8; 8] = b"PTMMODEL";
const FORMAT_VERSION: u32 = 1;

impl Model {
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        let cfg = self.config();
        out.write_all(MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&(cfg.num_classes as u32).to_le_bytes())?;
        out.write_all(&(cfg.clauses_per_class as u32).to_le_bytes())?;
        out.write_all(&(self.vocab_size() as u32).to_le_bytes())?;
        out.write_all(&cfg.num_states.to_le_bytes())?;
        out.write_all(&cfg.vote_clip_t.to_le_bytes())?;
        out.write_all(&cfg.specificity_s.to_le_bytes())?;
        out.write_all(&cfg.seed.to_le_bytes())?;
        out.write_all(&self.vocab_fingerprint().to_le_bytes())?;
        for &state in self.ta().states() {
            out.write_all(&state.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        self.write_to(&mut out)?;
        out.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        input
            .read_exact(&mut magic)
            .map_err(|_| Error::ModelFormat("file too short for header".into()))?;
        if &magic != MAGIC {
            return Err(Error::ModelFormat("bad magic, not a model file".into()));
        }
        let version = read_u32(&mut input)?;
        if version != FORMAT_VERSION {
            return Err(Error::ModelFormat(format!(
                "unsupported format version {version}, expected {FORMAT_VERSION}"
            )));
        }
        let num_classes = read_u32(&mut input)? as usize;
        let clauses_per_class = read_u32(&mut input)? as usize;
        let vocab_size = read_u32(&mut input)? as usize;
        let num_states = read_u32(&mut input)?;
        let vote_clip_t = read_i32(&mut input)?;
        let specificity_s = read_f64(&mut input)?;
        let seed = read_u64(&mut input)?;
        let vocab_fingerprint = read_u64(&mut input)?;

        let config = ModelConfig {
            num_classes,
            clauses_per_class,
            num_states,
            vote_clip_t,
            specificity_s,
            seed,
        };
        config
            .validate()
            .map_err(|e| Error::ModelFormat(format!("header rejected: {e}")))?;

        let rows = config.total_clauses();
        let count = rows * 2 * vocab_size;
        let mut raw = vec![0u8; count * 2];
        input
            .read_exact(&mut raw)
            .map_err(|_| Error::ModelFormat("state matrix truncated".into()))?;
        let mut trailing = [0u8; 1];
        if input.read(&mut trailing)? != 0 {
            return Err(Error::ModelFormat(
                "trailing bytes after state matrix".into(),
            ));
        }
        let states = raw
            .chunks_exact(2)
            .map(|pair| u16::from_le_bytes([pair[0], pair[1]]))
            .collect();
        let ta = TaStateMatrix::from_states(rows, vocab_size, num_states, states)?;
        Model::from_parts(config, ta, vocab_fingerprint)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Model::read_from(BufReader::new(File::open(path)?))
    }

    /// Canonical JSON export for golden tests and debugging. Field order is
    /// fixed; states are nested per clause row.
    pub fn to_debug_json(&self) -> Result<String> {
        let cfg = self.config();
        let width = 2 * self.vocab_size();
        let states: Vec<&[u16]> = self.ta().states().chunks(width).collect();
        let doc = DebugModel {
            format_version: FORMAT_VERSION,
            num_classes: cfg.num_classes,
            clauses_per_class: cfg.clauses_per_class,
            vocab_size: self.vocab_size(),
            num_states: cfg.num_states,
            vote_clip_t: cfg.vote_clip_t,
            specificity_s: cfg.specificity_s,
            seed: cfg.seed,
            vocab_fingerprint: format!("{:016x}", self.vocab_fingerprint()),
            states,
        };
        Ok(serde_json::to_string(&doc)?)
    }
}

#[derive(Serialize)]
struct DebugModel<'a> {
    format_version: u32,
    num_classes: usize,
    clauses_per_class: usize,
    vocab_size: usize,
    num_states: u32,
    vote_clip_t: i32,
    specificity_s: f64,
    seed: u64,
    vocab_fingerprint: String,
    states: Vec<&'a [u16]>,
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    input
        .read_exact(&mut buf)
        .map_err(|_| Error::ModelFormat("header truncated".into()))?;
    Ok(u32::from_le_bytes(buf))
}

fn read_i32<R: Read>(input: &mut R) -> Result<i32> {
    let mut buf = [0u8; 4];
    input
        .read_exact(&mut buf)
        .map_err(|_| Error::ModelFormat("header truncated".into()))?;
    Ok(i32::from_le_bytes(buf))
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    input
        .read_exact(&mut buf)
        .map_err(|_| Error::ModelFormat("header truncated".into()))?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64<R: Read>(input: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    input
        .read_exact(&mut buf)
        .map_err(|_| Error::ModelFormat("header truncated".into()))?;
    Ok(f64::from_le_bytes(buf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{blank_model, random_model, set_include};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn binary_roundtrip_preserves_everything() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..5 {
            let model = random_model(&mut rng, 3, 4, 17);
            let mut buffer = Vec::new();
            model.write_to(&mut buffer).unwrap();
            let reloaded = Model::read_from(&buffer[..]).unwrap();
            assert_eq!(reloaded, model);
        }
    }

    #[test]
    fn save_load_via_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.model");
        let mut rng = StdRng::seed_from_u64(32);
        let model = random_model(&mut rng, 2, 4, 9);
        model.save(&path).unwrap();
        assert_eq!(Model::load(&path).unwrap(), model);

        // Same model, same bytes.
        let path2 = dir.path().join("m2.model");
        model.save(&path2).unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&path2).unwrap()
        );
    }

    #[test]
    fn corrupt_headers_are_rejected() {
        let model = blank_model(2, 3);
        let mut buffer = Vec::new();
        model.write_to(&mut buffer).unwrap();

        let mut bad_magic = buffer.clone();
        bad_magic[0] = b'X';
        assert!(matches!(
            Model::read_from(&bad_magic[..]),
            Err(Error::ModelFormat(_))
        ));

        let mut bad_version = buffer.clone();
        bad_version[8] = 9;
        assert!(matches!(
            Model::read_from(&bad_version[..]),
            Err(Error::ModelFormat(_))
        ));

        let truncated = &buffer[..buffer.len() - 3];
        assert!(matches!(
            Model::read_from(truncated),
            Err(Error::ModelFormat(_))
        ));

        let mut trailing = buffer.clone();
        trailing.push(0);
        assert!(matches!(
            Model::read_from(&trailing[..]),
            Err(Error::ModelFormat(_))
        ));

        assert!(Model::read_from(&buffer[..]).is_ok());
    }

    #[test]
    fn debug_json_is_stable() {
        let mut model = Model::from_parts(
            ModelConfig {
                num_classes: 2,
                clauses_per_class: 2,
                num_states: 4,
                vote_clip_t: 2,
                specificity_s: 3.0,
                seed: 7,
            },
            TaStateMatrix::new(4, 1, 4),
            0xabcd,
        )
        .unwrap();
        set_include(&mut model, 0, 0);
        let json = model.to_debug_json().unwrap();
        assert_eq!(
            json,
            "{\"format_version\":1,\"num_classes\":2,\"clauses_per_class\":2,\
             \"vocab_size\":1,\"num_states\":4,\"vote_clip_t\":2,\"specificity_s\":3.0,\
             \"seed\":7,\"vocab_fingerprint\":\"000000000000abcd\",\
             \"states\":[[2,1],[1,1],[1,1],[1,1]]}"
        );
    }
}
