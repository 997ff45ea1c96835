//! `prunetm prune`: write pruned copies of a model plus per-fraction reports.

use std::path::{Path, PathBuf};

use prunetm_core::prune::prune_sweep;

use crate::commands::{load_model, percent_label, variant_name};
use crate::{CliError, CliResult};

pub struct PruneOutcome {
    pub outputs: Vec<(f64, PathBuf, PathBuf)>,
}

pub fn run(
    model_path: &Path,
    fractions: &[f64],
    out_dir: Option<&Path>,
) -> CliResult<PruneOutcome> {
    if fractions.is_empty() {
        return Err(CliError::Config(
            "no prune fraction given (--fraction or --sweep)".into(),
        ));
    }
    for &fraction in fractions {
        if !(0.0..=0.5).contains(&fraction) {
            return Err(CliError::Config(format!(
                "prune fraction {fraction} outside [0, 0.5]"
            )));
        }
    }
    let model = load_model(model_path)?;
    let base_dir = out_dir.map(Path::to_path_buf).unwrap_or_else(|| {
        model_path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .to_path_buf()
    });
    std::fs::create_dir_all(&base_dir)?;
    let stem = variant_name(model_path);

    let mut outputs = Vec::new();
    for (fraction, pruned, report) in prune_sweep(&model, fractions)? {
        let label = percent_label(fraction);
        let model_out = base_dir.join(format!("{stem}.pruned-{label}.model"));
        let report_out = base_dir.join(format!("{stem}.pruned-{label}.report.json"));
        pruned.save(&model_out)?;
        let json = serde_json::to_string_pretty(&report).map_err(prunetm_core::Error::from)?;
        std::fs::write(&report_out, json + "\n")?;
        outputs.push((fraction, model_out, report_out));
    }
    Ok(PruneOutcome { outputs })
}
