//! The `eval` command.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use biocoref_core::eval::{parse_adjudications, EvalReport};
use biocoref_core::ResolutionOutput;

use crate::EvalArgs;

/// Reads resolver output from a file (one result or a stream) or from
/// every `*.json` file in a directory.
pub fn load_outputs(path: &Path) -> Result<Vec<ResolutionOutput>> {
    let files = if path.is_dir() {
        let mut files: Vec<_> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    let mut out = Vec::new();
    for f in files {
        let bytes = fs::read(&f).with_context(|| format!("cannot read {}", f.display()))?;
        out.extend(ResolutionOutput::from_json_stream(&bytes).with_context(|| format!("invalid output {}", f.display()))?);
    }
    Ok(out)
}

pub fn run_eval(args: &EvalArgs) -> Result<EvalReport> {
    let system = load_outputs(&args.system)?;
    let baseline = load_outputs(&args.baseline)?;
    let records = match &args.adjudications {
        Some(p) => {
            let bytes = fs::read(p).with_context(|| format!("cannot read {}", p.display()))?;
            Some(parse_adjudications(&bytes, args.mutant_mode)?)
        }
        None => None,
    };
    let report = EvalReport::build(&system, &baseline, records.as_deref(), args.mutant_mode, args.darpa_collapse)?;
    if let Some(p) = &args.report {
        fs::write(p, serde_json::to_string_pretty(&report)?).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(report)
}
