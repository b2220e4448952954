//! Batch resolution over a glob of input files.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use biocoref_core::io::load_documents;
use biocoref_core::{ArgSchema, Document, GroundingTable, ResolutionOutput, Resolver, SieveName, TriggerDictionary};

use crate::ResolveArgs;

/// Validated settings for one batch run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub out: PathBuf,
    pub resolver: Resolver,
    pub jobs: usize,
    pub strict: bool,
    pub provenance: bool,
}

fn read(path: &Path, what: &str) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {what} {}", path.display()))
}

impl RunConfig {
    /// Loads every referenced file and expands the glob. Any failure here
    /// is a configuration error and no document is processed.
    pub fn from_args(args: &ResolveArgs) -> Result<Self> {
        let dict = match &args.lexicon {
            Some(p) => TriggerDictionary::from_json(&String::from_utf8_lossy(&read(p, "lexicon")?))
                .with_context(|| format!("invalid lexicon {}", p.display()))?,
            None => TriggerDictionary::default_dictionary(),
        };
        let schema = match &args.schema {
            Some(p) => ArgSchema::from_json(&String::from_utf8_lossy(&read(p, "schema")?))
                .with_context(|| format!("invalid schema {}", p.display()))?,
            None => ArgSchema::default_schema(),
        };
        let grounding = match &args.grounding {
            Some(p) => GroundingTable::load(&read(p, "grounding table")?)
                .with_context(|| format!("invalid grounding table {}", p.display()))?,
            None => GroundingTable::empty(),
        };
        let mut resolver = Resolver::new(dict, schema, grounding)?;
        for name in &args.disable_sieve {
            resolver.disable(name.parse::<SieveName>()?)?;
        }
        if args.no_coref {
            resolver = resolver.without_coref();
        }
        let mut inputs = Vec::new();
        for entry in glob::glob(&args.input).with_context(|| format!("invalid glob `{}`", args.input))? {
            inputs.push(entry?);
        }
        inputs.sort();
        Ok(RunConfig {
            inputs,
            out: args.out.clone(),
            resolver,
            jobs: args.jobs,
            strict: args.strict,
            provenance: args.emit_provenance,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocFailure {
    pub input: String,
    pub doc_id: Option<String>,
    pub error: String,
}

/// Run totals, printed as one JSON line on stderr.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub docs: u64,
    pub failed: u64,
    pub anaphors_detected: u64,
    pub resolved: u64,
    pub resolved_per_sieve: BTreeMap<String, u64>,
    pub unresolved: u64,
    pub events_emitted: u64,
    pub events_dropped: u64,
    pub failures: Vec<DocFailure>,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            crate::EXIT_OK
        } else {
            crate::EXIT_FAILURES
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub summary: Summary,
    /// Written output files in input order.
    pub outputs: Vec<PathBuf>,
}

struct DocStats {
    detected: u64,
    per_sieve: BTreeMap<String, u64>,
    unresolved: u64,
    emitted: u64,
    dropped: u64,
}

struct Unit {
    input: PathBuf,
    doc: std::result::Result<Document, String>,
}

fn process(resolver: &Resolver, doc: &Document, provenance: bool) -> std::result::Result<(String, DocStats), String> {
    let res = resolver.resolve(doc).map_err(|e| e.to_string())?;
    let mut per_sieve = BTreeMap::new();
    for link in res.links() {
        *per_sieve.entry(link.sieve.to_string()).or_insert(0) += 1;
    }
    let stats = DocStats {
        detected: res.candidates.len() as u64,
        unresolved: res.candidates.iter().filter(|c| !res.state.is_resolved(&c.mention_id)).count() as u64,
        per_sieve,
        emitted: res.completion.events.len() as u64,
        dropped: res.dropped_events(doc).len() as u64,
    };
    Ok((ResolutionOutput::build(doc, &res, provenance).to_json(), stats))
}

fn log_line(log: &mut dyn Write, value: serde_json::Value) {
    let _ = writeln!(log, "{value}");
}

/// Resolves every input document and writes one output per document.
/// Configuration problems surface as `Err`; per-document problems are
/// listed in the summary.
pub fn run_resolve(cfg: &RunConfig, log: &mut dyn Write) -> Result<RunReport> {
    fs::create_dir_all(&cfg.out).with_context(|| format!("cannot create {}", cfg.out.display()))?;

    let mut units = Vec::new();
    for input in &cfg.inputs {
        match fs::read(input).map_err(|e| e.to_string()).and_then(|b| load_documents(&b).map_err(|e| e.to_string())) {
            Ok(docs) => units.extend(docs.into_iter().map(|d| Unit {
                input: input.clone(),
                doc: d.map_err(|e| e.to_string()),
            })),
            Err(e) => units.push(Unit {
                input: input.clone(),
                doc: Err(e),
            }),
        }
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    let results: Vec<std::result::Result<(String, DocStats), String>> = pool.install(|| {
        units
            .par_iter()
            .map(|u| match &u.doc {
                Ok(doc) => process(&cfg.resolver, doc, cfg.provenance),
                Err(e) => Err(e.clone()),
            })
            .collect()
    });

    let mut summary = Summary::default();
    let mut outputs = Vec::new();
    let mut seen = BTreeSet::new();
    for (unit, result) in units.iter().zip(results) {
        let doc_id = unit.doc.as_ref().ok().map(|d| d.doc_id.clone());
        let result = match (&doc_id, result) {
            (Some(id), Ok(_)) if !seen.insert(id.clone()) => Err(format!("duplicate doc_id `{id}`")),
            (_, r) => r,
        };
        summary.docs += 1;
        match result {
            Ok((json, stats)) => {
                let id = doc_id.expect("resolved documents have IDs");
                if id.is_empty() || id.contains(['/', '\\']) || id.starts_with('.') {
                    bail!("doc_id `{id}` cannot be used as a file name");
                }
                let path = cfg.out.join(format!("{id}.json"));
                fs::write(&path, json).with_context(|| format!("cannot write {}", path.display()))?;
                outputs.push(path);
                summary.anaphors_detected += stats.detected;
                summary.unresolved += stats.unresolved;
                for (sieve, n) in stats.per_sieve {
                    summary.resolved += n;
                    *summary.resolved_per_sieve.entry(sieve).or_insert(0) += n;
                }
                summary.events_emitted += stats.emitted;
                summary.events_dropped += stats.dropped;
            }
            Err(error) => {
                let failure = DocFailure {
                    input: unit.input.display().to_string(),
                    doc_id,
                    error,
                };
                log_line(
                    log,
                    json!({"level": "error", "event": "document_failed", "input": failure.input,
                           "doc_id": failure.doc_id, "error": failure.error}),
                );
                summary.failed += 1;
                summary.failures.push(failure);
                if cfg.strict {
                    break;
                }
            }
        }
    }
    log_line(log, json!({"level": "info", "event": "summary", "summary": summary}));
    Ok(RunReport { summary, outputs })
}
