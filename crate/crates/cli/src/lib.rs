//! Command-line driver for the resolver: batch resolution, evaluation,
//! trace inspection and the example corpus.

pub mod corpus;
pub mod evaluate;
pub mod inspect;
pub mod resolve;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use corpus::{check_fixtures, write_fixtures, FixtureCheck};
pub use evaluate::{load_outputs, run_eval};
pub use inspect::{run_inspect, UnknownAnaphor};
pub use resolve::{run_resolve, RunConfig, RunReport, Summary};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when some document (or check) failed.
pub const EXIT_FAILURES: i32 = 1;
/// Exit status for unusable configuration or input files.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "biocoref", version, about = "Sieve-based coreference resolution for biomedical events")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolve every document matched by a glob.
    Resolve(ResolveArgs),
    /// Count events and score adjudications.
    Eval(EvalArgs),
    /// Print the sieve trace of one anaphor.
    Inspect(InspectArgs),
    /// Write or check the example corpus.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ResolveArgs {
    /// Glob of input documents (one JSON document or a stream per file).
    #[arg(long = "in")]
    pub input: String,
    /// Output directory; one `<doc_id>.json` per document.
    #[arg(long)]
    pub out: PathBuf,
    /// Grounding table (TSV).
    #[arg(long)]
    pub grounding: Option<PathBuf>,
    /// Trigger and class lexicon (JSON).
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Event argument schema (JSON).
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// Sieve to switch off; may be repeated.
    #[arg(long = "disable-sieve", value_name = "NAME")]
    pub disable_sieve: Vec<String>,
    /// Worker threads (0 uses every core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Stop at the first failing document.
    #[arg(long)]
    pub strict: bool,
    /// Include per-anaphor traces and per-event sieves.
    #[arg(long = "emit-provenance")]
    pub emit_provenance: bool,
    /// Skip coreference entirely and complete events as extracted.
    #[arg(long = "no-coref")]
    pub no_coref: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Output of the coreference-enabled run (file, stream or directory).
    #[arg(long)]
    pub system: PathBuf,
    /// Output of the run with coreference disabled.
    #[arg(long)]
    pub baseline: PathBuf,
    /// Adjudication CSV: `event_id,judgment[,error_class]`.
    #[arg(long)]
    pub adjudications: Option<PathBuf>,
    /// Accept half-point judgments.
    #[arg(long = "mutant-mode")]
    pub mutant_mode: bool,
    /// Count a regulation and the event it controls as one event.
    #[arg(long = "darpa-collapse")]
    pub darpa_collapse: bool,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct InspectArgs {
    /// Resolver output written with `--emit-provenance`.
    pub output: PathBuf,
    /// Anaphor mention ID.
    pub anaphor: String,
    /// Document to pick when the file holds several.
    #[arg(long)]
    pub doc: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FixturesArgs {
    /// Corpus directory.
    #[arg(long)]
    pub dir: PathBuf,
    /// Compare the directory against the built-in corpus and resolve it
    /// instead of writing.
    #[arg(long)]
    pub check: bool,
}
