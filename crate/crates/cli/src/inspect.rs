//! Human-readable sieve traces.

use std::fmt::{self, Write as _};
use std::fs;

use anyhow::{anyhow, Context, Result};

use biocoref_core::search::Verdict;
use biocoref_core::{ResolutionOutput, TraceOutcome};

use crate::InspectArgs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAnaphor(pub String);

impl fmt::Display for UnknownAnaphor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown anaphor `{}`", self.0)
    }
}

impl std::error::Error for UnknownAnaphor {}

fn surface(output: &ResolutionOutput, id: &str) -> String {
    let doc = &output.document;
    let span = doc
        .entities
        .iter()
        .find(|e| e.id == id)
        .map(|e| (e.start, e.end))
        .or_else(|| doc.events.iter().find(|e| e.id == id).map(|e| (e.trigger_start, e.trigger_end)));
    match span {
        Some((s, e)) => doc.text.chars().skip(s).take(e - s).collect(),
        None => String::new(),
    }
}

/// Renders the trace of `anaphor` in `output`.
pub fn render_trace(output: &ResolutionOutput, anaphor: &str) -> Result<String> {
    let traces = output
        .traces
        .as_ref()
        .ok_or_else(|| anyhow!("output carries no traces; resolve again with --emit-provenance"))?;
    let trace = traces
        .iter()
        .find(|t| t.anaphor == anaphor)
        .ok_or_else(|| UnknownAnaphor(anaphor.to_string()))?;
    let mut s = String::new();
    writeln!(
        s,
        "anaphor {} \"{}\" ({}, {}) at {}..{} in {}",
        trace.anaphor,
        surface(output, anaphor),
        trace.kind,
        trace.cardinality,
        trace.span.start,
        trace.span.end,
        output.doc_id()
    )?;
    for attempt in &trace.attempts {
        writeln!(s, "  {}", attempt.sieve)?;
        if let Some(note) = &attempt.note {
            writeln!(s, "    note: {note}")?;
        }
        for c in &attempt.considered {
            let verdict = match &c.verdict {
                Verdict::Accepted => "accepted".to_string(),
                Verdict::Excluded { exclusion } => format!("excluded: {exclusion}"),
            };
            writeln!(s, "    {} \"{}\" {verdict}", c.mention, surface(output, &c.mention))?;
        }
    }
    match &trace.outcome {
        TraceOutcome::Resolved { sieve, antecedents } => {
            let named: Vec<String> = antecedents
                .iter()
                .map(|a| format!("{a} \"{}\"", surface(output, a)))
                .collect();
            writeln!(s, "LINKED {} -> {} by {sieve}", trace.anaphor, named.join(", "))?;
        }
        TraceOutcome::Dropped { reason } => writeln!(s, "DROPPED {}: {reason}", trace.anaphor)?,
        TraceOutcome::Pending => writeln!(s, "PENDING {}", trace.anaphor)?,
    }
    Ok(s)
}

pub fn run_inspect(args: &InspectArgs) -> Result<String> {
    let bytes = fs::read(&args.output).with_context(|| format!("cannot read {}", args.output.display()))?;
    let outputs = ResolutionOutput::from_json_stream(&bytes)?;
    let output = match &args.doc {
        Some(id) => outputs
            .iter()
            .find(|o| o.doc_id() == id)
            .ok_or_else(|| anyhow!("no document `{id}` in {}", args.output.display()))?,
        None => outputs.first().ok_or_else(|| anyhow!("{} is empty", args.output.display()))?,
    };
    render_trace(output, &args.anaphor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use biocoref_core::fixtures::{corpus, corpus_resolver};

    fn output(name: &str, provenance: bool) -> ResolutionOutput {
        let f = corpus().into_iter().find(|f| f.name == name).unwrap();
        let res = corpus_resolver().resolve(&f.doc).unwrap();
        ResolutionOutput::build(&f.doc, &res, provenance)
    }

    #[test]
    fn unknown_anaphor_is_typed() {
        let err = render_trace(&output("ex12_foxp3", true), "T1").unwrap_err();
        assert_eq!(err.downcast_ref::<UnknownAnaphor>(), Some(&UnknownAnaphor("T1".into())));
    }

    #[test]
    fn missing_traces_is_reported() {
        let err = render_trace(&output("ex12_foxp3", false), "T2").unwrap_err();
        assert!(err.to_string().contains("--emit-provenance"));
    }

    #[test]
    fn mutant_trace_names_all_antecedents() {
        let text = render_trace(&output("ex09_fgfr3", true), "T7").unwrap();
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("LINKED T7 -> T1 \"N540K\""), "{last}");
        assert!(last.ends_with("by mutant_match"), "{last}");
    }
}
