//! Per-anaphor record of what each sieve looked at and decided.

use serde::{Deserialize, Serialize};

use crate::detect::AnaphorCandidate;
use crate::model::Span;
use crate::search::Considered;
use crate::state::SieveName;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveAttempt {
    pub sieve: SieveName,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub considered: Vec<Considered>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TraceOutcome {
    Pending,
    Resolved { sieve: SieveName, antecedents: Vec<String> },
    Dropped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnaphorTrace {
    pub anaphor: String,
    pub kind: String,
    pub span: Span,
    pub cardinality: String,
    pub attempts: Vec<SieveAttempt>,
    pub outcome: TraceOutcome,
}

impl AnaphorTrace {
    pub fn new(candidate: &AnaphorCandidate) -> Self {
        AnaphorTrace {
            anaphor: candidate.mention_id.clone(),
            kind: candidate.kind.label().to_string(),
            span: candidate.span,
            cardinality: candidate.cardinality.to_string(),
            attempts: Vec::new(),
            outcome: TraceOutcome::Pending,
        }
    }

    pub fn attempt(&mut self, sieve: SieveName, considered: Vec<Considered>, note: Option<String>) {
        self.attempts.push(SieveAttempt { sieve, considered, note });
    }
}

/// Traces for one document, in candidate order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Traces {
    pub entries: Vec<AnaphorTrace>,
}

impl Traces {
    pub fn new(candidates: &[AnaphorCandidate]) -> Self {
        Traces {
            entries: candidates.iter().map(AnaphorTrace::new).collect(),
        }
    }

    pub fn get_mut(&mut self, anaphor: &str) -> Option<&mut AnaphorTrace> {
        self.entries.iter_mut().find(|t| t.anaphor == anaphor)
    }

    pub fn get(&self, anaphor: &str) -> Option<&AnaphorTrace> {
        self.entries.iter().find(|t| t.anaphor == anaphor)
    }

    pub(crate) fn record(&mut self, anaphor: &str, sieve: SieveName, considered: Vec<Considered>, note: Option<String>) {
        if let Some(t) = self.get_mut(anaphor) {
            t.attempt(sieve, considered, note);
        }
    }

    pub(crate) fn resolved(&mut self, anaphor: &str, sieve: SieveName, antecedents: &[String]) {
        if let Some(t) = self.get_mut(anaphor) {
            t.outcome = TraceOutcome::Resolved {
                sieve,
                antecedents: antecedents.to_vec(),
            };
        }
    }

    pub(crate) fn dropped(&mut self, anaphor: &str, reason: impl Into<String>) {
        if let Some(t) = self.get_mut(anaphor) {
            t.outcome = TraceOutcome::Dropped { reason: reason.into() };
        }
    }
}
