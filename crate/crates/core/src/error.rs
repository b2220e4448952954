use thiserror::Error;

/// Errors raised while reading or writing standoff documents.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// `at` names the offending mention ID or character offset.
    #[error("schema violation at {at}: {reason}")]
    SchemaViolation { at: String, reason: String },
}

impl CorpusError {
    pub(crate) fn violation(at: impl Into<String>, reason: impl Into<String>) -> Self {
        CorpusError::SchemaViolation {
            at: at.into(),
            reason: reason.into(),
        }
    }

    /// The ID or offset named by a schema violation.
    pub fn location(&self) -> Option<&str> {
        match self {
            CorpusError::SchemaViolation { at, .. } => Some(at),
            CorpusError::MalformedInput(_) => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundingError {
    #[error("malformed grounding row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("grounding table is not valid UTF-8")]
    Encoding,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Malformed(String),
    #[error("lexicon entry `{0}` is also listed as a stopword")]
    LexiconOverlap(String),
    #[error("unknown entity class or argument kind `{0}`")]
    UnknownClass(String),
    #[error("unknown event type `{0}` referenced by the trigger dictionary")]
    UnknownEventType(String),
    #[error("unknown cardinality `{0}`")]
    UnknownCardinality(String),
    #[error("unknown sieve `{0}`")]
    UnknownSieve(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("no argument schema for event type `{0}`")]
    SchemaMissing(String),
    #[error("event type `{event_type}` has no schema row for role `{role}`")]
    UnknownRole { event_type: String, role: String },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("document sets differ between runs: {0}")]
    CorpusMismatch(String),
    #[error("no adjudication records")]
    EmptySample,
    #[error("record for event `{0}` is a precision error without an error class")]
    MissingErrorClass(String),
    #[error("invalid judgment `{value}` for event `{event_id}`")]
    InvalidJudgment { event_id: String, value: String },
    #[error("unknown error class `{0}`")]
    UnknownErrorClass(String),
    #[error("malformed adjudication file: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("event `{event_id}` lacks required arguments after substitution")]
    IncompleteAfterSubstitution { event_id: String },
}
