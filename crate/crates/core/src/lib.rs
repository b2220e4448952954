//! Deterministic, sieve-based coreference resolution for biomedical event
//! mentions.
//!
//! A [`Resolver`] takes a standoff [`Document`] with entity and event
//! mentions, detects anaphors, links them to antecedents through an
//! ordered series of sieves, and completes events whose arguments were
//! anaphoric. Results serialize through [`io::ResolutionOutput`].

pub mod completion;
pub mod config;
pub mod detect;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod grounding;
pub mod io;
pub mod model;
pub mod pipeline;
pub mod search;
pub mod sieves;
pub mod state;
pub mod synth;
pub mod trace;

pub use completion::{CompletedEvent, Completion, DroppedEvent};
pub use config::{ArgSchema, Cardinality, TriggerDictionary};
pub use detect::{AnaphorCandidate, AnaphorKind};
pub use error::{CompletionError, ConfigError, CorpusError, EvalError, GroundingError, ResolveError};
pub use grounding::GroundingTable;
pub use io::ResolutionOutput;
pub use model::{
    Argument, Document, EntityClass, EntityMention, EventMention, MentionKey, MutationKind, MutationRecord, Polarity,
    Sentence, Span, Token,
};
pub use pipeline::{Resolution, Resolver};
pub use state::{CorefLink, CorefState, SieveName};
pub use trace::{AnaphorTrace, TraceOutcome};
