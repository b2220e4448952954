//! End-to-end resolution of one document: detection, the sieves in
//! order, clean-up, and event completion.

use std::collections::BTreeSet;

use crate::completion::{complete_document, Completion, DroppedEvent};
use crate::config::{ArgSchema, TriggerDictionary};
use crate::detect::AnaphorCandidate;
use crate::error::{ConfigError, ResolveError};
use crate::grounding::GroundingTable;
use crate::model::Document;
use crate::sieves::{
    sieve_class_np, sieve_cleanup, sieve_event_coref, sieve_exact_string, sieve_mutant_match, sieve_pronominal,
    sieve_shared_grounding, sieve_strict_head_match, Cleanup, SieveContext,
};
use crate::state::{CorefLink, CorefState, SieveName};
use crate::trace::Traces;

/// Configured resolver. Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Resolver {
    pub dict: TriggerDictionary,
    pub schema: ArgSchema,
    pub grounding: GroundingTable,
    disabled: BTreeSet<SieveName>,
    coref: bool,
}

/// Everything produced for one document.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub candidates: Vec<AnaphorCandidate>,
    pub state: CorefState,
    pub chains: Vec<Vec<String>>,
    pub cleanup: Cleanup,
    pub completion: Completion,
    pub traces: Traces,
}

impl Resolution {
    pub fn links(&self) -> &[CorefLink] {
        &self.state.links
    }

    /// Events removed by clean-up or lost during completion.
    pub fn dropped_events(&self, doc: &Document) -> Vec<DroppedEvent> {
        let mut out: Vec<DroppedEvent> = self
            .cleanup
            .removed
            .iter()
            .filter(|r| doc.event(&r.id).is_some())
            .map(|r| DroppedEvent {
                id: r.id.clone(),
                reason: r.reason.to_string(),
            })
            .collect();
        out.extend(self.completion.dropped.iter().cloned());
        out
    }
}

impl Resolver {
    pub fn new(dict: TriggerDictionary, schema: ArgSchema, grounding: GroundingTable) -> Result<Self, ConfigError> {
        dict.check_against(&schema)?;
        Ok(Resolver {
            dict,
            schema,
            grounding,
            disabled: BTreeSet::new(),
            coref: true,
        })
    }

    /// Default lexicon and schema with an empty grounding table.
    pub fn with_defaults() -> Self {
        Resolver::new(
            TriggerDictionary::default_dictionary(),
            ArgSchema::default_schema(),
            GroundingTable::empty(),
        )
        .expect("shipped configuration is consistent")
    }

    pub fn with_grounding(mut self, grounding: GroundingTable) -> Self {
        self.grounding = grounding;
        self
    }

    /// Switches a sieve off. Clean-up cannot be disabled.
    pub fn disable(&mut self, sieve: SieveName) -> Result<(), ConfigError> {
        if !sieve.is_optional() {
            return Err(ConfigError::Malformed(format!("sieve `{sieve}` cannot be disabled")));
        }
        self.disabled.insert(sieve);
        Ok(())
    }

    pub fn disabled(&self) -> &BTreeSet<SieveName> {
        &self.disabled
    }

    /// Turns off detection and every sieve: events are completed exactly
    /// as extracted.
    pub fn without_coref(mut self) -> Self {
        self.coref = false;
        self
    }

    pub fn coref_enabled(&self) -> bool {
        self.coref
    }

    pub fn resolve(&self, doc: &Document) -> Result<Resolution, ResolveError> {
        self.resolve_observed(doc, |_, _| {})
    }

    /// Like [`Resolver::resolve`], calling `observer` with the state after
    /// every sieve that ran (clean-up included).
    pub fn resolve_observed(
        &self,
        doc: &Document,
        mut observer: impl FnMut(SieveName, &CorefState),
    ) -> Result<Resolution, ResolveError> {
        let mut state = CorefState::new(doc);
        if !self.coref {
            let cleanup = Cleanup::default();
            let completion = complete_document(doc, &state, &self.schema, &cleanup);
            return Ok(Resolution {
                candidates: Vec::new(),
                chains: Vec::new(),
                state,
                cleanup,
                completion,
                traces: Traces::default(),
            });
        }
        let ctx = SieveContext::new(doc, &self.dict, &self.schema, &self.grounding);
        let mut traces = Traces::new(&ctx.candidates);
        let mut cleanup = Cleanup::default();
        for (cursor, sieve) in SieveName::PIPELINE.iter().copied().enumerate() {
            if self.disabled.contains(&sieve) {
                continue;
            }
            state.sieve_cursor = cursor;
            match sieve {
                SieveName::ExactString => sieve_exact_string(&ctx, &mut state),
                SieveName::SharedGrounding => sieve_shared_grounding(&ctx, &mut state),
                SieveName::MutantMatch => sieve_mutant_match(&ctx, &mut state, &mut traces)?,
                SieveName::StrictHeadMatch => sieve_strict_head_match(&ctx, &mut state, &mut traces)?,
                SieveName::Pronominal => sieve_pronominal(&ctx, &mut state, &mut traces)?,
                SieveName::ClassNp => sieve_class_np(&ctx, &mut state, &mut traces)?,
                SieveName::EventCoref => sieve_event_coref(&ctx, &mut state, &mut traces)?,
                SieveName::Cleanup => cleanup = sieve_cleanup(&ctx, &state, &mut traces),
            }
            observer(sieve, &state);
        }
        let completion = complete_document(doc, &state, &self.schema, &cleanup);
        Ok(Resolution {
            chains: state.chains(doc),
            candidates: ctx.candidates,
            state,
            cleanup,
            completion,
            traces,
        })
    }
}
