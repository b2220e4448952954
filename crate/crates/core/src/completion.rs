//! Turns resolved links into the final event set: anaphoric arguments
//! are replaced by their antecedents and n-ary events are split into
//! events with one filler per slot.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::config::ArgSchema;
use crate::error::CompletionError;
use crate::model::{role_base, Argument, Document, EventMention, MentionKey, Polarity, Span};
use crate::sieves::Cleanup;
use crate::state::CorefState;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletedEvent {
    pub id: String,
    pub trigger_span: Span,
    pub event_type: String,
    pub arguments: Vec<Argument>,
    pub polarity: Polarity,
    pub trigger_surface: String,
    /// ID of the event mention this one was produced from.
    pub derived_from: String,
    /// IDs of the links (anaphor IDs) this event depends on, sorted.
    pub provenance: Vec<String>,
}

impl CompletedEvent {
    /// The input event, unchanged.
    pub fn from_mention(event: &EventMention) -> Self {
        CompletedEvent {
            id: event.id.clone(),
            trigger_span: event.trigger_span,
            event_type: event.event_type.clone(),
            arguments: event.arguments.clone(),
            polarity: event.polarity,
            trigger_surface: event.trigger_surface.clone(),
            derived_from: event.id.clone(),
            provenance: Vec::new(),
        }
    }
}

/// Completed events produced so far, keyed by source event ID.
pub type Realizations = BTreeMap<String, Vec<CompletedEvent>>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Filler {
    mention: String,
    entity: Option<MentionKey>,
    provenance: BTreeSet<String>,
}

fn fillers_for(
    doc: &Document,
    arg: &Argument,
    state: &CorefState,
    removed: &BTreeSet<String>,
    nested: &Realizations,
) -> Vec<Filler> {
    if removed.contains(&arg.mention_ref) {
        return Vec::new();
    }
    match doc.key(&arg.mention_ref) {
        Some(MentionKey::Entity(_)) => match state.link_for(&arg.mention_ref) {
            Some(link) => link
                .antecedent_ids
                .iter()
                .map(|a| Filler {
                    mention: a.clone(),
                    entity: doc.key(a),
                    provenance: BTreeSet::from([link.anaphor_id.clone()]),
                })
                .collect(),
            None => vec![Filler {
                mention: arg.mention_ref.clone(),
                entity: doc.key(&arg.mention_ref),
                provenance: BTreeSet::new(),
            }],
        },
        Some(MentionKey::Event(_)) => nested
            .get(&arg.mention_ref)
            .map(|rs| {
                rs.iter()
                    .map(|r| Filler {
                        mention: r.id.clone(),
                        entity: None,
                        provenance: r.provenance.iter().cloned().collect(),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        None => Vec::new(),
    }
}

fn finish(event: &EventMention, mut out: Vec<CompletedEvent>) -> Vec<CompletedEvent> {
    if out.len() > 1 {
        for (k, e) in out.iter_mut().enumerate() {
            e.id = format!("{}.{}", event.id, k + 1);
        }
    } else if let Some(e) = out.first_mut() {
        e.id = event.id.clone();
    }
    out
}

/// Completes one event. Events it takes as arguments, and for a resolved
/// nominal event its antecedent events, must already be in `nested`.
///
/// Each anaphoric argument is replaced by its antecedents. A role needing
/// `c >= 2` fillers that is written as one slot holding at least `c`
/// fillers yields every `c`-subset; otherwise each slot contributes one
/// filler per output event. Combinations pairing two members of one
/// chain are skipped.
pub fn substitute_and_split(
    doc: &Document,
    event: &EventMention,
    state: &CorefState,
    schema: &ArgSchema,
    removed: &BTreeSet<String>,
    nested: &Realizations,
) -> Result<Vec<CompletedEvent>, CompletionError> {
    let incomplete = || CompletionError::IncompleteAfterSubstitution {
        event_id: event.id.clone(),
    };

    if let Some(link) = state.link_for(&event.id) {
        let mut out = Vec::new();
        for antecedent in &link.antecedent_ids {
            for r in nested.get(antecedent).into_iter().flatten() {
                let mut provenance: BTreeSet<String> = r.provenance.iter().cloned().collect();
                provenance.insert(link.anaphor_id.clone());
                out.push(CompletedEvent {
                    id: event.id.clone(),
                    trigger_span: event.trigger_span,
                    event_type: event.event_type.clone(),
                    arguments: r.arguments.clone(),
                    polarity: event.polarity,
                    trigger_surface: event.trigger_surface.clone(),
                    derived_from: event.id.clone(),
                    provenance: provenance.into_iter().collect(),
                });
            }
        }
        if out.is_empty() {
            return Err(incomplete());
        }
        return Ok(finish(event, out));
    }

    // Slots by role label, in order of first appearance.
    let mut slots: Vec<(String, Vec<Filler>)> = Vec::new();
    for arg in &event.arguments {
        let fillers = fillers_for(doc, arg, state, removed, nested);
        match slots.iter_mut().find(|(label, _)| *label == arg.role) {
            Some((_, existing)) => existing.extend(fillers),
            None => slots.push((arg.role.clone(), fillers)),
        }
    }

    let row = schema.row(&event.event_type);
    let mut per_base: Vec<Vec<Vec<(String, Filler)>>> = Vec::new();
    let mut bases: Vec<(&str, Vec<&(String, Vec<Filler>)>)> = Vec::new();
    for slot in slots.iter().filter(|(_, f)| !f.is_empty()) {
        let base = role_base(&slot.0);
        match bases.iter_mut().find(|(b, _)| *b == base) {
            Some((_, group)) => group.push(slot),
            None => bases.push((base, vec![slot])),
        }
    }
    for (base, group) in bases {
        let count = row.and_then(|r| r.get(base)).map_or(1, |spec| spec.count);
        let choices: Vec<Vec<(String, Filler)>> = if count >= 2 && group.len() == 1 && group[0].1.len() >= count {
            group[0]
                .1
                .iter()
                .cloned()
                .combinations(count)
                .map(|combo| {
                    combo
                        .into_iter()
                        .enumerate()
                        .map(|(k, f)| (format!("{base}{}", k + 1), f))
                        .collect()
                })
                .collect()
        } else {
            group
                .iter()
                .map(|(label, fillers)| fillers.iter().map(|f| (label.clone(), f.clone())).collect::<Vec<_>>())
                .multi_cartesian_product()
                .collect()
        };
        per_base.push(choices);
    }

    let combos: Vec<Vec<(String, Filler)>> = if per_base.is_empty() {
        vec![Vec::new()]
    } else {
        per_base
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| parts.into_iter().flatten().collect())
            .collect()
    };

    let mut out = Vec::new();
    for combo in combos {
        let distinct = combo.iter().map(|(_, f)| &f.mention).all_unique();
        let chained = combo
            .iter()
            .filter_map(|(_, f)| f.entity)
            .tuple_combinations()
            .any(|(a, b)| state.same_chain(doc, a, b));
        if !distinct || chained {
            continue;
        }
        if !schema.is_complete_slots(&event.event_type, combo.iter().map(|(l, _)| (l.as_str(), 1))) {
            continue;
        }
        let provenance: BTreeSet<String> = combo.iter().flat_map(|(_, f)| f.provenance.iter().cloned()).collect();
        out.push(CompletedEvent {
            id: event.id.clone(),
            trigger_span: event.trigger_span,
            event_type: event.event_type.clone(),
            arguments: combo.iter().map(|(l, f)| Argument::new(l.clone(), f.mention.clone())).collect(),
            polarity: event.polarity,
            trigger_surface: event.trigger_surface.clone(),
            derived_from: event.id.clone(),
            provenance: provenance.into_iter().collect(),
        });
    }
    if out.is_empty() {
        return Err(incomplete());
    }
    Ok(finish(event, out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedEvent {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Completion {
    /// Completed events, grouped by source event in document order.
    pub events: Vec<CompletedEvent>,
    /// Events that could not be completed.
    pub dropped: Vec<DroppedEvent>,
}

/// Completes every event that survived clean-up.
pub fn complete_document(doc: &Document, state: &CorefState, schema: &ArgSchema, cleanup: &Cleanup) -> Completion {
    let removed = cleanup.ids();
    let mut done: Realizations = BTreeMap::new();
    let mut failed: BTreeSet<String> = BTreeSet::new();
    let mut dropped = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn visit(
        doc: &Document,
        i: usize,
        state: &CorefState,
        schema: &ArgSchema,
        removed: &BTreeSet<String>,
        done: &mut Realizations,
        failed: &mut BTreeSet<String>,
        active: &mut BTreeSet<usize>,
        dropped: &mut Vec<DroppedEvent>,
    ) {
        let event = &doc.events[i];
        if done.contains_key(&event.id) || failed.contains(&event.id) || removed.contains(&event.id) || !active.insert(i) {
            return;
        }
        let mut deps: Vec<&str> = event.arguments.iter().map(|a| a.mention_ref.as_str()).collect();
        if let Some(link) = state.link_for(&event.id) {
            deps.extend(link.antecedent_ids.iter().map(String::as_str));
        }
        for dep in deps {
            if let Some(MentionKey::Event(j)) = doc.key(dep) {
                visit(doc, j, state, schema, removed, done, failed, active, dropped);
            }
        }
        match substitute_and_split(doc, event, state, schema, removed, done) {
            Ok(events) => {
                done.insert(event.id.clone(), events);
            }
            Err(e) => {
                failed.insert(event.id.clone());
                dropped.push(DroppedEvent {
                    id: event.id.clone(),
                    reason: e.to_string(),
                });
            }
        }
        active.remove(&i);
    }

    let mut active = BTreeSet::new();
    for i in 0..doc.events.len() {
        visit(doc, i, state, schema, &removed, &mut done, &mut failed, &mut active, &mut dropped);
    }
    let events = doc
        .events
        .iter()
        .filter_map(|e| done.remove(&e.id))
        .flatten()
        .collect();
    Completion { events, dropped }
}
