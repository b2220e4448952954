//! Word-order antecedent search with domain constraints.
//!
//! The search starts at the beginning of the anaphor's sentence and moves
//! rightward, stopping before the anaphor. If that does not yield enough
//! antecedents it walks the immediately previous sentence left to right,
//! and goes no further back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{ArgKind, ArgSchema, Cardinality};
use crate::detect::{is_plural_mention, AnaphorCandidate, EntityForm, Target};
use crate::error::ResolveError;
use crate::grounding::GroundingTable;
use crate::model::{Document, EventMention, MentionKey, Span};
use crate::state::CorefState;

/// Why a mention was passed over during a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", content = "detail", rename_all = "snake_case")]
pub enum Exclusion {
    /// Does not end before the anaphor starts.
    Offset,
    /// Itself an anaphoric expression.
    AnaphoricForm,
    /// Argument of the anaphor's own event.
    Participant(String),
    /// Coreferent with an argument of the anaphor's own event.
    ChainWithParticipant(String),
    /// Wrong entity class for what the anaphor names.
    ClassFilter,
    /// The anaphor's role cannot take this kind of argument.
    TypeFilter,
    /// Plural mention for a singular anaphor.
    Number,
    /// Lacks the mutation the anaphor asks for.
    Mutation,
    /// Event of another type.
    EventType,
    /// Event without its full set of arguments.
    Incomplete,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exclusion::Offset => f.write_str("offset: does not precede the anaphor"),
            Exclusion::AnaphoricForm => f.write_str("anaphoric expression"),
            Exclusion::Participant(id) => write!(f, "participant in the current event ({id})"),
            Exclusion::ChainWithParticipant(id) => write!(f, "chain with participant {id}"),
            Exclusion::ClassFilter => f.write_str("class filter"),
            Exclusion::TypeFilter => f.write_str("role type filter"),
            Exclusion::Number => f.write_str("number disagreement"),
            Exclusion::Mutation => f.write_str("mutation filter"),
            Exclusion::EventType => f.write_str("event type mismatch"),
            Exclusion::Incomplete => f.write_str("incomplete event"),
        }
    }
}

/// Extra antecedent requirement used by the mutant sieves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationFilter {
    /// Any mutation record at all.
    AnyMutation,
    /// A mutation record with exactly this label.
    Label(String),
    /// A specified mutant of the named protein. The protein matches by
    /// grounding ID or by appearing as a hyphen/space-separated part of
    /// the antecedent surface.
    SpecifiedMutantOf { protein: String, grounding: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConstraints {
    pub required_class: Option<Target>,
    pub excluded_ids: BTreeSet<String>,
    /// Chain IDs (valid for the state the constraints were built from)
    /// mapped to the participant that placed them here.
    pub excluded_chains: BTreeMap<usize, String>,
    /// Admissible argument kinds for the anaphor's role(s); `None` means
    /// unconstrained.
    pub type_filter: Option<BTreeSet<ArgKind>>,
    pub need: Cardinality,
    pub mutation: Option<MutationFilter>,
    /// Skip mentions coreferent with one already collected.
    pub distinct_chains: bool,
}

impl SearchConstraints {
    pub fn unconstrained(need: Cardinality) -> Self {
        SearchConstraints {
            required_class: None,
            excluded_ids: BTreeSet::new(),
            excluded_chains: BTreeMap::new(),
            type_filter: None,
            need,
            mutation: None,
            distinct_chains: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Excluded { exclusion: Exclusion },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Considered {
    pub mention: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    /// Accepted antecedents in text order.
    pub found: Vec<String>,
    /// Every mention examined, in scan order.
    pub considered: Vec<Considered>,
}

/// Read-only view of a document for antecedent search.
#[derive(Debug, Clone)]
pub struct SearchSpace<'a> {
    pub doc: &'a Document,
    pub forms: &'a [EntityForm],
    /// Event mentions that are themselves nominal anaphors.
    pub anaphoric_events: BTreeSet<usize>,
    pub schema: &'a ArgSchema,
    pub grounding: &'a GroundingTable,
}

impl<'a> SearchSpace<'a> {
    /// Mentions of one sentence in text order: entities for entity
    /// anaphors, events for event anaphors.
    fn sentence_mentions(&self, sentence: usize, events: bool) -> Vec<MentionKey> {
        let span = self.doc.sentences[sentence].span;
        let mut keys: Vec<MentionKey> = if events {
            (0..self.doc.events.len()).map(MentionKey::Event).collect()
        } else {
            (0..self.doc.entities.len()).map(MentionKey::Entity).collect()
        };
        keys.retain(|k| {
            let start = self.doc.extent(*k).start;
            span.start <= start && start < span.end
        });
        keys.sort_by_key(|k| (self.doc.extent(*k).start, self.doc.ordinal(*k)));
        keys
    }

    fn coordinated(&self, left: MentionKey, right: MentionKey) -> bool {
        let a = self.doc.extent(left);
        let b = self.doc.extent(right);
        if a.end > b.start {
            return false;
        }
        let between = self.doc.slice(Span::new(a.end, b.start)).unwrap_or("");
        between
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .all(|w| matches!(w.to_lowercase().as_str(), "and" | "or" | "&"))
    }

    /// Checks one mention against the constraints.
    pub fn admits(
        &self,
        anaphor: &AnaphorCandidate,
        constraints: &SearchConstraints,
        state: &CorefState,
        key: MentionKey,
    ) -> Result<(), Exclusion> {
        let doc = self.doc;
        if doc.extent(key).end > anaphor.span.start {
            return Err(Exclusion::Offset);
        }
        let id = doc.id_of(key);
        match key {
            MentionKey::Entity(i) if self.forms[i].is_anaphoric() => return Err(Exclusion::AnaphoricForm),
            MentionKey::Event(i) if self.anaphoric_events.contains(&i) => return Err(Exclusion::AnaphoricForm),
            _ => {}
        }
        if constraints.excluded_ids.contains(id) {
            return Err(Exclusion::Participant(id.to_string()));
        }
        if let Some(p) = constraints.excluded_chains.get(&state.chain_of(doc, key)) {
            return Err(Exclusion::ChainWithParticipant(p.clone()));
        }
        match key {
            MentionKey::Entity(i) => {
                let entity = &doc.entities[i];
                match &constraints.required_class {
                    Some(Target::Class(c)) if !entity.label.satisfies(*c) => return Err(Exclusion::ClassFilter),
                    Some(Target::Event(_)) => return Err(Exclusion::ClassFilter),
                    _ => {}
                }
                if let Some(kinds) = &constraints.type_filter {
                    if !kinds.contains(&ArgKind::Entity(entity.label)) {
                        return Err(Exclusion::TypeFilter);
                    }
                }
                if let Some(filter) = &constraints.mutation {
                    if !self.mutation_matches(filter, i) {
                        return Err(Exclusion::Mutation);
                    }
                }
                if matches!(constraints.need, Cardinality::One | Cardinality::Exactly(1)) && is_plural_mention(entity) {
                    return Err(Exclusion::Number);
                }
            }
            MentionKey::Event(i) => {
                let event = &doc.events[i];
                match &constraints.required_class {
                    Some(Target::Event(t)) if *t != event.event_type => return Err(Exclusion::EventType),
                    Some(Target::Class(_)) => return Err(Exclusion::ClassFilter),
                    _ => {}
                }
                if let Some(kinds) = &constraints.type_filter {
                    if !kinds.contains(&ArgKind::Event) {
                        return Err(Exclusion::TypeFilter);
                    }
                }
                if !self.schema.is_complete(event) {
                    return Err(Exclusion::Incomplete);
                }
            }
        }
        Ok(())
    }

    fn mutation_matches(&self, filter: &MutationFilter, entity: usize) -> bool {
        let e = &self.doc.entities[entity];
        match filter {
            MutationFilter::AnyMutation => !e.mutations.is_empty(),
            MutationFilter::Label(label) => e.mutations.iter().any(|m| m.label.as_deref() == Some(label)),
            MutationFilter::SpecifiedMutantOf { protein, grounding } => {
                if !e.has_specified_mutation() {
                    return false;
                }
                let grounded = match (grounding, self.grounding.ground_mention(e)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                };
                grounded
                    || e.surface
                        .split(|c: char| c.is_whitespace() || c == '-')
                        .any(|part| part == protein)
            }
        }
    }
}

/// Greedy left-to-right antecedent search. See the module docs for the
/// window. `One`/`Exactly(n)` take the first `n` admissible mentions.
/// `AtLeastTwo` is met by a single plural mention, or by two mentions
/// extended with any directly coordinated admissible mentions that
/// follow ("Smad-1, Smad-5, and Smad-8"). An unmet need returns the
/// partial (possibly empty) result.
pub fn linear_search(
    space: &SearchSpace<'_>,
    anaphor: &AnaphorCandidate,
    constraints: &SearchConstraints,
    state: &CorefState,
) -> SearchOutcome {
    let mut outcome = SearchOutcome::default();
    let Some(current) = space.doc.sentence_at(anaphor.span.start) else {
        return outcome;
    };
    let events = matches!(anaphor.target, Some(Target::Event(_)));
    let mut found: Vec<MentionKey> = Vec::new();

    let regions = [Some(current), current.checked_sub(1)];
    'regions: for sentence in regions.into_iter().flatten() {
        let mentions = space.sentence_mentions(sentence, events);
        let mut idx = 0;
        while idx < mentions.len() {
            let key = mentions[idx];
            idx += 1;
            if space.doc.id_of(key) == anaphor.mention_id {
                continue;
            }
            let verdict = admit_next(space, anaphor, constraints, state, key, &found);
            outcome.considered.push(Considered {
                mention: space.doc.id_of(key).to_string(),
                verdict: match &verdict {
                    Ok(()) => Verdict::Accepted,
                    Err(e) => Verdict::Excluded { exclusion: e.clone() },
                },
            });
            if verdict.is_err() {
                continue;
            }
            found.push(key);
            match constraints.need {
                Cardinality::One | Cardinality::Exactly(_) => {
                    if found.len() >= constraints.need.minimum() {
                        break 'regions;
                    }
                }
                Cardinality::AtLeastTwo => {
                    if found.len() == 1 {
                        if let MentionKey::Entity(i) = key {
                            if is_plural_mention(&space.doc.entities[i]) {
                                break 'regions;
                            }
                        }
                    }
                    if found.len() >= 2 {
                        // Absorb directly coordinated followers, then stop.
                        while idx < mentions.len() {
                            let next = mentions[idx];
                            if !space.coordinated(*found.last().unwrap(), next) {
                                break;
                            }
                            let verdict = admit_next(space, anaphor, constraints, state, next, &found);
                            outcome.considered.push(Considered {
                                mention: space.doc.id_of(next).to_string(),
                                verdict: match &verdict {
                                    Ok(()) => Verdict::Accepted,
                                    Err(e) => Verdict::Excluded { exclusion: e.clone() },
                                },
                            });
                            if verdict.is_err() {
                                break;
                            }
                            found.push(next);
                            idx += 1;
                        }
                        break 'regions;
                    }
                }
            }
        }
    }
    found.sort_by_key(|k| (space.doc.extent(*k).start, space.doc.ordinal(*k)));
    outcome.found = found.iter().map(|k| space.doc.id_of(*k).to_string()).collect();
    outcome
}

fn admit_next(
    space: &SearchSpace<'_>,
    anaphor: &AnaphorCandidate,
    constraints: &SearchConstraints,
    state: &CorefState,
    key: MentionKey,
    found: &[MentionKey],
) -> Result<(), Exclusion> {
    space.admits(anaphor, constraints, state, key)?;
    if constraints.distinct_chains {
        if let Some(f) = found.iter().find(|f| state.same_chain(space.doc, **f, key)) {
            return Err(Exclusion::ChainWithParticipant(space.doc.id_of(*f).to_string()));
        }
    }
    Ok(())
}

/// Whether a search result satisfies the anaphor's cardinality.
pub fn satisfies(space: &SearchSpace<'_>, need: Cardinality, found: &[String]) -> bool {
    match need {
        Cardinality::One => found.len() == 1,
        Cardinality::Exactly(n) => found.len() == n,
        Cardinality::AtLeastTwo => {
            found.len() >= 2
                || (found.len() == 1 && space.doc.entity(&found[0]).is_some_and(is_plural_mention))
        }
    }
}

/// Constraints for an anaphor filling a slot of `event`.
pub fn build_constraints(
    doc: &Document,
    event: &EventMention,
    anaphor: &AnaphorCandidate,
    state: &CorefState,
    schema: &ArgSchema,
) -> Result<SearchConstraints, ResolveError> {
    if schema.row(&event.event_type).is_none() {
        return Err(ResolveError::SchemaMissing(event.event_type.clone()));
    }
    let mut constraints = SearchConstraints::unconstrained(anaphor.cardinality);
    constraints.required_class = anaphor.target.clone();
    let mut kinds: Option<BTreeSet<ArgKind>> = None;
    for arg in &event.arguments {
        if arg.mention_ref == anaphor.mention_id {
            let spec = schema.role(&event.event_type, &arg.role)?;
            kinds = Some(match kinds {
                None => spec.classes.clone(),
                Some(k) => k.intersection(&spec.classes).copied().collect(),
            });
        } else {
            constraints.excluded_ids.insert(arg.mention_ref.clone());
        }
    }
    constraints.type_filter = kinds;
    for id in &constraints.excluded_ids {
        if let Some(key) = doc.key(id) {
            constraints
                .excluded_chains
                .entry(state.chain_of(doc, key))
                .or_insert_with(|| id.clone());
        }
    }
    Ok(constraints)
}

/// Constraints for an anaphor across every event it takes part in:
/// exclusions are pooled and role filters intersected.
pub fn build_constraints_all(
    doc: &Document,
    anaphor: &AnaphorCandidate,
    state: &CorefState,
    schema: &ArgSchema,
) -> Result<SearchConstraints, ResolveError> {
    let mut merged: Option<SearchConstraints> = None;
    for event in doc.events_with_argument(&anaphor.mention_id) {
        let c = build_constraints(doc, event, anaphor, state, schema)?;
        merged = Some(match merged {
            None => c,
            Some(mut m) => {
                m.excluded_ids.extend(c.excluded_ids);
                for (k, v) in c.excluded_chains {
                    m.excluded_chains.entry(k).or_insert(v);
                }
                m.type_filter = match (m.type_filter, c.type_filter) {
                    (Some(a), Some(b)) => Some(a.intersection(&b).copied().collect()),
                    (a, b) => a.or(b),
                };
                m
            }
        });
    }
    let mut constraints = merged.unwrap_or_else(|| {
        let mut c = SearchConstraints::unconstrained(anaphor.cardinality);
        c.required_class = anaphor.target.clone();
        c
    });
    constraints.excluded_ids.remove(&anaphor.mention_id);
    Ok(constraints)
}
