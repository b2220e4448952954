//! The resolution sieves, ordered from most to least precise, and the
//! final clean-up pass.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::config::{ArgSchema, Cardinality, TriggerDictionary};
use crate::detect::{detect_with_forms, entity_forms, surface_words, AnaphorCandidate, AnaphorKind, EntityForm, MutantNp, Target};
use crate::error::ResolveError;
use crate::grounding::GroundingTable;
use crate::model::{Document, MentionKey};
use crate::search::{
    build_constraints, build_constraints_all, linear_search, satisfies, MutationFilter, SearchConstraints, SearchSpace,
};
use crate::state::{CorefLink, CorefState, SieveName};
use crate::trace::Traces;

const POST_MODIFIER_PREPOSITIONS: &[&str] = &["of", "in", "from", "to", "with", "for", "on", "by", "at"];

/// Everything the sieves read: the document, configuration, the
/// anaphoric reading of every entity mention and the detected candidates.
#[derive(Debug, Clone)]
pub struct SieveContext<'a> {
    pub doc: &'a Document,
    pub dict: &'a TriggerDictionary,
    pub schema: &'a ArgSchema,
    pub grounding: &'a GroundingTable,
    pub forms: Vec<EntityForm>,
    pub candidates: Vec<AnaphorCandidate>,
    anaphoric_events: BTreeSet<usize>,
}

impl<'a> SieveContext<'a> {
    pub fn new(
        doc: &'a Document,
        dict: &'a TriggerDictionary,
        schema: &'a ArgSchema,
        grounding: &'a GroundingTable,
    ) -> Self {
        let forms = entity_forms(doc, dict);
        let candidates = detect_with_forms(doc, dict, schema, &forms);
        let anaphoric_events = candidates
            .iter()
            .filter_map(|c| match doc.key(&c.mention_id) {
                Some(MentionKey::Event(i)) => Some(i),
                _ => None,
            })
            .collect();
        SieveContext {
            doc,
            dict,
            schema,
            grounding,
            forms,
            candidates,
            anaphoric_events,
        }
    }

    pub fn space(&self) -> SearchSpace<'_> {
        SearchSpace {
            doc: self.doc,
            forms: &self.forms,
            anaphoric_events: self.anaphoric_events.clone(),
            schema: self.schema,
            grounding: self.grounding,
        }
    }

    pub fn candidate(&self, id: &str) -> Option<&AnaphorCandidate> {
        self.candidates.iter().find(|c| c.mention_id == id)
    }

    fn pending<'s>(
        &'s self,
        state: &'s CorefState,
        keep: impl Fn(&AnaphorCandidate) -> bool + 's,
    ) -> impl Iterator<Item = &'s AnaphorCandidate> + 's {
        self.candidates
            .iter()
            .filter(move |c| !state.is_resolved(&c.mention_id) && keep(c))
    }

    fn full_entities(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.doc.entities.len()).filter(|i| !self.forms[*i].is_anaphoric())
    }
}

fn link(ctx: &SieveContext<'_>, state: &mut CorefState, traces: &mut Traces, anaphor: &str, antecedents: Vec<String>, sieve: SieveName) {
    traces.resolved(anaphor, sieve, &antecedents);
    state.apply_link(ctx.doc, CorefLink::new(anaphor, antecedents, sieve));
}

/// Merges full entity mentions with character-identical surfaces.
pub fn sieve_exact_string(ctx: &SieveContext<'_>, state: &mut CorefState) {
    let groups = ctx
        .full_entities()
        .map(|i| (ctx.doc.entities[i].surface.as_str(), i))
        .into_group_map();
    merge_groups(ctx.doc, state, groups.into_values());
}

/// Merges full entity mentions that ground to the same canonical ID.
pub fn sieve_shared_grounding(ctx: &SieveContext<'_>, state: &mut CorefState) {
    let groups = ctx
        .full_entities()
        .filter_map(|i| ctx.grounding.ground_mention(&ctx.doc.entities[i]).map(|g| (g, i)))
        .into_group_map();
    merge_groups(ctx.doc, state, groups.into_values());
}

fn merge_groups(doc: &Document, state: &mut CorefState, groups: impl Iterator<Item = Vec<usize>>) {
    for group in groups {
        for pair in group.windows(2) {
            state.merge(doc, MentionKey::Entity(pair[0]), MentionKey::Entity(pair[1]));
        }
    }
}

/// Links "all six FGFR3 mutants"-style anaphors to the prior mentions of
/// the named protein that spell out a mutation.
pub fn sieve_mutant_match(ctx: &SieveContext<'_>, state: &mut CorefState, traces: &mut Traces) -> Result<(), ResolveError> {
    let sieve = SieveName::MutantMatch;
    let todo: Vec<AnaphorCandidate> = ctx
        .pending(state, |c| matches!(c.kind, AnaphorKind::MutantNp(MutantNp::ProteinOnly { .. })))
        .cloned()
        .collect();
    let space = ctx.space();
    for cand in todo {
        let AnaphorKind::MutantNp(MutantNp::ProteinOnly { protein }) = &cand.kind else {
            continue;
        };
        let mut constraints = build_constraints_all(ctx.doc, &cand, state, ctx.schema)?;
        constraints.mutation = Some(MutationFilter::SpecifiedMutantOf {
            protein: protein.clone(),
            grounding: ctx.grounding.ground(protein).map(str::to_string),
        });
        let outcome = linear_search(&space, &cand, &constraints, state);
        let ok = satisfies(&space, cand.cardinality, &outcome.found);
        traces.record(&cand.mention_id, sieve, outcome.considered, None);
        if ok {
            link(ctx, state, traces, &cand.mention_id, outcome.found, sieve);
        }
    }
    Ok(())
}

/// Head of a noun phrase: the rightmost non-stopword before any
/// post-modifying preposition.
pub fn np_head(words: &[String], dict: &TriggerDictionary) -> Option<String> {
    let end = words
        .iter()
        .position(|w| POST_MODIFIER_PREPOSITIONS.contains(&w.as_str()))
        .unwrap_or(words.len());
    words[..end].iter().rev().find(|w| !dict.is_stopword(w)).cloned()
}

/// The anaphor's head occurs in the antecedent and so does every other
/// non-stopword of the anaphor. Words are compared lowercased.
pub fn strict_head_matches(anaphor: &str, antecedent: &str, dict: &TriggerDictionary) -> bool {
    let ana = surface_words(anaphor);
    let ante: BTreeSet<String> = surface_words(antecedent).into_iter().collect();
    let Some(head) = np_head(&ana, dict) else {
        return false;
    };
    ante.contains(&head) && ana.iter().filter(|w| !dict.is_stopword(w)).all(|w| ante.contains(w))
}

/// Links definite class noun phrases to the nearest prior full mention
/// whose words contain the anaphor's head and every content word.
pub fn sieve_strict_head_match(
    ctx: &SieveContext<'_>,
    state: &mut CorefState,
    traces: &mut Traces,
) -> Result<(), ResolveError> {
    let sieve = SieveName::StrictHeadMatch;
    let todo: Vec<AnaphorCandidate> = ctx
        .pending(state, |c| c.kind == AnaphorKind::ClassNp)
        .cloned()
        .collect();
    let space = ctx.space();
    for cand in todo {
        let constraints = build_constraints_all(ctx.doc, &cand, state, ctx.schema)?;
        let anaphor_text = ctx.doc.slice(cand.span).unwrap_or("").to_string();
        let mut considered = Vec::new();
        let mut hit: Option<String> = None;
        let mut prior: Vec<usize> = ctx.full_entities().collect();
        prior.sort_by_key(|i| std::cmp::Reverse((ctx.doc.entities[*i].span.end, *i)));
        for i in prior {
            let key = MentionKey::Entity(i);
            let entity = &ctx.doc.entities[i];
            if entity.span.end > cand.span.start {
                continue;
            }
            let verdict = space.admits(&cand, &constraints, state, key).and_then(|()| {
                if cand.cardinality.is_plural() && !crate::detect::is_plural_mention(entity) {
                    Err(crate::search::Exclusion::Number)
                } else if strict_head_matches(&anaphor_text, &entity.surface, ctx.dict) {
                    Ok(())
                } else {
                    Err(crate::search::Exclusion::ClassFilter)
                }
            });
            let accepted = verdict.is_ok();
            considered.push(crate::search::Considered {
                mention: entity.id.clone(),
                verdict: match verdict {
                    Ok(()) => crate::search::Verdict::Accepted,
                    Err(exclusion) => crate::search::Verdict::Excluded { exclusion },
                },
            });
            if accepted {
                hit = Some(entity.id.clone());
                break;
            }
        }
        traces.record(&cand.mention_id, sieve, considered, None);
        if let Some(antecedent) = hit {
            link(ctx, state, traces, &cand.mention_id, vec![antecedent], sieve);
        }
    }
    Ok(())
}

/// Left-to-right pairing of anaphors with antecedent groups, both in
/// text order. Surplus anaphors stay unassigned.
pub fn assign_multi_anaphors(anaphors: &[String], groups: Vec<Vec<String>>) -> Vec<(String, Vec<String>)> {
    anaphors.iter().cloned().zip(groups).collect()
}

fn is_single_pronoun(c: &AnaphorCandidate) -> bool {
    c.kind == AnaphorKind::Pronoun && c.cardinality == Cardinality::One
}

/// Resolves pronouns with the linear search. Several singular pronouns
/// in one event share one search and are assigned left to right.
pub fn sieve_pronominal(ctx: &SieveContext<'_>, state: &mut CorefState, traces: &mut Traces) -> Result<(), ResolveError> {
    let sieve = SieveName::Pronominal;
    let todo: Vec<AnaphorCandidate> = ctx
        .pending(state, |c| c.kind == AnaphorKind::Pronoun)
        .cloned()
        .collect();
    let space = ctx.space();
    for cand in todo {
        if state.is_resolved(&cand.mention_id) {
            continue;
        }
        let joint = if is_single_pronoun(&cand) {
            ctx.doc.events_with_argument(&cand.mention_id).find_map(|event| {
                let group: Vec<&AnaphorCandidate> = event
                    .arguments
                    .iter()
                    .map(|a| a.mention_ref.as_str())
                    .unique()
                    .filter_map(|id| ctx.candidate(id))
                    .filter(|c| is_single_pronoun(c) && !state.is_resolved(&c.mention_id))
                    .sorted_by_key(|c| (c.span.start, c.mention_id.clone()))
                    .collect();
                (group.len() >= 2).then_some((event, group))
            })
        } else {
            None
        };

        if let Some((event, group)) = joint {
            let first = group[0];
            let mut constraints = build_constraints(ctx.doc, event, first, state, ctx.schema)?;
            for other in &group {
                constraints.excluded_ids.remove(&other.mention_id);
            }
            constraints.excluded_chains.retain(|_, id| !group.iter().any(|g| g.mention_id == *id));
            constraints.type_filter = None;
            constraints.need = Cardinality::Exactly(group.len());
            constraints.distinct_chains = true;
            let outcome = linear_search(&space, first, &constraints, state);
            let ids: Vec<String> = group.iter().map(|c| c.mention_id.clone()).collect();
            let groups = outcome.found.iter().map(|f| vec![f.clone()]).collect();
            for c in &group {
                traces.record(&c.mention_id, sieve, outcome.considered.clone(), Some("joint search over event anaphors".into()));
            }
            for (anaphor, antecedents) in assign_multi_anaphors(&ids, groups) {
                let c = ctx.candidate(&anaphor).expect("grouped anaphor is a candidate");
                let own = build_constraints_all(ctx.doc, c, state, ctx.schema)?;
                let key = ctx.doc.key(&antecedents[0]).expect("found mention exists");
                match space.admits(c, &own, state, key) {
                    Ok(()) => link(ctx, state, traces, &anaphor, antecedents, sieve),
                    Err(e) => traces.record(&anaphor, sieve, vec![], Some(format!("assigned {} rejected: {e}", antecedents[0]))),
                }
            }
            continue;
        }

        let constraints = build_constraints_all(ctx.doc, &cand, state, ctx.schema)?;
        let outcome = linear_search(&space, &cand, &constraints, state);
        let ok = satisfies(&space, cand.cardinality, &outcome.found);
        traces.record(&cand.mention_id, sieve, outcome.considered, None);
        if ok {
            link(ctx, state, traces, &cand.mention_id, outcome.found, sieve);
        }
    }
    Ok(())
}

fn search_and_link(
    ctx: &SieveContext<'_>,
    state: &mut CorefState,
    traces: &mut Traces,
    cand: &AnaphorCandidate,
    constraints: &SearchConstraints,
    sieve: SieveName,
    note: Option<String>,
) -> bool {
    let space = ctx.space();
    let outcome = linear_search(&space, cand, constraints, state);
    let ok = satisfies(&space, cand.cardinality, &outcome.found);
    traces.record(&cand.mention_id, sieve, outcome.considered, note);
    if ok {
        link(ctx, state, traces, &cand.mention_id, outcome.found, sieve);
    }
    ok
}

/// Resolves definite class noun phrases and the mutant phrases that do
/// not name a protein, searching only mentions of the required class.
pub fn sieve_class_np(ctx: &SieveContext<'_>, state: &mut CorefState, traces: &mut Traces) -> Result<(), ResolveError> {
    let sieve = SieveName::ClassNp;
    let todo: Vec<AnaphorCandidate> = ctx
        .pending(state, |c| {
            matches!(
                c.kind,
                AnaphorKind::ClassNp
                    | AnaphorKind::MutantNp(MutantNp::GenericMutant)
                    | AnaphorKind::MutantNp(MutantNp::MutationOnly { .. })
            )
        })
        .cloned()
        .collect();
    for cand in todo {
        let mut constraints = build_constraints_all(ctx.doc, &cand, state, ctx.schema)?;
        match &cand.kind {
            AnaphorKind::MutantNp(MutantNp::GenericMutant) => {
                constraints.mutation = Some(MutationFilter::AnyMutation);
                search_and_link(ctx, state, traces, &cand, &constraints, sieve, None);
            }
            AnaphorKind::MutantNp(MutantNp::MutationOnly { label }) => {
                constraints.mutation = Some(MutationFilter::Label(label.clone()));
                let labelled = search_and_link(ctx, state, traces, &cand, &constraints, sieve, Some(format!("mutation label {label}")));
                if !labelled {
                    constraints.mutation = None;
                    search_and_link(ctx, state, traces, &cand, &constraints, sieve, Some("protein of the named mutation".into()));
                }
            }
            _ => {
                search_and_link(ctx, state, traces, &cand, &constraints, sieve, None);
            }
        }
    }
    Ok(())
}

/// Links incomplete nominal events to a prior complete event of the same
/// type. Regulation-type anaphors are left alone.
pub fn sieve_event_coref(ctx: &SieveContext<'_>, state: &mut CorefState, traces: &mut Traces) -> Result<(), ResolveError> {
    let sieve = SieveName::EventCoref;
    let todo: Vec<AnaphorCandidate> = ctx
        .pending(state, |c| c.kind == AnaphorKind::NominalEvent)
        .cloned()
        .collect();
    for cand in todo {
        if let Some(Target::Event(t)) = &cand.target {
            if ctx.schema.is_regulation(t) {
                traces.record(&cand.mention_id, sieve, vec![], Some(format!("{t} anaphors are not searched")));
                continue;
            }
        }
        let constraints = build_constraints_all(ctx.doc, &cand, state, ctx.schema)?;
        search_and_link(ctx, state, traces, &cand, &constraints, sieve, None);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RemovalReason {
    /// An anaphor no sieve could resolve.
    UnresolvedAnaphor,
    /// An event left without a required argument.
    LostArgument { argument: String },
    /// A resolved nominal event whose antecedent event was removed.
    AntecedentRemoved { antecedent: String },
}

impl std::fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RemovalReason::UnresolvedAnaphor => f.write_str("unresolved anaphor"),
            RemovalReason::LostArgument { argument } => write!(f, "lost required argument {argument}"),
            RemovalReason::AntecedentRemoved { antecedent } => write!(f, "antecedent {antecedent} removed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub id: String,
    #[serde(flatten)]
    pub reason: RemovalReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cleanup {
    /// Removals in the order they were decided.
    pub removed: Vec<Removal>,
}

impl Cleanup {
    pub fn ids(&self) -> BTreeSet<String> {
        self.removed.iter().map(|r| r.id.clone()).collect()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.removed.iter().any(|r| r.id == id)
    }
}

/// Removes unresolved anaphors, then repeatedly removes events that no
/// longer have their required arguments and nominal events whose
/// antecedent is gone, until nothing changes.
pub fn sieve_cleanup(ctx: &SieveContext<'_>, state: &CorefState, traces: &mut Traces) -> Cleanup {
    let mut removed: BTreeMap<String, RemovalReason> = BTreeMap::new();
    let mut order = Vec::new();
    for c in &ctx.candidates {
        if !state.is_resolved(&c.mention_id) {
            traces.dropped(&c.mention_id, "no antecedent found");
            removed.insert(c.mention_id.clone(), RemovalReason::UnresolvedAnaphor);
            order.push(c.mention_id.clone());
        }
    }
    loop {
        let mut changed = false;
        for event in &ctx.doc.events {
            if removed.contains_key(&event.id) {
                continue;
            }
            let reason = if let Some(link) = state.link_for(&event.id) {
                link.antecedent_ids
                    .iter()
                    .find(|a| removed.contains_key(*a))
                    .map(|a| RemovalReason::AntecedentRemoved { antecedent: a.clone() })
            } else {
                None
            };
            let reason = reason.or_else(|| {
                let lost = event.arguments.iter().find(|a| removed.contains_key(&a.mention_ref))?;
                let still_complete = ctx.schema.is_complete_without(event, |id| removed.contains_key(id));
                // Nominal event anaphors were never complete; their own
                // link stands in for the missing arguments.
                let stands_in = state.is_resolved(&event.id);
                (!still_complete && !stands_in).then(|| RemovalReason::LostArgument {
                    argument: lost.mention_ref.clone(),
                })
            });
            if let Some(reason) = reason {
                if state.is_resolved(&event.id) {
                    traces.dropped(&event.id, "antecedent removed");
                }
                removed.insert(event.id.clone(), reason);
                order.push(event.id.clone());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Cleanup {
        removed: order
            .into_iter()
            .map(|id| {
                let reason = removed[&id].clone();
                Removal { id, reason }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_is_rightmost_content_word_before_preposition() {
        let d = TriggerDictionary::default_dictionary();
        let w = |s: &str| surface_words(s);
        assert_eq!(np_head(&w("the enzyme"), &d).as_deref(), Some("enzyme"));
        assert_eq!(np_head(&w("the kinase of the complex"), &d).as_deref(), Some("kinase"));
        assert_eq!(np_head(&w("the"), &d), None);
    }

    #[test]
    fn strict_head_examples() {
        let d = TriggerDictionary::default_dictionary();
        assert!(strict_head_matches("the enzyme", "the enzyme guanylate cyclase", &d));
        assert!(strict_head_matches("the phosphorylated protein", "a phosphorylated ASPP2 protein", &d));
        assert!(!strict_head_matches("the activated ASPP2", "a phosphorylated ASPP2 protein", &d));
        assert!(!strict_head_matches("the IκB proteins", "IκB kinase α", &d));
    }

    #[test]
    fn multi_anaphor_assignment_is_positional() {
        let a = vec!["it".to_string(), "its".to_string()];
        let got = assign_multi_anaphors(&a, vec![vec!["c-Cbl".into()], vec!["MLK3".into()]]);
        assert_eq!(got, vec![("it".into(), vec!["c-Cbl".into()]), ("its".into(), vec!["MLK3".into()])]);
        let got = assign_multi_anaphors(&a, vec![vec!["c-Cbl".into()]]);
        assert_eq!(got, vec![("it".into(), vec!["c-Cbl".into()])]);
        let single = assign_multi_anaphors(&a[..1], vec![vec!["X".into()]]);
        assert_eq!(single.len(), 1);
    }
}
