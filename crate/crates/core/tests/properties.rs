use itertools::Itertools;
use proptest::prelude::*;

use biocoref_core::io::ResolutionOutput;
use biocoref_core::synth::synthetic_document;
use biocoref_core::{CorefLink, Document, MentionKey, Resolution, Resolver, SieveName};

fn resolve_with_snapshots(doc: &Document) -> (Resolution, Vec<(SieveName, Vec<CorefLink>, Result<(), String>)>) {
    let mut snapshots = Vec::new();
    let res = Resolver::with_defaults()
        .resolve_observed(doc, |sieve, state| {
            snapshots.push((sieve, state.links.clone(), state.check_partition(doc)));
        })
        .unwrap();
    (res, snapshots)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn antecedents_end_before_the_anaphor(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let res = Resolver::with_defaults().resolve(&doc).unwrap();
        for link in res.links() {
            let cand = res.candidates.iter().find(|c| c.mention_id == link.anaphor_id).unwrap();
            for a in &link.antecedent_ids {
                let end = doc.extent(doc.key(a).unwrap()).end;
                prop_assert!(end <= cand.span.start, "{}: {a} ends at {end} after {} at {}", doc.doc_id, link.anaphor_id, cand.span.start);
            }
            prop_assert!(link.validate(&doc).is_ok());
        }
    }

    #[test]
    fn chains_partition_after_every_sieve(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let (_, snapshots) = resolve_with_snapshots(&doc);
        for (sieve, _, partition) in &snapshots {
            prop_assert!(partition.is_ok(), "after {sieve}: {partition:?}");
        }
    }

    #[test]
    fn earlier_links_are_never_revised(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let (_, snapshots) = resolve_with_snapshots(&doc);
        for ((_, before, _), (sieve, after, _)) in snapshots.iter().tuple_windows() {
            prop_assert!(after.len() >= before.len());
            prop_assert_eq!(&after[..before.len()], &before[..]);
            for link in &after[before.len()..] {
                prop_assert_eq!(link.sieve, *sieve);
                prop_assert_eq!(after.iter().filter(|l| l.anaphor_id == link.anaphor_id).count(), 1);
            }
        }
    }

    #[test]
    fn completed_events_never_pair_chain_mates(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let res = Resolver::with_defaults().resolve(&doc).unwrap();
        for e in &res.completion.events {
            let keys: Vec<MentionKey> = e.arguments.iter().filter_map(|a| match doc.key(&a.mention_ref) {
                Some(k @ MentionKey::Entity(_)) => Some(k),
                _ => None,
            }).collect();
            for (a, b) in keys.iter().tuple_combinations() {
                prop_assert!(a != b && !res.state.same_chain(&doc, *a, *b), "{} in {}", e.id, doc.doc_id);
            }
        }
    }

    #[test]
    fn output_is_deterministic(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let r = Resolver::with_defaults();
        let a = ResolutionOutput::build(&doc, &r.resolve(&doc).unwrap(), true).to_json();
        let b = ResolutionOutput::build(&doc, &r.resolve(&doc).unwrap(), true).to_json();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn detected_equals_resolved_plus_unresolved(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let res = Resolver::with_defaults().resolve(&doc).unwrap();
        let unresolved = res.candidates.iter().filter(|c| !res.state.is_resolved(&c.mention_id)).count();
        prop_assert_eq!(res.candidates.len(), res.links().len() + unresolved);
        for c in res.candidates.iter().filter(|c| !res.state.is_resolved(&c.mention_id)) {
            prop_assert!(res.cleanup.contains(&c.mention_id));
        }
    }

    #[test]
    fn document_json_round_trips(seed in any::<u64>(), idx in 0usize..10_000) {
        let doc = synthetic_document(seed, idx);
        let json = biocoref_core::io::save_document(&doc);
        prop_assert_eq!(biocoref_core::io::load_document(json.as_bytes()).unwrap(), doc);
    }
}

#[test]
fn synthetic_corpus_exercises_every_sieve() {
    let r = Resolver::with_defaults();
    let mut used = std::collections::BTreeSet::new();
    for i in 0..500 {
        let doc = synthetic_document(42, i);
        for l in r.resolve(&doc).unwrap().links() {
            used.insert(l.sieve);
        }
    }
    for sieve in [SieveName::MutantMatch, SieveName::StrictHeadMatch, SieveName::Pronominal, SieveName::ClassNp, SieveName::EventCoref] {
        assert!(used.contains(&sieve), "{sieve} never fired");
    }
}
