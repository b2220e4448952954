//! Hand-traced scenarios beyond the example corpus.

use std::collections::BTreeSet;

use biocoref_core::fixtures::{corpus_resolver, DocBuilder};
use biocoref_core::{EntityClass, MutationKind, MutationRecord, Polarity, Resolver, SieveName};

use EntityClass::Protein;

fn point(label: &str) -> Vec<MutationRecord> {
    vec![MutationRecord::new(MutationKind::PointSubstitution, Some(label.into())).unwrap()]
}

fn only_string_sieves() -> Resolver {
    let mut r = Resolver::with_defaults();
    for s in SieveName::PIPELINE.into_iter().filter(|s| s.is_optional() && *s != SieveName::ExactString) {
        r.disable(s).unwrap();
    }
    r
}

#[test]
fn exact_string_chains_match_pairwise_oracle() {
    let surfaces = ["Akt", "Bad", "Akt", "akt", "GSK3β", "Akt", "GSK-3β", "Bad"];
    let mut b = DocBuilder::new("strings").sentence(
        "Akt binds Bad while Akt and akt bind GSK3β, and Akt binds GSK-3β but not Bad.",
    );
    let mut nth = std::collections::BTreeMap::new();
    for (i, s) in surfaces.iter().enumerate() {
        let n = nth.entry(*s).or_insert(0);
        *n += 1;
        b = b.entity(&format!("T{}", i + 1), s, *n, Protein);
    }
    let doc = b.build();
    let res = only_string_sieves().resolve(&doc).unwrap();

    // Naive closure over pairwise character equality.
    let n = surfaces.len();
    let mut group: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..n {
            if surfaces[i] == surfaces[j] {
                let (gi, gj) = (group[i], group[j]);
                for g in group.iter_mut() {
                    if *g == gj {
                        *g = gi;
                    }
                }
            }
        }
    }
    let mut want: Vec<Vec<String>> = (0..n)
        .map(|g| (0..n).filter(|&k| group[k] == g).map(|k| format!("T{}", k + 1)).collect::<Vec<_>>())
        .filter(|c| c.len() > 1)
        .collect();
    want.sort();
    let mut got = res.chains.clone();
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn singular_protein_mutant_takes_the_one_prior_mutant() {
    let doc = DocBuilder::new("one_mutant")
        .sentence("Cells expressed FGFR3-K650E.")
        .sentence("The FGFR3 mutant phosphorylates ERK.")
        .entity_with("T1", "FGFR3-K650E", 1, Protein, None, point("K650E"))
        .entity("T2", "FGFR3", 1, Protein)
        .entity("T3", "ERK", 1, Protein)
        .event("E1", "phosphorylates", 1, "Phosphorylation", &[("theme", "T3"), ("cause", "T2")])
        .build();
    let res = corpus_resolver().resolve(&doc).unwrap();
    let link = &res.links()[0];
    assert_eq!((link.anaphor_id.as_str(), link.antecedent_ids.clone(), link.sieve), ("T2", vec!["T1".to_string()], SieveName::MutantMatch));
}

#[test]
fn six_mutants_with_five_candidates_stays_unresolved() {
    let labels = ["N540K", "G380R", "R248C", "Y373C", "K650M"];
    let mut b = DocBuilder::new("five")
        .sentence("Cells were transfected with N540K, G380R, R248C, Y373C and K650M mutants.")
        .sentence("All six FGFR3 mutants induced ERK phosphorylation.");
    for (i, l) in labels.iter().enumerate() {
        b = b.entity_with(&format!("T{}", i + 1), l, 1, Protein, Some("uniprot:P22607"), point(l));
    }
    let doc = b
        .entity("T6", "FGFR3", 1, Protein)
        .entity("T7", "ERK", 1, Protein)
        .event("E1", "phosphorylation", 1, "Phosphorylation", &[("theme", "T7")])
        .event_with("E2", "induced", 1, "Regulation", Polarity::Positive, &[("controller", "T6"), ("controlled", "E1")])
        .build();
    let res = corpus_resolver().resolve(&doc).unwrap();
    assert!(res.links().is_empty());
    let dropped: Vec<String> = res.dropped_events(&doc).into_iter().map(|d| d.id).collect();
    assert_eq!(dropped, vec!["E2"]);
    assert_eq!(res.completion.events.len(), 1);
}

#[test]
fn cleanup_removes_only_the_unresolved_anaphor_and_its_event() {
    let doc = DocBuilder::new("two_anaphors")
        .sentence("Its expression is high.")
        .sentence("Akt binds Bad, and it phosphorylates Tau.")
        .entity("T1", "Its", 1, Protein)
        .entity("T2", "Akt", 1, Protein)
        .entity("T3", "Bad", 1, Protein)
        .entity("T4", "it", 1, Protein)
        .entity("T5", "Tau", 1, Protein)
        .event("E1", "expression", 1, "Expression", &[("theme", "T1")])
        .event("E2", "binds", 1, "Binding", &[("theme1", "T2"), ("theme2", "T3")])
        .event("E3", "phosphorylates", 1, "Phosphorylation", &[("theme", "T5"), ("cause", "T4")])
        .build();
    let res = Resolver::with_defaults().resolve(&doc).unwrap();
    assert_eq!(res.cleanup.ids(), BTreeSet::from(["T1".to_string(), "E1".to_string()]));
    assert_eq!(res.links().len(), 1);
    assert_eq!(res.links()[0].antecedent_ids, vec!["T2"]);
}

#[test]
fn second_pronoun_without_a_second_antecedent_stays_unresolved() {
    let doc = DocBuilder::new("ex06_modified")
        .sentence("While over-expressed c-Cbl stabilized cells, it suppressed its capacity to promote phosphorylation.")
        .entity("T1", "c-Cbl", 1, Protein)
        .entity("T2", "it", 1, Protein)
        .entity("T3", "its", 1, Protein)
        .event_with("E1", "suppressed", 1, "Regulation", Polarity::Negative, &[("controller", "T2"), ("controlled", "T3")])
        .build();
    let res = Resolver::with_defaults().resolve(&doc).unwrap();
    assert_eq!(res.links().len(), 1);
    assert_eq!((res.links()[0].anaphor_id.as_str(), res.links()[0].antecedent_ids.clone()), ("T2", vec!["T1".to_string()]));
    assert!(res.cleanup.contains("T3"));
    assert!(res.cleanup.contains("E1"));
}

#[test]
fn nominal_event_without_prior_complete_event_is_unresolved() {
    let doc = DocBuilder::new("lonely_binding")
        .sentence("LL-37 is abundant, and this binding results in IGF-1R activation.")
        .entity("T1", "LL-37", 1, Protein)
        .entity("T2", "IGF-1R", 1, Protein)
        .event("E1", "binding", 1, "Binding", &[])
        .event("E2", "activation", 1, "Activation", &[("controlled", "T2")])
        .event_with("E3", "results", 1, "Regulation", Polarity::Positive, &[("controller", "E1"), ("controlled", "E2")])
        .build();
    let res = Resolver::with_defaults().resolve(&doc).unwrap();
    assert_eq!(res.candidates.len(), 1);
    assert!(res.links().is_empty());
    let dropped: BTreeSet<String> = res.dropped_events(&doc).into_iter().map(|d| d.id).collect();
    assert_eq!(dropped, BTreeSet::from(["E1".to_string(), "E3".to_string()]));
}

#[test]
fn no_coref_completes_events_as_written() {
    let doc = DocBuilder::new("plain")
        .sentence("PIK3CA and BRAF bind Ras.")
        .entity("T1", "PIK3CA", 1, Protein)
        .entity("T2", "BRAF", 1, Protein)
        .entity("T3", "Ras", 1, Protein)
        .event("E1", "bind", 1, "Binding", &[("theme1", "T1"), ("theme1", "T2"), ("theme2", "T3")])
        .build();
    let res = Resolver::with_defaults().without_coref().resolve(&doc).unwrap();
    assert!(res.candidates.is_empty());
    let ids: Vec<&str> = res.completion.events.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, vec!["E1.1", "E1.2"]);
    assert!(res.completion.events.iter().all(|e| e.provenance.is_empty() && e.derived_from == "E1"));
}
