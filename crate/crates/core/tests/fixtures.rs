use biocoref_core::fixtures::{corpus, corpus_resolver, Manifest};
use biocoref_core::io::{load_document, save_document};

#[test]
fn every_fixture_matches_its_expectation() {
    let r = corpus_resolver();
    let mut failures = Vec::new();
    for f in corpus() {
        let res = r.resolve(&f.doc).unwrap();
        for p in f.expect.verify(&f.doc, &res) {
            failures.push(format!("{}: {p}", f.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn fixtures_survive_serialization() {
    for f in corpus() {
        assert_eq!(load_document(save_document(&f.doc).as_bytes()).unwrap(), f.doc, "{}", f.name);
    }
}

#[test]
fn manifest_round_trips() {
    let m = Manifest::from_corpus(&corpus());
    let json = serde_json::to_string(&m).unwrap();
    assert_eq!(serde_json::from_str::<Manifest>(&json).unwrap(), m);
}

#[test]
fn ablating_chain_sieves_flips_the_pronoun() {
    let f = corpus().into_iter().find(|f| f.name == "ex01_gsk3b_selfbinding").unwrap();
    let mut r = corpus_resolver();
    r.disable(biocoref_core::SieveName::ExactString).unwrap();
    r.disable(biocoref_core::SieveName::SharedGrounding).unwrap();
    let res = r.resolve(&f.doc).unwrap();
    let link = res.links().iter().find(|l| l.anaphor_id == "T3").unwrap();
    assert_eq!(link.antecedent_ids, vec!["T1"]);
}

#[test]
fn disabling_pronominal_drops_the_expression_event() {
    let f = corpus().into_iter().find(|f| f.name == "ex12_foxp3").unwrap();
    let mut r = corpus_resolver();
    r.disable(biocoref_core::SieveName::Pronominal).unwrap();
    let res = r.resolve(&f.doc).unwrap();
    assert!(res.links().is_empty());
    assert!(res.completion.events.is_empty());
    assert_eq!(res.dropped_events(&f.doc).iter().map(|d| d.id.as_str()).collect::<Vec<_>>(), vec!["E1"]);
}
