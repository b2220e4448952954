//! Workloads shared by the resolver benchmarks.

use biocoref_core::fixtures::corpus;
use biocoref_core::synth::synthetic_corpus;
use biocoref_core::{Document, ResolutionOutput, Resolver};

/// Seed for the synthetic benchmark corpus.
pub const SEED: u64 = 7;

/// The example corpus documents.
pub fn fixture_docs() -> Vec<Document> {
    corpus().into_iter().map(|f| f.doc).collect()
}

pub fn synthetic_docs(n: usize) -> Vec<Document> {
    synthetic_corpus(SEED, n)
}

/// Resolves every document and returns the number of completed events.
pub fn resolve_all(resolver: &Resolver, docs: &[Document]) -> usize {
    docs.iter()
        .map(|d| resolver.resolve(d).expect("benchmark documents resolve").completion.events.len())
        .sum()
}

/// Resolves and serializes every document, returning the output size.
pub fn resolve_and_serialize(resolver: &Resolver, docs: &[Document]) -> usize {
    docs.iter()
        .map(|d| {
            let res = resolver.resolve(d).expect("benchmark documents resolve");
            ResolutionOutput::build(d, &res, true).to_json().len()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_resolve() {
        let r = biocoref_core::fixtures::corpus_resolver();
        assert_eq!(resolve_all(&r, &fixture_docs()), 46);
        assert!(resolve_and_serialize(&r, &synthetic_docs(10)) > 0);
    }
}
