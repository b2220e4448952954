//! Seeded generator of random but well-formed documents for property
//! tests and benchmarks.
//!
//! Sentences are assembled from templates whose argument slots are filled
//! with protein names, pronouns, class noun phrases, mutant noun phrases
//! or nominal events, so every sieve gets exercised.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures::tokenize;
use crate::model::{
    Argument, Document, EntityClass, EntityMention, EventMention, MutationKind, MutationRecord, Polarity, Sentence,
    Span,
};

const NAMES: &[(&str, Option<&str>)] = &[
    ("Akt", None),
    ("Bad", None),
    ("Tau", None),
    ("Rb", None),
    ("E2F", None),
    ("Smad3", None),
    ("Smad4", None),
    ("MLK3", None),
    ("c-Cbl", None),
    ("ERK", None),
    ("BRAF", None),
    ("GSK3β", Some("uniprot:P49841")),
    ("GSK-3β", Some("uniprot:P49841")),
    ("FGFR3", Some("uniprot:P22607")),
    ("IκBα", None),
    ("NF-κB", None),
];

const LABELS: &[&str] = &["K650E", "S34A", "K134A", "N540K", "G380R", "Y373C"];
const PRONOUNS: &[&str] = &["it", "its", "they", "them", "their", "both"];
const CLASS_NPS: &[(&str, &str)] = &[
    ("the", "protein"),
    ("the", "kinase"),
    ("this", "enzyme"),
    ("these", "proteins"),
    ("both", "kinases"),
    ("the", "two proteins"),
    ("a", "kinase"),
];
const NOMINALS: &[(&str, &str, &str)] = &[
    ("this", "binding", "Binding"),
    ("the", "interaction", "Binding"),
    ("the", "phosphorylation", "Phosphorylation"),
    ("the", "promotion", "Regulation"),
];

#[derive(Debug, Default)]
struct Writer {
    text: String,
    len: usize,
    sentences: Vec<Sentence>,
    sentence_start: usize,
    entities: Vec<EntityMention>,
    events: Vec<EventMention>,
}

impl Writer {
    fn word(&mut self, w: &str) -> Span {
        let at_start = self.len == self.sentence_start;
        let glue = w.chars().all(|c| matches!(c, ',' | '.'));
        if !self.text.is_empty() && !at_start && !glue {
            self.text.push(' ');
            self.len += 1;
        }
        let start = self.len;
        self.text.push_str(w);
        self.len += w.chars().count();
        Span::new(start, self.len)
    }

    fn begin_sentence(&mut self) {
        if !self.text.is_empty() {
            self.text.push(' ');
            self.len += 1;
        }
        self.sentence_start = self.len;
    }

    fn end_sentence(&mut self) {
        self.word(".");
        let body: String = self.text.chars().skip(self.sentence_start).collect();
        self.sentences.push(Sentence {
            index: self.sentences.len(),
            span: Span::new(self.sentence_start, self.len),
            tokens: tokenize(&body, self.sentence_start),
        });
    }

    fn entity(&mut self, span: Span, label: EntityClass, grounding: Option<&str>, mutations: Vec<MutationRecord>) -> String {
        let id = format!("T{}", self.entities.len() + 1);
        self.entities.push(EntityMention {
            id: id.clone(),
            span,
            label,
            grounding_id: grounding.map(str::to_string),
            mutations,
            surface: String::new(),
        });
        id
    }

    fn event(&mut self, trigger: Span, event_type: &str, polarity: Polarity, args: Vec<(&str, String)>) -> String {
        let id = format!("E{}", self.events.len() + 1);
        self.events.push(EventMention {
            id: id.clone(),
            trigger_span: trigger,
            event_type: event_type.to_string(),
            arguments: args.into_iter().map(|(r, m)| Argument::new(r, m)).collect(),
            polarity,
            trigger_surface: String::new(),
        });
        id
    }
}

struct Gen {
    rng: ChaCha8Rng,
    w: Writer,
    last_mutated: Option<&'static str>,
}

impl Gen {
    fn name(&mut self) -> String {
        let (name, grounding) = *NAMES.choose(&mut self.rng).unwrap();
        if self.rng.random_bool(0.15) {
            let label = *LABELS.choose(&mut self.rng).unwrap();
            let surface = format!("{name}-{label}");
            let span = self.w.word(&surface);
            let m = MutationRecord::new(MutationKind::PointSubstitution, Some(label.to_string())).unwrap();
            return self.w.entity(span, EntityClass::Protein, grounding, vec![m]);
        }
        let label = if self.rng.random_bool(0.1) { EntityClass::Gene } else { EntityClass::Protein };
        let span = self.w.word(name);
        self.w.entity(span, label, grounding, vec![])
    }

    fn pronoun(&mut self) -> String {
        let p = *PRONOUNS.choose(&mut self.rng).unwrap();
        let span = self.w.word(p);
        self.w.entity(span, EntityClass::Protein, None, vec![])
    }

    fn class_np(&mut self) -> String {
        let (det, head) = *CLASS_NPS.choose(&mut self.rng).unwrap();
        self.w.word(det);
        let mut words = head.split(' ').peekable();
        let mut span = None;
        while let Some(word) = words.next() {
            let s = self.w.word(word);
            if words.peek().is_none() {
                span = Some(s);
            }
        }
        self.w.entity(span.unwrap(), EntityClass::Protein, None, vec![])
    }

    fn mutant_np(&mut self) -> String {
        self.w.word("the");
        let span = match self.rng.random_range(0..3) {
            0 => self.w.word("mutant"),
            1 => {
                let s = self.w.word(LABELS.choose(&mut self.rng).unwrap());
                self.w.word("mutant");
                s
            }
            _ => {
                let name = match self.last_mutated {
                    Some(name) if self.rng.random_bool(0.7) => name,
                    _ => NAMES.choose(&mut self.rng).unwrap().0,
                };
                let s = self.w.word(name);
                self.w.word("mutants");
                s
            }
        };
        self.w.entity(span, EntityClass::Protein, None, vec![])
    }

    /// An entity-denoting argument of any form.
    fn participant(&mut self) -> String {
        match self.rng.random_range(0..10) {
            0..=4 => self.name(),
            5 | 6 => self.pronoun(),
            7 | 8 => self.class_np(),
            _ => self.mutant_np(),
        }
    }

    fn sentence(&mut self) {
        self.w.begin_sentence();
        match self.rng.random_range(0..8) {
            0 => {
                let a = self.participant();
                let t = self.w.word("binds");
                self.w.word("to");
                let b = self.participant();
                self.w.event(t, "Binding", Polarity::Unspecified, vec![("theme1", a), ("theme2", b)]);
            }
            1 => {
                let a = self.participant();
                let t = self.w.word("phosphorylates");
                let b = self.participant();
                self.w.event(t, "Phosphorylation", Polarity::Unspecified, vec![("theme", b), ("cause", a)]);
            }
            2 => {
                let a = self.participant();
                let r = self.w.word("inhibits");
                self.w.word("the");
                let t = self.w.word("phosphorylation");
                self.w.word("of");
                let b = self.participant();
                let inner = self.w.event(t, "Phosphorylation", Polarity::Unspecified, vec![("theme", b)]);
                self.w.event(r, "Regulation", Polarity::Negative, vec![("controller", a), ("controlled", inner)]);
            }
            3 => {
                let a = self.participant();
                let r = self.w.word("enhances");
                let (det, trigger, event_type) = *NOMINALS.choose(&mut self.rng).unwrap();
                self.w.word(det);
                let t = self.w.word(trigger);
                let inner = self.w.event(t, event_type, Polarity::Unspecified, vec![]);
                self.w.event(r, "Regulation", Polarity::Positive, vec![("controller", a), ("controlled", inner)]);
            }
            4 => {
                let a = self.participant();
                self.w.word("is");
                let t = self.w.word("expressed");
                self.w.event(t, "Expression", Polarity::Unspecified, vec![("theme", a)]);
            }
            5 => {
                let a = self.name();
                self.w.word("and");
                let b = self.name();
                self.w.word("form");
                self.w.word("a");
                let t = self.w.word("complex");
                self.w.word("with");
                let c = self.participant();
                self.w.event(
                    t,
                    "Binding",
                    Polarity::Unspecified,
                    vec![("theme1", a), ("theme1", b), ("theme2", c)],
                );
            }
            6 => {
                let (name, grounding) = *NAMES.choose(&mut self.rng).unwrap();
                self.last_mutated = Some(name);
                self.w.word("We");
                self.w.word("expressed");
                let n = self.rng.random_range(2..=3);
                for (k, label) in LABELS.choose_multiple(&mut self.rng, n).enumerate() {
                    if k > 0 {
                        self.w.word(if k + 1 == n { "and" } else { "," });
                    }
                    let span = self.w.word(&format!("{name}-{label}"));
                    let m = MutationRecord::new(MutationKind::PointSubstitution, Some(label.to_string())).unwrap();
                    self.w.entity(span, EntityClass::Protein, grounding, vec![m]);
                }
            }
            _ => {
                self.w.word("We");
                self.w.word("studied");
                let n = self.rng.random_range(1..=3);
                for k in 0..n {
                    if k > 0 {
                        self.w.word(if k + 1 == n { "and" } else { "," });
                    }
                    self.name();
                }
            }
        }
        self.w.end_sentence();
    }
}

/// One synthetic document. The same `(seed, index)` always yields the
/// same document.
pub fn synthetic_document(seed: u64, index: usize) -> Document {
    let mixed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index as u64;
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(mixed),
        w: Writer::default(),
        last_mutated: None,
    };
    let n = g.rng.random_range(1..=6);
    for _ in 0..n {
        g.sentence();
    }
    let w = g.w;
    Document::new(format!("synth-{seed}-{index:05}"), w.text, w.sentences, w.entities, w.events)
        .expect("generator emits well-formed documents")
}

pub fn synthetic_corpus(seed: u64, n: usize) -> Vec<Document> {
    (0..n).map(|i| synthetic_document(seed, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(synthetic_document(7, 3), synthetic_document(7, 3));
        assert_ne!(synthetic_document(7, 3).text, synthetic_document(7, 4).text);
    }

    #[test]
    fn surfaces_match_text() {
        for doc in synthetic_corpus(1, 50) {
            for e in &doc.entities {
                assert_eq!(doc.slice(e.span), Some(e.surface.as_str()));
            }
        }
    }
}
