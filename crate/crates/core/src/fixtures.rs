//! Hand-annotated example corpus with expected resolutions.
//!
//! Each fixture is a short standoff document built from a literature
//! sentence, together with the links, chains and completed events a
//! correct resolver must produce. The expectations were counted by hand
//! and serve as the oracle for the fixture tests.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{
    Argument, Document, EntityClass, EntityMention, EventMention, MutationKind, MutationRecord, Polarity, Sentence,
    Span, Token,
};
use crate::grounding::GroundingTable;
use crate::pipeline::{Resolution, Resolver};
use crate::state::SieveName;

/// Grounding rows shipped with the corpus.
pub const GROUNDING_TSV: &str = "GSK-3β\tuniprot:P49841\n\
glycogen synthase kinase 3 beta\tuniprot:P49841\n\
FGFR3\tuniprot:P22607\n";

const FGFR3: &str = "uniprot:P22607";

fn is_split_punct(c: char) -> bool {
    matches!(c, ',' | '.' | ';' | ':' | '(' | ')' | '[' | ']' | '"' | '!' | '?')
}

/// Whitespace tokenization with common punctuation split off. Offsets
/// are character offsets relative to `base`.
pub fn tokenize(text: &str, base: usize) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<char> = text.chars().collect();
    let close = |s: &mut Option<usize>, end: usize, tokens: &mut Vec<Token>| {
        if let Some(st) = s.take() {
            tokens.push(Token {
                span: Span::new(base + st, base + end),
                surface: chars[st..end].iter().collect(),
                pos: None,
            });
        }
    };
    for (i, &c) in chars.iter().enumerate() {
        if c.is_whitespace() {
            close(&mut start, i, &mut tokens);
        } else if is_split_punct(c) {
            close(&mut start, i, &mut tokens);
            tokens.push(Token {
                span: Span::new(base + i, base + i + 1),
                surface: c.to_string(),
                pos: None,
            });
        } else if start.is_none() {
            start = Some(i);
        }
    }
    close(&mut start, chars.len(), &mut tokens);
    tokens
}

/// Builds a tokenized document from sentences and mention surfaces.
#[derive(Debug, Clone)]
pub struct DocBuilder {
    doc_id: String,
    text: String,
    sentences: Vec<Sentence>,
    entities: Vec<EntityMention>,
    events: Vec<EventMention>,
}

impl DocBuilder {
    pub fn new(doc_id: &str) -> Self {
        DocBuilder {
            doc_id: doc_id.to_string(),
            text: String::new(),
            sentences: Vec::new(),
            entities: Vec::new(),
            events: Vec::new(),
        }
    }

    /// Appends a sentence, separated from the previous one by a space.
    pub fn sentence(mut self, s: &str) -> Self {
        if !self.text.is_empty() {
            self.text.push(' ');
        }
        let start = self.text.chars().count();
        self.text.push_str(s);
        let end = self.text.chars().count();
        self.sentences.push(Sentence {
            index: self.sentences.len(),
            span: Span::new(start, end),
            tokens: tokenize(s, start),
        });
        self
    }

    /// Character span of the `nth` (1-based) occurrence of `surface` that
    /// starts and ends on token boundaries.
    pub fn locate(&self, surface: &str, nth: usize) -> Span {
        let tokens: Vec<&Token> = self.sentences.iter().flat_map(|s| &s.tokens).collect();
        let chars: Vec<char> = self.text.chars().collect();
        let needle: Vec<char> = surface.chars().collect();
        let mut seen = 0;
        for t in &tokens {
            let start = t.span.start;
            let end = start + needle.len();
            if end > chars.len() || chars[start..end] != needle[..] {
                continue;
            }
            if !tokens.iter().any(|u| u.span.end == end) {
                continue;
            }
            seen += 1;
            if seen == nth {
                return Span::new(start, end);
            }
        }
        panic!("`{surface}` occurrence {nth} not found in {}", self.doc_id);
    }

    pub fn entity(self, id: &str, surface: &str, nth: usize, label: EntityClass) -> Self {
        self.entity_with(id, surface, nth, label, None, vec![])
    }

    pub fn entity_with(
        mut self,
        id: &str,
        surface: &str,
        nth: usize,
        label: EntityClass,
        grounding: Option<&str>,
        mutations: Vec<MutationRecord>,
    ) -> Self {
        let span = self.locate(surface, nth);
        self.entities.push(EntityMention {
            id: id.to_string(),
            span,
            label,
            grounding_id: grounding.map(str::to_string),
            mutations,
            surface: String::new(),
        });
        self
    }

    pub fn event(self, id: &str, trigger: &str, nth: usize, event_type: &str, args: &[(&str, &str)]) -> Self {
        self.event_with(id, trigger, nth, event_type, Polarity::Unspecified, args)
    }

    pub fn event_with(
        mut self,
        id: &str,
        trigger: &str,
        nth: usize,
        event_type: &str,
        polarity: Polarity,
        args: &[(&str, &str)],
    ) -> Self {
        let span = self.locate(trigger, nth);
        self.events.push(EventMention {
            id: id.to_string(),
            trigger_span: span,
            event_type: event_type.to_string(),
            arguments: args.iter().map(|(r, m)| Argument::new(*r, *m)).collect(),
            polarity,
            trigger_surface: String::new(),
        });
        self
    }

    pub fn build(self) -> Document {
        let id = self.doc_id.clone();
        Document::new(self.doc_id, self.text, self.sentences, self.entities, self.events)
            .unwrap_or_else(|e| panic!("fixture {id} is invalid: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedLink {
    pub anaphor: String,
    pub antecedents: Vec<String>,
    pub sieve: SieveName,
}

/// A completed event compared by type, sorted `role=ref` arguments and
/// whether it depends on a link.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExpectedEvent {
    #[serde(rename = "type")]
    pub event_type: String,
    pub args: Vec<String>,
    pub coref: bool,
}

impl ExpectedEvent {
    pub fn new(event_type: &str, args: &[&str], coref: bool) -> Self {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        args.sort();
        ExpectedEvent {
            event_type: event_type.to_string(),
            args,
            coref,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    /// The complete set of links.
    pub links: Vec<ExpectedLink>,
    /// Groups of mentions that must end up in one chain.
    pub chains: Vec<Vec<String>>,
    /// `(anaphor, mention)` pairs that must never be linked.
    pub forbidden: Vec<(String, String)>,
    /// Mentions that must never be treated as anaphors.
    pub never_anaphors: Vec<String>,
    /// Source events removed by clean-up or completion.
    pub dropped: Vec<String>,
    /// The complete multiset of completed events.
    pub events: Vec<ExpectedEvent>,
    pub coref_events: usize,
    pub baseline_events: usize,
}

impl Expectation {
    /// Differences between a resolution of `doc` and this expectation;
    /// empty when everything matches.
    pub fn verify(&self, doc: &Document, res: &Resolution) -> Vec<String> {
        let mut problems = Vec::new();
        let mut got: Vec<(String, Vec<String>, SieveName)> = res
            .links()
            .iter()
            .map(|l| (l.anaphor_id.clone(), l.antecedent_ids.clone(), l.sieve))
            .collect();
        got.sort();
        let mut want: Vec<(String, Vec<String>, SieveName)> = self
            .links
            .iter()
            .map(|l| (l.anaphor.clone(), l.antecedents.clone(), l.sieve))
            .collect();
        want.sort();
        if got != want {
            problems.push(format!("links {got:?}, expected {want:?}"));
        }

        let mut got: Vec<ExpectedEvent> = res
            .completion
            .events
            .iter()
            .map(|e| {
                let args: Vec<String> = e.arguments.iter().map(|a| format!("{}={}", a.role, a.mention_ref)).collect();
                let args: Vec<&str> = args.iter().map(String::as_str).collect();
                ExpectedEvent::new(&e.event_type, &args, !e.provenance.is_empty())
            })
            .collect();
        got.sort();
        let mut want = self.events.clone();
        want.sort();
        if got != want {
            problems.push(format!("events {got:?}, expected {want:?}"));
        }

        let dropped: BTreeSet<String> = res.dropped_events(doc).into_iter().map(|d| d.id).collect();
        let want: BTreeSet<String> = self.dropped.iter().cloned().collect();
        if dropped != want {
            problems.push(format!("dropped {dropped:?}, expected {want:?}"));
        }

        for group in &self.chains {
            let chain = res.chains.iter().find(|c| c.contains(&group[0]));
            if !chain.is_some_and(|c| group.iter().all(|m| c.contains(m))) {
                problems.push(format!("{group:?} not in one chain"));
            }
        }
        for (anaphor, mention) in &self.forbidden {
            if res
                .links()
                .iter()
                .any(|l| &l.anaphor_id == anaphor && l.antecedent_ids.contains(mention))
            {
                problems.push(format!("forbidden link {anaphor} -> {mention}"));
            }
        }
        for id in &self.never_anaphors {
            if res.candidates.iter().any(|c| &c.mention_id == id) {
                problems.push(format!("{id} detected as an anaphor"));
            }
        }
        problems
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub doc: Document,
    pub expect: Expectation,
}

fn link(anaphor: &str, antecedents: &[&str], sieve: SieveName) -> ExpectedLink {
    ExpectedLink {
        anaphor: anaphor.into(),
        antecedents: antecedents.iter().map(|s| s.to_string()).collect(),
        sieve,
    }
}

fn ev(event_type: &str, args: &[&str], coref: bool) -> ExpectedEvent {
    ExpectedEvent::new(event_type, args, coref)
}

fn strs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn expectation(links: Vec<ExpectedLink>, events: Vec<ExpectedEvent>) -> Expectation {
    let coref_events = events.iter().filter(|e| e.coref).count();
    Expectation {
        links,
        baseline_events: events.len() - coref_events,
        coref_events,
        events,
        ..Expectation::default()
    }
}

fn point(label: &str) -> MutationRecord {
    MutationRecord::new(MutationKind::PointSubstitution, Some(label.to_string())).expect("valid label")
}

use EntityClass::{CellularComponent, Gene, Protein, SimpleChemical};
use SieveName::{ClassNp, EventCoref, MutantMatch, Pronominal, StrictHeadMatch};

fn gsk3b_selfbinding(name: &'static str) -> Fixture {
    let doc = DocBuilder::new(name)
        .sentence("We incubated GSK3β with excess Axin GBD protein to saturate its binding to GSK3β.")
        .entity("T1", "GSK3β", 1, Protein)
        .entity("T2", "Axin GBD", 1, Protein)
        .entity("T3", "its", 1, Protein)
        .entity("T4", "GSK3β", 2, Protein)
        .event("E1", "binding", 1, "Binding", &[("theme1", "T3"), ("theme2", "T4")])
        .build();
    let mut expect = expectation(
        vec![link("T3", &["T2"], Pronominal)],
        vec![ev("Binding", &["theme1=T2", "theme2=T4"], true)],
    );
    expect.chains = vec![strs(&["T1", "T4"])];
    expect.forbidden = vec![("T3".into(), "T1".into()), ("T3".into(), "T4".into())];
    Fixture { name, doc, expect }
}

/// The 22 example fixtures in corpus order.
pub fn corpus() -> Vec<Fixture> {
    let mut out = Vec::new();

    out.push(gsk3b_selfbinding("ex01_gsk3b_selfbinding"));

    let doc = DocBuilder::new("ex02_pax8")
        .sentence("The only previous study concerned the class II paired box gene Pax8, and its interaction with Smad3.")
        .entity("T1", "Pax8", 1, Gene)
        .entity("T2", "its", 1, Protein)
        .entity("T3", "Smad3", 1, Protein)
        .event("E1", "interaction", 1, "Binding", &[("theme1", "T2"), ("theme2", "T3")])
        .build();
    out.push(Fixture {
        name: "ex02_pax8",
        doc,
        expect: expectation(
            vec![link("T2", &["T1"], Pronominal)],
            vec![ev("Binding", &["theme1=T1", "theme2=T3"], true)],
        ),
    });

    let doc = DocBuilder::new("ex03_relative_which")
        .sentence("TGFβ signaling is initiated by the binding of TGFβ to TBRII, which leads to the recruitment of TBRI.")
        .entity("T1", "TGFβ", 1, Protein)
        .entity("T2", "TGFβ", 2, Protein)
        .entity("T3", "TBRII", 1, Protein)
        .entity("T4", "TBRI", 1, Protein)
        .event("E1", "binding", 1, "Binding", &[("theme1", "T2"), ("theme2", "T3")])
        .event("E2", "recruitment", 1, "Translocation", &[("theme", "T4")])
        .event_with("E3", "leads", 1, "Regulation", Polarity::Positive, &[("controller", "E1"), ("controlled", "E2")])
        .build();
    out.push(Fixture {
        name: "ex03_relative_which",
        doc,
        expect: expectation(
            vec![],
            vec![
                ev("Binding", &["theme1=T2", "theme2=T3"], false),
                ev("Translocation", &["theme=T4"], false),
                ev("Regulation", &["controller=E1", "controlled=E2"], false),
            ],
        ),
    });

    let doc = DocBuilder::new("ex05_pik3ca_braf")
        .sentence("PIK3CA and BRAF are, in part, regulated by direct binding to activated forms of the Ras proteins.")
        .entity("T1", "PIK3CA", 1, Protein)
        .entity("T2", "BRAF", 1, Protein)
        .entity("T3", "Ras", 1, Protein)
        .event("E1", "binding", 1, "Binding", &[("theme1", "T1"), ("theme1", "T2"), ("theme2", "T3")])
        .build();
    out.push(Fixture {
        name: "ex05_pik3ca_braf",
        doc,
        expect: expectation(
            vec![],
            vec![
                ev("Binding", &["theme1=T1", "theme2=T3"], false),
                ev("Binding", &["theme1=T2", "theme2=T3"], false),
            ],
        ),
    });

    let doc = DocBuilder::new("ex06_ccbl_mlk3")
        .sentence("While over-expressed c-Cbl stabilized \"activated\" MLK3, it suppressed its capacity to promote phosphorylation.")
        .entity("T1", "c-Cbl", 1, Protein)
        .entity("T2", "MLK3", 1, Protein)
        .entity("T3", "it", 1, Protein)
        .entity("T4", "its", 1, Protein)
        .event_with("E1", "suppressed", 1, "Regulation", Polarity::Negative, &[("controller", "T3"), ("controlled", "T4")])
        .build();
    out.push(Fixture {
        name: "ex06_ccbl_mlk3",
        doc,
        expect: expectation(
            vec![link("T3", &["T1"], Pronominal), link("T4", &["T2"], Pronominal)],
            vec![ev("Regulation", &["controller=T1", "controlled=T2"], true)],
        ),
    });

    let doc = DocBuilder::new("ex07_s34a")
        .sentence("The anti-pSer34 antibody reacted with AATYK1A but not with the S34A mutant.")
        .entity("T1", "anti-pSer34 antibody", 1, Protein)
        .entity("T2", "AATYK1A", 1, Protein)
        .entity("T3", "S34A", 1, Protein)
        .event("E1", "reacted", 1, "Binding", &[("theme1", "T1"), ("theme2", "T3")])
        .build();
    out.push(Fixture {
        name: "ex07_s34a",
        doc,
        expect: expectation(
            vec![link("T3", &["T2"], ClassNp)],
            vec![ev("Binding", &["theme1=T1", "theme2=T2"], true)],
        ),
    });

    let doc = DocBuilder::new("ex08_k134a")
        .sentence("We prepared recombinant H2AX-K134A.")
        .sentence(
            "The intensity of the band corresponding to histone H2AX methylation was significantly diminished in the \
             K134A mutant compared with that of wild-type H2AX (H2AX-WT).",
        )
        .entity_with("T1", "H2AX-K134A", 1, Protein, None, vec![point("K134A")])
        .entity("T2", "H2AX", 1, Protein)
        .entity("T3", "K134A", 1, Protein)
        .entity("T4", "H2AX", 2, Protein)
        .entity("T5", "H2AX-WT", 1, Protein)
        .event("E1", "methylation", 1, "Methylation", &[("theme", "T2")])
        .event_with("E2", "diminished", 1, "Regulation", Polarity::Negative, &[("controller", "T3"), ("controlled", "E1")])
        .build();
    out.push(Fixture {
        name: "ex08_k134a",
        doc,
        expect: expectation(
            vec![link("T3", &["T1"], ClassNp)],
            vec![
                ev("Methylation", &["theme=T2"], false),
                ev("Regulation", &["controller=T1", "controlled=E1"], true),
            ],
        ),
    });

    let labels = ["N540K", "G380R", "R248C", "Y373C", "K650M", "K650E"];
    let mut b = DocBuilder::new("ex09_fgfr3")
        .sentence("Cells were transfected with N540K, G380R, R248C, Y373C, K650M and K650E-FGFR3 mutants.")
        .sentence("All six FGFR3 mutants induced activatory ERK(T202/Y204) phosphorylation.");
    for (i, label) in labels.iter().enumerate() {
        let surface = if *label == "K650E" { "K650E-FGFR3" } else { label };
        b = b.entity_with(&format!("T{}", i + 1), surface, 1, Protein, Some(FGFR3), vec![point(label)]);
    }
    let doc = b
        .entity("T7", "FGFR3", 1, Protein)
        .entity("T8", "ERK", 1, Protein)
        .event("E1", "phosphorylation", 1, "Phosphorylation", &[("theme", "T8")])
        .event_with("E2", "induced", 1, "Regulation", Polarity::Positive, &[("controller", "T7"), ("controlled", "E1")])
        .build();
    let mut events = vec![ev("Phosphorylation", &["theme=T8"], false)];
    for i in 1..=6 {
        events.push(ev("Regulation", &[&format!("controller=T{i}"), "controlled=E1"], true));
    }
    out.push(Fixture {
        name: "ex09_fgfr3",
        doc,
        expect: expectation(
            vec![link("T7", &["T1", "T2", "T3", "T4", "T5", "T6"], MutantMatch)],
            events,
        ),
    });

    out.push(gsk3b_selfbinding("ex10_gsk3b"));

    let doc = DocBuilder::new("ex11_gsk3b_grounding")
        .sentence("Central to the hyperphosphorylation of Tau was the activation of GSK-3β (glycogen synthase kinase 3 beta).")
        .sentence("It phosphorylates GSK-3β.")
        .entity("T1", "Tau", 1, Protein)
        .entity("T2", "GSK-3β", 1, Protein)
        .entity("T3", "glycogen synthase kinase 3 beta", 1, Protein)
        .entity("T4", "It", 1, Protein)
        .entity("T5", "GSK-3β", 2, Protein)
        .event("E1", "hyperphosphorylation", 1, "Phosphorylation", &[("theme", "T1")])
        .event("E2", "activation", 1, "Activation", &[("controlled", "T2")])
        .event("E3", "phosphorylates", 1, "Phosphorylation", &[("theme", "T5"), ("cause", "T4")])
        .build();
    let mut expect = expectation(
        vec![link("T4", &["T1"], Pronominal)],
        vec![
            ev("Phosphorylation", &["theme=T1"], false),
            ev("Activation", &["controlled=T2"], false),
            ev("Phosphorylation", &["theme=T5", "cause=T1"], true),
        ],
    );
    expect.chains = vec![strs(&["T2", "T3", "T5"])];
    expect.forbidden = vec![("T4".into(), "T3".into()), ("T4".into(), "T2".into())];
    out.push(Fixture {
        name: "ex11_gsk3b_grounding",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex12_foxp3")
        .sentence("FOXP3 is an essential transcription factor; however, the mechanisms regulating its expression are as yet unknown.")
        .entity("T1", "FOXP3", 1, Protein)
        .entity("T2", "its", 1, Protein)
        .event("E1", "expression", 1, "Expression", &[("theme", "T2")])
        .build();
    out.push(Fixture {
        name: "ex12_foxp3",
        doc,
        expect: expectation(
            vec![link("T2", &["T1"], Pronominal)],
            vec![ev("Expression", &["theme=T1"], true)],
        ),
    });

    let doc = DocBuilder::new("ex13_rb")
        .sentence("Rb binds to E2F.")
        .sentence("The protein also inhibits the transactivation capacity of E2F.")
        .entity("T1", "Rb", 1, Protein)
        .entity("T2", "E2F", 1, Protein)
        .entity("T3", "protein", 1, Protein)
        .entity("T4", "E2F", 2, Protein)
        .event("E1", "binds", 1, "Binding", &[("theme1", "T1"), ("theme2", "T2")])
        .event_with("E2", "inhibits", 1, "Regulation", Polarity::Negative, &[("controller", "T3"), ("controlled", "T4")])
        .build();
    out.push(Fixture {
        name: "ex13_rb",
        doc,
        expect: expectation(
            vec![link("T3", &["T1"], ClassNp)],
            vec![
                ev("Binding", &["theme1=T1", "theme2=T2"], false),
                ev("Regulation", &["controller=T1", "controlled=T4"], true),
            ],
        ),
    });

    let doc = DocBuilder::new("ex14_rsmads")
        .sentence("BMP signals are transduced by the receptor Smads (Smad-1, Smad-5, and Smad-8).")
        .sentence("The R-Smads then form complexes with the co-Smad (Smad4) and are translocated into the nucleus.")
        .entity("T1", "Smad-1", 1, Protein)
        .entity("T2", "Smad-5", 1, Protein)
        .entity("T3", "Smad-8", 1, Protein)
        .entity("T4", "R-Smads", 1, Protein)
        .entity("T5", "Smad4", 1, Protein)
        .entity("T6", "nucleus", 1, CellularComponent)
        .event("E1", "complexes", 1, "Binding", &[("theme1", "T4"), ("theme2", "T5")])
        .event("E2", "translocated", 1, "Translocation", &[("theme", "T4"), ("destination", "T6")])
        .build();
    let mut events = Vec::new();
    for t in ["T1", "T2", "T3"] {
        events.push(ev("Binding", &[&format!("theme1={t}"), "theme2=T5"], true));
        events.push(ev("Translocation", &[&format!("theme={t}"), "destination=T6"], true));
    }
    out.push(Fixture {
        name: "ex14_rsmads",
        doc,
        expect: expectation(vec![link("T4", &["T1", "T2", "T3"], ClassNp)], events),
    });

    let doc = DocBuilder::new("ex15_enzyme_headmatch")
        .sentence("Nitric oxide binds to the heme group in the enzyme guanylate cyclase.")
        .sentence("As a result, the enzyme becomes active and catalyses the production of more cGMP from GTP.")
        .entity("T1", "Nitric oxide", 1, SimpleChemical)
        .entity("T2", "enzyme guanylate cyclase", 1, Protein)
        .entity("T3", "enzyme", 2, Protein)
        .event("E1", "active", 1, "Activation", &[("controlled", "T3")])
        .build();
    out.push(Fixture {
        name: "ex15_enzyme_headmatch",
        doc,
        expect: expectation(
            vec![link("T3", &["T2"], StrictHeadMatch)],
            vec![ev("Activation", &["controlled=T2"], true)],
        ),
    });

    let doc = DocBuilder::new("ex16_baf_emerin")
        .sentence("Endogenous BAF and emerin consistently co-peaked in their interaction with FLAG-CUL4A after UV-treatment.")
        .entity("T1", "BAF", 1, Protein)
        .entity("T2", "emerin", 1, Protein)
        .entity("T3", "their", 1, Protein)
        .entity("T4", "FLAG-CUL4A", 1, Protein)
        .event("E1", "interaction", 1, "Binding", &[("theme1", "T3"), ("theme2", "T4")])
        .build();
    out.push(Fixture {
        name: "ex16_baf_emerin",
        doc,
        expect: expectation(
            vec![link("T3", &["T1", "T2"], Pronominal)],
            vec![
                ev("Binding", &["theme1=T1", "theme2=T4"], true),
                ev("Binding", &["theme1=T2", "theme2=T4"], true),
            ],
        ),
    });

    let doc = DocBuilder::new("ex17_cataphor")
        .sentence("After its release from IκBα, NF-κB p65 can undergo post-translational modification to activate gene transcription.")
        .entity("T1", "its", 1, Protein)
        .entity("T2", "IκBα", 1, Protein)
        .entity("T3", "NF-κB p65", 1, Protein)
        .event("E1", "release", 1, "Dissociation", &[("theme1", "T1"), ("theme2", "T2")])
        .build();
    let mut expect = expectation(vec![], vec![]);
    expect.dropped = strs(&["E1"]);
    expect.forbidden = vec![("T1".into(), "T3".into())];
    out.push(Fixture {
        name: "ex17_cataphor",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex18_ll37")
        .sentence("LL-37 forms a complex together with the IGF-1R, and this binding results in IGF-1R activation.")
        .entity("T1", "LL-37", 1, Protein)
        .entity("T2", "IGF-1R", 1, Protein)
        .entity("T3", "IGF-1R", 2, Protein)
        .event("E1", "complex", 1, "Binding", &[("theme1", "T1"), ("theme2", "T2")])
        .event("E2", "binding", 1, "Binding", &[])
        .event("E3", "activation", 1, "Activation", &[("controlled", "T3")])
        .event_with("E4", "results", 1, "Regulation", Polarity::Positive, &[("controller", "E2"), ("controlled", "E3")])
        .build();
    let mut expect = expectation(
        vec![link("E2", &["E1"], EventCoref)],
        vec![
            ev("Binding", &["theme1=T1", "theme2=T2"], false),
            ev("Binding", &["theme1=T1", "theme2=T2"], true),
            ev("Activation", &["controlled=T3"], false),
            ev("Regulation", &["controller=E2", "controlled=E3"], true),
        ],
    );
    expect.chains = vec![strs(&["T2", "T3"])];
    out.push(Fixture {
        name: "ex18_ll37",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex19_ikappab")
        .sentence("Two related kinases, IκB kinase α (IKKα) and IKKβ, phosphorylate the IκB proteins.")
        .entity("T1", "IκB kinase α", 1, Protein)
        .entity("T2", "IKKα", 1, Protein)
        .entity("T3", "IKKβ", 1, Protein)
        .entity("T4", "IκB proteins", 1, Protein)
        .event("E1", "phosphorylate", 1, "Phosphorylation", &[("theme", "T4"), ("cause", "T1")])
        .event("E2", "phosphorylate", 1, "Phosphorylation", &[("theme", "T4"), ("cause", "T3")])
        .build();
    let mut expect = expectation(
        vec![],
        vec![
            ev("Phosphorylation", &["theme=T4", "cause=T1"], false),
            ev("Phosphorylation", &["theme=T4", "cause=T3"], false),
        ],
    );
    expect.never_anaphors = strs(&["T4"]);
    expect.forbidden = vec![("T4".into(), "T1".into())];
    out.push(Fixture {
        name: "ex19_ikappab",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex20_expletive")
        .sentence("It is hypothesized that Akt binds Bad.")
        .entity("T1", "It", 1, Protein)
        .entity("T2", "Akt", 1, Protein)
        .entity("T3", "Bad", 1, Protein)
        .event("E1", "binds", 1, "Binding", &[("theme1", "T2"), ("theme2", "T3")])
        .event_with("E2", "hypothesized", 1, "Regulation", Polarity::Positive, &[("controller", "T1"), ("controlled", "E1")])
        .build();
    let mut expect = expectation(vec![], vec![ev("Binding", &["theme1=T2", "theme2=T3"], false)]);
    expect.dropped = strs(&["E2"]);
    out.push(Fixture {
        name: "ex20_expletive",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex21_indefinite_kinase")
        .sentence("A kinase phosphorylates Tau.")
        .sentence("This kinase is activated by Cdk5.")
        .entity("T1", "kinase", 1, Protein)
        .entity("T2", "Tau", 1, Protein)
        .entity("T3", "kinase", 2, Protein)
        .entity("T4", "Cdk5", 1, Protein)
        .event("E1", "phosphorylates", 1, "Phosphorylation", &[("theme", "T2"), ("cause", "T1")])
        .event_with("E2", "activated", 1, "Activation", Polarity::Positive, &[("controlled", "T3"), ("controller", "T4")])
        .build();
    let mut expect = expectation(
        vec![link("T3", &["T1"], StrictHeadMatch)],
        vec![
            ev("Phosphorylation", &["theme=T2", "cause=T1"], false),
            ev("Activation", &["controlled=T1", "controller=T4"], true),
        ],
    );
    expect.never_anaphors = strs(&["T1"]);
    out.push(Fixture {
        name: "ex21_indefinite_kinase",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex22_promotion")
        .sentence("Akt phosphorylates Bad.")
        .sentence("LY294002 blocks the promotion.")
        .entity("T1", "Akt", 1, Protein)
        .entity("T2", "Bad", 1, Protein)
        .entity("T3", "LY294002", 1, SimpleChemical)
        .event("E1", "phosphorylates", 1, "Phosphorylation", &[("theme", "T2"), ("cause", "T1")])
        .event("E2", "promotion", 1, "Regulation", &[])
        .event_with("E3", "blocks", 1, "Regulation", Polarity::Negative, &[("controller", "T3"), ("controlled", "E2")])
        .build();
    let mut expect = expectation(vec![], vec![ev("Phosphorylation", &["theme=T2", "cause=T1"], false)]);
    expect.dropped = strs(&["E2", "E3"]);
    out.push(Fixture {
        name: "ex22_promotion",
        doc,
        expect,
    });

    let doc = DocBuilder::new("ex23_truncation_mutant")
        .sentence(
            "When RUFY1 was further truncated from the C-terminus [RUFY1(1-420)], the truncation mutant could not \
             bind to either Rab14 or Rab4.",
        )
        .entity("T1", "RUFY1", 1, Protein)
        .entity_with(
            "T2",
            "RUFY1(1-420)",
            1,
            Protein,
            None,
            vec![MutationRecord::new(MutationKind::Truncation, Some("1-420".into())).expect("valid")],
        )
        .entity("T3", "truncation mutant", 1, Protein)
        .entity("T4", "Rab14", 1, Protein)
        .entity("T5", "Rab4", 1, Protein)
        .event("E1", "bind", 1, "Binding", &[("theme1", "T3"), ("theme2", "T4"), ("theme2", "T5")])
        .build();
    out.push(Fixture {
        name: "ex23_truncation_mutant",
        doc,
        expect: expectation(
            vec![link("T3", &["T2"], ClassNp)],
            vec![
                ev("Binding", &["theme1=T2", "theme2=T4"], true),
                ev("Binding", &["theme1=T2", "theme2=T5"], true),
            ],
        ),
    });

    out
}

/// Default resolver with the corpus grounding table loaded.
pub fn corpus_resolver() -> Resolver {
    Resolver::with_defaults().with_grounding(GroundingTable::load(GROUNDING_TSV.as_bytes()).expect("valid table"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub doc_id: String,
    pub file: String,
    #[serde(flatten)]
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub grounding: String,
    pub total_coref_events: usize,
    pub total_baseline_events: usize,
    pub fixtures: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn from_corpus(corpus: &[Fixture]) -> Self {
        Manifest {
            grounding: "grounding.tsv".into(),
            total_coref_events: corpus.iter().map(|f| f.expect.coref_events).sum(),
            total_baseline_events: corpus.iter().map(|f| f.expect.baseline_events).sum(),
            fixtures: corpus
                .iter()
                .map(|f| ManifestEntry {
                    doc_id: f.name.to_string(),
                    file: format!("{}.json", f.name),
                    expect: f.expect.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_splits_punctuation_but_not_hyphens() {
        let toks: Vec<String> = tokenize("[RUFY1(1-420)], the \"x\"", 0).into_iter().map(|t| t.surface).collect();
        assert_eq!(toks, vec!["[", "RUFY1", "(", "1-420", ")", "]", ",", "the", "\"", "x", "\""]);
    }

    #[test]
    fn locate_respects_token_boundaries() {
        let b = DocBuilder::new("d").sentence("H2AX-K134A and histone H2AX.");
        assert_eq!(b.locate("H2AX", 1), Span::new(23, 27));
        assert_eq!(b.locate("H2AX-K134A", 1), Span::new(0, 10));
    }

    #[test]
    fn corpus_has_22_fixtures_and_29_coref_events() {
        let corpus = corpus();
        assert_eq!(corpus.len(), 22);
        let m = Manifest::from_corpus(&corpus);
        assert_eq!(m.total_coref_events, 29);
        assert_eq!(m.total_baseline_events, 17);
    }
}
