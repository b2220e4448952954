//! Anaphor detection.
//!
//! Only mentions that take part in biochemical events are considered:
//! pronoun and definite noun-phrase arguments of extracted events, mutant
//! noun phrases, and definite nominal event triggers ("this binding")
//! that fill a slot of a regulation. Noun phrases are found from word
//! order alone.

use serde::{Deserialize, Serialize};

use crate::config::{ArgSchema, Cardinality, TriggerDictionary};
use crate::model::{is_point_substitution, Document, EntityClass, EntityMention, PosHint, Span};

pub const DEFINITE_DETERMINERS: &[&str] = &["the", "this", "that", "these", "those"];
pub const DEMONSTRATIVES: &[&str] = &["this", "that", "these", "those"];
const INDEFINITE_DETERMINERS: &[&str] = &["a", "an"];
const QUANTIFIERS: &[&str] = &["all", "both", "each"];
const NUMERALS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
    "twenty",
];
/// Modifiers allowed between a determiner and a nominal event trigger.
const MAX_TRIGGER_MODIFIERS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MutantNp {
    /// "the deletion mutant": some mutated protein, neither named.
    GenericMutant,
    /// "the K134A mutant": the mutation is named, the protein is not.
    MutationOnly { label: String },
    /// "all six FGFR3 mutants": the protein is named, the mutation is not.
    ProteinOnly { protein: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnaphorKind {
    Pronoun,
    ClassNp,
    MutantNp(MutantNp),
    NominalEvent,
}

impl AnaphorKind {
    pub fn label(&self) -> &'static str {
        match self {
            AnaphorKind::Pronoun => "pronoun",
            AnaphorKind::ClassNp => "class_np",
            AnaphorKind::MutantNp(_) => "mutant_np",
            AnaphorKind::NominalEvent => "nominal_event",
        }
    }
}

/// What an anaphor demands of its antecedent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    Class(EntityClass),
    Event(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnaphorCandidate {
    pub mention_id: String,
    pub kind: AnaphorKind,
    pub target: Option<Target>,
    pub cardinality: Cardinality,
    /// Noun-phrase span; may extend past the mention to cover a
    /// determiner, quantifier, numeral or trailing mutant noun.
    pub span: Span,
    pub demonstrative: bool,
}

impl AnaphorCandidate {
    pub fn is_entity(&self) -> bool {
        self.kind != AnaphorKind::NominalEvent
    }
}

/// A word of a sentence: a token, or a whitespace-delimited chunk when
/// the input carries no tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub span: Span,
    pub text: String,
    pub pos: Option<PosHint>,
}

impl Word {
    fn lower(&self) -> String {
        self.text.to_lowercase()
    }
}

fn is_punct(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_alphanumeric())
}

/// Words of one sentence.
pub fn sentence_words(doc: &Document, sentence: usize) -> Vec<Word> {
    let s = &doc.sentences[sentence];
    if !s.tokens.is_empty() {
        return s
            .tokens
            .iter()
            .map(|t| Word {
                span: t.span,
                text: t.surface.clone(),
                pos: t.pos,
            })
            .collect();
    }
    let text = doc.slice(s.span).unwrap_or("");
    let mut words = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<char> = text.chars().collect();
    for (i, c) in chars.iter().chain(std::iter::once(&' ')).enumerate() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                let raw: String = chars[st..i].iter().collect();
                let lead = raw.chars().take_while(|c| is_trim_punct(*c)).count();
                let trail = raw.chars().rev().take_while(|c| is_trim_punct(*c)).count();
                let len = raw.chars().count();
                if lead + trail < len {
                    let text: String = raw.chars().skip(lead).take(len - lead - trail).collect();
                    words.push(Word {
                        span: Span::new(s.span.start + st + lead, s.span.start + i - trail),
                        text,
                        pos: None,
                    });
                }
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    words
}

fn is_trim_punct(c: char) -> bool {
    matches!(c, ',' | '.' | ';' | ':' | '(' | ')' | '[' | ']' | '"' | '\'' | '!' | '?')
}

/// Lowercased words of a surface string with edge punctuation removed.
pub fn surface_words(surface: &str) -> Vec<String> {
    surface
        .split_whitespace()
        .map(|w| w.trim_matches(is_trim_punct).to_lowercase())
        .filter(|w| !w.is_empty())
        .collect()
}

fn is_determiner(word: &Word, set: &[&str]) -> bool {
    set.contains(&word.lower().as_str())
        && !matches!(word.pos, Some(PosHint::Other | PosHint::Noun | PosHint::Pron))
}

pub fn numeral_value(word: &str) -> Option<usize> {
    let w = word.to_lowercase();
    if !w.is_empty() && w.chars().all(|c| c.is_ascii_digit()) {
        return w.parse().ok();
    }
    NUMERALS.iter().position(|n| *n == w).map(|p| p + 1)
}

/// Looks like part of a name: carries an uppercase letter or a digit.
pub fn is_name_like(word: &str) -> bool {
    word.chars().any(|c| c.is_uppercase() || c.is_ascii_digit())
}

/// Morphological plural on the last hyphen segment: lowercase `-s`
/// nouns (`proteins`), capitalized names (`R-Smads`), and acronyms
/// (`BMPs`). Never `-ss`, and short stems (`its`, `Ras`) are excluded.
pub fn is_plural_word(word: &str) -> bool {
    let Some(stem) = word.strip_suffix('s') else {
        return false;
    };
    if stem.ends_with('s') {
        return false;
    }
    let seg = stem.rsplit('-').next().unwrap_or(stem);
    let mut chars = seg.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    let rest: Vec<char> = chars.collect();
    let len = rest.len() + 1;
    if first.is_lowercase() && rest.iter().all(|c| c.is_lowercase()) {
        return len >= 3;
    }
    if first.is_uppercase() && !rest.is_empty() && rest.iter().all(|c| c.is_lowercase()) {
        return len >= 4;
    }
    len >= 2 && first.is_uppercase() && rest.iter().all(|c| c.is_uppercase() || c.is_ascii_digit())
}

/// Plural entity mentions satisfy a plural anaphor on their own.
pub fn is_plural_mention(entity: &EntityMention) -> bool {
    entity.label == EntityClass::Family
        || entity
            .surface
            .split_whitespace()
            .map(|w| w.trim_matches(is_trim_punct))
            .filter(|w| !w.is_empty())
            .last()
            .is_some_and(is_plural_word)
}

/// Splits a mutant noun phrase into its named parts. Returns `None` for
/// phrases without a mutant noun and for fully specified mutants that
/// name both protein and mutation ("K650E-FGFR3 mutants").
pub fn classify_mutant_np(words: &[&str], dict: &TriggerDictionary) -> Option<MutantNp> {
    let mut has_mutant_noun = false;
    let mut label: Option<String> = None;
    let mut protein: Vec<String> = Vec::new();
    for word in words {
        let lower = word.to_lowercase();
        if dict.mutant_nouns.contains(&lower) {
            has_mutant_noun = true;
            continue;
        }
        if DEFINITE_DETERMINERS.contains(&lower.as_str())
            || INDEFINITE_DETERMINERS.contains(&lower.as_str())
            || QUANTIFIERS.contains(&lower.as_str())
            || numeral_value(word).is_some()
            || dict.stopwords.contains(&lower)
            || dict.mutation_kinds.contains_key(&lower)
        {
            continue;
        }
        for part in word.split('-').filter(|p| !p.is_empty()) {
            if is_point_substitution(part) {
                label.get_or_insert_with(|| part.to_string());
            } else if is_name_like(part) {
                protein.push(part.to_string());
            }
        }
    }
    if !has_mutant_noun {
        return None;
    }
    match (label, protein.is_empty()) {
        (Some(_), false) => None,
        (Some(label), true) => Some(MutantNp::MutationOnly { label }),
        (None, false) => Some(MutantNp::ProteinOnly {
            protein: protein.join(" "),
        }),
        (None, true) => Some(MutantNp::GenericMutant),
    }
}

/// Number of antecedents a phrase asks for.
pub fn cardinality_of(words: &[&str], dict: &TriggerDictionary) -> Cardinality {
    if let [single] = words {
        if let Some(c) = dict.pronouns.get(&single.to_lowercase()) {
            return *c;
        }
    }
    if let Some(n) = words.iter().find_map(|w| numeral_value(w)) {
        return Cardinality::Exactly(n);
    }
    if words.iter().any(|w| w.eq_ignore_ascii_case("both")) {
        return Cardinality::AtLeastTwo;
    }
    let head = words
        .iter()
        .rev()
        .find(|w| !dict.is_stopword(w) && !is_punct(w));
    match head {
        Some(h) if is_plural_word(h) || dict.mutant_nouns.contains(&h.to_lowercase()) && h.ends_with('s') => {
            Cardinality::AtLeastTwo
        }
        _ => Cardinality::One,
    }
}

/// Anaphoric reading of an entity mention, independent of whether it
/// takes part in an event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntityForm {
    Full,
    Anaphoric {
        kind: AnaphorKind,
        target: Option<Target>,
        cardinality: Cardinality,
        span: Span,
        demonstrative: bool,
    },
}

impl EntityForm {
    pub fn is_anaphoric(&self) -> bool {
        matches!(self, EntityForm::Anaphoric { .. })
    }
}

/// Noun phrase around a mention: the mention's words, extended left over
/// determiners, quantifiers and numerals and right over one mutant noun.
fn noun_phrase(doc: &Document, entity: &EntityMention, dict: &TriggerDictionary) -> Vec<Word> {
    let Some(sentence) = doc.sentence_at(entity.span.start) else {
        return vec![];
    };
    let words = sentence_words(doc, sentence);
    let first = words.iter().position(|w| w.span.end > entity.span.start);
    let Some(first) = first else {
        return vec![];
    };
    let mut last = words[first..]
        .iter()
        .position(|w| w.span.start >= entity.span.end)
        .map_or(words.len(), |p| first + p);
    if last == first {
        return vec![];
    }
    let mut start = first;
    let extends_left = |w: &Word| {
        let l = w.lower();
        is_determiner(w, DEFINITE_DETERMINERS)
            || is_determiner(w, INDEFINITE_DETERMINERS)
            || QUANTIFIERS.contains(&l.as_str())
            || numeral_value(&w.text).is_some()
    };
    let starts_with_det = |w: &Word| {
        is_determiner(w, DEFINITE_DETERMINERS) || is_determiner(w, INDEFINITE_DETERMINERS)
    };
    if !starts_with_det(&words[first]) {
        while start > 0 && extends_left(&words[start - 1]) {
            start -= 1;
            if starts_with_det(&words[start]) {
                break;
            }
        }
    }
    let has_mutant_noun = words[first..last]
        .iter()
        .any(|w| dict.mutant_nouns.contains(&w.lower()));
    if !has_mutant_noun && last < words.len() && dict.mutant_nouns.contains(&words[last].lower()) {
        last += 1;
    }
    words[start..last]
        .iter()
        .filter(|w| !is_punct(&w.text))
        .cloned()
        .collect()
}

/// Classifies one entity mention as a full mention or an anaphoric form.
pub fn entity_form(doc: &Document, entity: &EntityMention, dict: &TriggerDictionary) -> EntityForm {
    let surface = entity.surface.trim().to_lowercase();
    if let Some(card) = dict.pronouns.get(&surface) {
        return EntityForm::Anaphoric {
            kind: AnaphorKind::Pronoun,
            target: None,
            cardinality: *card,
            span: entity.span,
            demonstrative: false,
        };
    }
    let np = noun_phrase(doc, entity, dict);
    if np.is_empty() {
        return EntityForm::Full;
    }
    let span = Span::new(np[0].span.start.min(entity.span.start), np[np.len() - 1].span.end.max(entity.span.end));
    let texts: Vec<&str> = np.iter().map(|w| w.text.as_str()).collect();
    let demonstrative = is_determiner(&np[0], DEMONSTRATIVES);

    if let Some(mutant) = classify_mutant_np(&texts, dict) {
        if entity.has_specified_mutation() {
            return EntityForm::Full;
        }
        return EntityForm::Anaphoric {
            kind: AnaphorKind::MutantNp(mutant),
            target: Some(Target::Class(EntityClass::Protein)),
            cardinality: cardinality_of(&texts, dict),
            span,
            demonstrative,
        };
    }

    // Definite class noun phrase: determiner, lowercase modifiers, and a
    // class-lexicon head. A named modifier ("the IκB proteins") makes it
    // a full mention.
    if np.len() < 2 || !is_determiner(&np[0], DEFINITE_DETERMINERS) {
        return EntityForm::Full;
    }
    let head = np[np.len() - 1].lower();
    let Some(class) = dict.class_lexicon.get(&head) else {
        return EntityForm::Full;
    };
    let named_modifier = np[1..np.len() - 1]
        .iter()
        .any(|w| numeral_value(&w.text).is_none() && is_name_like(&w.text));
    if named_modifier {
        return EntityForm::Full;
    }
    EntityForm::Anaphoric {
        kind: AnaphorKind::ClassNp,
        target: Some(Target::Class(*class)),
        cardinality: cardinality_of(&texts, dict),
        span,
        demonstrative,
    }
}

/// Forms of every entity mention, indexed like `doc.entities`.
pub fn entity_forms(doc: &Document, dict: &TriggerDictionary) -> Vec<EntityForm> {
    doc.entities.iter().map(|e| entity_form(doc, e, dict)).collect()
}

/// Definite nominal event anaphor for an event mention, if it is one.
fn nominal_event(
    doc: &Document,
    event_index: usize,
    dict: &TriggerDictionary,
    schema: &ArgSchema,
) -> Option<AnaphorCandidate> {
    let event = &doc.events[event_index];
    let sentence = doc.sentence_at(event.trigger_span.start)?;
    let words = sentence_words(doc, sentence);
    let trigger_words: Vec<&Word> = words
        .iter()
        .filter(|w| w.span.overlaps(&event.trigger_span))
        .collect();
    let head = trigger_words.last()?.lower();
    let trigger_type = dict.event_triggers.get(&head)?;
    if *trigger_type != event.event_type || schema.is_complete(event) {
        return None;
    }
    let first = words.iter().position(|w| w.span.overlaps(&event.trigger_span))?;
    let mut i = first;
    let mut modifiers = 0;
    while i > 0 {
        i -= 1;
        let w = &words[i];
        if is_determiner(w, DEFINITE_DETERMINERS) {
            return Some(AnaphorCandidate {
                mention_id: event.id.clone(),
                kind: AnaphorKind::NominalEvent,
                target: Some(Target::Event(event.event_type.clone())),
                cardinality: Cardinality::One,
                span: Span::new(w.span.start, event.trigger_span.end),
                demonstrative: is_determiner(w, DEMONSTRATIVES),
            });
        }
        if modifiers == MAX_TRIGGER_MODIFIERS
            || is_punct(&w.text)
            || dict.is_stopword(&w.text)
            || is_name_like(&w.text)
            || is_determiner(w, INDEFINITE_DETERMINERS)
        {
            return None;
        }
        modifiers += 1;
    }
    None
}

/// Anaphor candidates in document order. Entity candidates are always
/// arguments of some event; nominal event candidates always fill a slot
/// of a regulation-family event.
pub fn detect_candidates(doc: &Document, dict: &TriggerDictionary, schema: &ArgSchema) -> Vec<AnaphorCandidate> {
    let forms = entity_forms(doc, dict);
    detect_with_forms(doc, dict, schema, &forms)
}

pub(crate) fn detect_with_forms(
    doc: &Document,
    dict: &TriggerDictionary,
    schema: &ArgSchema,
    forms: &[EntityForm],
) -> Vec<AnaphorCandidate> {
    let mut out = Vec::new();
    for (entity, form) in doc.entities.iter().zip(forms) {
        let EntityForm::Anaphoric {
            kind,
            target,
            cardinality,
            span,
            demonstrative,
        } = form
        else {
            continue;
        };
        if doc.events_with_argument(&entity.id).next().is_none() {
            continue;
        }
        out.push(AnaphorCandidate {
            mention_id: entity.id.clone(),
            kind: kind.clone(),
            target: target.clone(),
            cardinality: *cardinality,
            span: *span,
            demonstrative: *demonstrative,
        });
    }
    for (i, event) in doc.events.iter().enumerate() {
        let hosted = doc
            .events_with_argument(&event.id)
            .any(|host| schema.is_regulation(&host.event_type));
        if !hosted {
            continue;
        }
        if let Some(c) = nominal_event(doc, i, dict, schema) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| (a.span.start, &a.mention_id).cmp(&(b.span.start, &b.mention_id)));
    out.dedup_by(|a, b| a.mention_id == b.mention_id);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dict() -> TriggerDictionary {
        TriggerDictionary::default_dictionary()
    }

    #[test]
    fn mutant_np_subkinds() {
        let d = dict();
        assert_eq!(
            classify_mutant_np(&["the", "S34A", "mutant"], &d),
            Some(MutantNp::MutationOnly { label: "S34A".into() })
        );
        assert_eq!(
            classify_mutant_np(&["the", "K134A", "mutant"], &d),
            Some(MutantNp::MutationOnly { label: "K134A".into() })
        );
        assert_eq!(
            classify_mutant_np(&["all", "six", "FGFR3", "mutants"], &d),
            Some(MutantNp::ProteinOnly { protein: "FGFR3".into() })
        );
        assert_eq!(
            classify_mutant_np(&["the", "deletion", "mutant"], &d),
            Some(MutantNp::GenericMutant)
        );
        assert_eq!(classify_mutant_np(&["the", "protein"], &d), None);
        assert_eq!(classify_mutant_np(&["K650E-FGFR3", "mutants"], &d), None);
    }

    #[test]
    fn cardinalities() {
        let d = dict();
        assert_eq!(cardinality_of(&["its"], &d), Cardinality::One);
        assert_eq!(cardinality_of(&["their"], &d), Cardinality::AtLeastTwo);
        assert_eq!(cardinality_of(&["both"], &d), Cardinality::AtLeastTwo);
        assert_eq!(cardinality_of(&["all", "six", "FGFR3", "mutants"], &d), Cardinality::Exactly(6));
        assert_eq!(cardinality_of(&["The", "R-Smads"], &d), Cardinality::AtLeastTwo);
        assert_eq!(cardinality_of(&["the", "protein"], &d), Cardinality::One);
        assert_eq!(cardinality_of(&["the", "FGFR3", "mutant"], &d), Cardinality::One);
    }

    #[test]
    fn plural_words() {
        assert!(is_plural_word("proteins"));
        assert!(is_plural_word("kinases"));
        assert!(is_plural_word("BMPs"));
        assert!(is_plural_word("R-Smads"));
        assert!(!is_plural_word("Ras"));
        assert!(!is_plural_word("class"));
        assert!(!is_plural_word("its"));
        assert!(!is_plural_word("FOXP3"));
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral_value("six"), Some(6));
        assert_eq!(numeral_value("Six"), Some(6));
        assert_eq!(numeral_value("12"), Some(12));
        assert_eq!(numeral_value("sixth"), None);
    }

    #[test]
    fn surface_words_strip_punctuation() {
        assert_eq!(surface_words("(IKKα),"), vec!["ikkα"]);
        assert_eq!(surface_words("the enzyme guanylate cyclase"), vec!["the", "enzyme", "guanylate", "cyclase"]);
    }
}
