//! Document and mention data model.
//!
//! All offsets are character offsets into the document text (not byte
//! offsets), so `GSK3β` spans five positions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CorpusError;

/// Half-open character range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Smallest span covering both.
    pub fn cover(&self, other: &Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// Coarse part-of-speech hint supplied by upstream tooling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosHint {
    Det,
    Pron,
    Noun,
    Other,
}

impl FromStr for PosHint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "DET" => Ok(PosHint::Det),
            "PRON" => Ok(PosHint::Pron),
            "NOUN" => Ok(PosHint::Noun),
            "OTHER" => Ok(PosHint::Other),
            other => Err(other.to_string()),
        }
    }
}

impl PosHint {
    pub fn as_str(&self) -> &'static str {
        match self {
            PosHint::Det => "DET",
            PosHint::Pron => "PRON",
            PosHint::Noun => "NOUN",
            PosHint::Other => "OTHER",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub span: Span,
    pub surface: String,
    pub pos: Option<PosHint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub span: Span,
    pub tokens: Vec<Token>,
}

/// Closed inventory of entity labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EntityClass {
    Protein,
    Gene,
    GeneOrGeneProduct,
    Family,
    SimpleChemical,
    CellularComponent,
    Site,
}

impl EntityClass {
    pub const ALL: [EntityClass; 7] = [
        EntityClass::Protein,
        EntityClass::Gene,
        EntityClass::GeneOrGeneProduct,
        EntityClass::Family,
        EntityClass::SimpleChemical,
        EntityClass::CellularComponent,
        EntityClass::Site,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EntityClass::Protein => "Protein",
            EntityClass::Gene => "Gene",
            EntityClass::GeneOrGeneProduct => "GeneOrGeneProduct",
            EntityClass::Family => "Family",
            EntityClass::SimpleChemical => "SimpleChemical",
            EntityClass::CellularComponent => "CellularComponent",
            EntityClass::Site => "Site",
        }
    }

    /// Whether a mention labelled `self` can stand for an anaphor that
    /// demands `target`. Protein anaphors also accept gene products and
    /// families; gene anaphors accept gene products.
    pub fn satisfies(&self, target: EntityClass) -> bool {
        use EntityClass::*;
        match target {
            Protein => matches!(self, Protein | GeneOrGeneProduct | Family),
            Gene => matches!(self, Gene | GeneOrGeneProduct),
            other => *self == other,
        }
    }
}

impl FromStr for EntityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityClass::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

impl fmt::Display for EntityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MutationKind {
    PointSubstitution,
    Deletion,
    Truncation,
    Insertion,
    UnknownMutation,
}

impl MutationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MutationKind::PointSubstitution => "PointSubstitution",
            MutationKind::Deletion => "Deletion",
            MutationKind::Truncation => "Truncation",
            MutationKind::Insertion => "Insertion",
            MutationKind::UnknownMutation => "UnknownMutation",
        }
    }
}

impl FromStr for MutationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PointSubstitution" => Ok(MutationKind::PointSubstitution),
            "Deletion" => Ok(MutationKind::Deletion),
            "Truncation" => Ok(MutationKind::Truncation),
            "Insertion" => Ok(MutationKind::Insertion),
            "UnknownMutation" => Ok(MutationKind::UnknownMutation),
            other => Err(other.to_string()),
        }
    }
}

/// True for point-substitution labels such as `S34A` or `N540K`.
pub fn is_point_substitution(label: &str) -> bool {
    let chars: Vec<char> = label.chars().collect();
    chars.len() >= 3
        && chars[0].is_ascii_uppercase()
        && chars[chars.len() - 1].is_ascii_uppercase()
        && chars[1..chars.len() - 1].iter().all(|c| c.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationRecord {
    pub kind: MutationKind,
    pub label: Option<String>,
}

impl MutationRecord {
    pub fn new(kind: MutationKind, label: Option<String>) -> Result<Self, String> {
        if kind == MutationKind::PointSubstitution {
            match &label {
                Some(l) if is_point_substitution(l) => {}
                Some(l) => return Err(format!("`{l}` is not a point-substitution label")),
                None => return Err("point substitution without a label".into()),
            }
        }
        Ok(MutationRecord { kind, label })
    }

    /// A mutation is specified when its identity is spelled out.
    pub fn specified(&self) -> bool {
        self.label.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityMention {
    pub id: String,
    pub span: Span,
    pub label: EntityClass,
    pub grounding_id: Option<String>,
    pub mutations: Vec<MutationRecord>,
    pub surface: String,
}

impl EntityMention {
    pub fn has_specified_mutation(&self) -> bool {
        self.mutations.iter().any(MutationRecord::specified)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
    #[default]
    Unspecified,
}

impl Polarity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Positive => "Positive",
            Polarity::Negative => "Negative",
            Polarity::Unspecified => "Unspecified",
        }
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Positive" => Ok(Polarity::Positive),
            "Negative" => Ok(Polarity::Negative),
            "Unspecified" => Ok(Polarity::Unspecified),
            other => Err(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Argument {
    pub role: String,
    pub mention_ref: String,
}

impl Argument {
    pub fn new(role: impl Into<String>, mention_ref: impl Into<String>) -> Self {
        Argument {
            role: role.into(),
            mention_ref: mention_ref.into(),
        }
    }

    /// Role with any trailing slot number removed (`theme2` -> `theme`).
    pub fn role_base(&self) -> &str {
        role_base(&self.role)
    }
}

pub fn role_base(role: &str) -> &str {
    role.trim_end_matches(|c: char| c.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventMention {
    pub id: String,
    pub trigger_span: Span,
    pub event_type: String,
    pub arguments: Vec<Argument>,
    pub polarity: Polarity,
    pub trigger_surface: String,
}

/// Position of a mention inside a [`Document`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MentionKey {
    Entity(usize),
    Event(usize),
}

/// A standoff-annotated document. Immutable once constructed.
#[derive(Debug, Clone)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
    pub sentences: Vec<Sentence>,
    pub entities: Vec<EntityMention>,
    pub events: Vec<EventMention>,
    index: HashMap<String, MentionKey>,
    /// Byte offset of every char position, plus one past the end.
    char_bytes: Vec<usize>,
    extents: Vec<Span>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.doc_id == other.doc_id
            && self.text == other.text
            && self.sentences == other.sentences
            && self.entities == other.entities
            && self.events == other.events
    }
}

impl Eq for Document {}

fn char_byte_table(text: &str) -> Vec<usize> {
    let mut table: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
    table.push(text.len());
    table
}

/// Slice `text` by character span using a precomputed byte table.
fn slice_chars<'a>(text: &'a str, table: &[usize], span: Span) -> Option<&'a str> {
    if span.start > span.end || span.end >= table.len() {
        return None;
    }
    Some(&text[table[span.start]..table[span.end]])
}

impl Document {
    /// Builds a document, filling in surfaces from the text and checking
    /// every structural invariant. Surfaces already present on tokens and
    /// mentions are overwritten.
    pub fn new(
        doc_id: impl Into<String>,
        text: impl Into<String>,
        mut sentences: Vec<Sentence>,
        mut entities: Vec<EntityMention>,
        mut events: Vec<EventMention>,
    ) -> Result<Self, CorpusError> {
        let doc_id = doc_id.into();
        let text = text.into();
        let char_bytes = char_byte_table(&text);
        let text_len = char_bytes.len() - 1;
        let in_bounds = |span: Span| span.start < span.end && span.end <= text_len;

        let mut prev_end = 0usize;
        for (ordinal, sentence) in sentences.iter_mut().enumerate() {
            let at = format!("sentence {}", sentence.index);
            if sentence.index != ordinal {
                return Err(CorpusError::violation(at, format!("expected index {ordinal}")));
            }
            if sentence.span.start > sentence.span.end || sentence.span.end > text_len {
                return Err(CorpusError::violation(at, "span outside text bounds"));
            }
            if ordinal > 0 && sentence.span.start < prev_end {
                return Err(CorpusError::violation(
                    format!("offset {}", sentence.span.start),
                    "sentences overlap or are out of order",
                ));
            }
            prev_end = sentence.span.end;
            let mut tok_end = sentence.span.start;
            for token in &mut sentence.tokens {
                if !in_bounds(token.span)
                    || !sentence.span.contains(&token.span)
                    || token.span.start < tok_end
                {
                    return Err(CorpusError::violation(
                        format!("offset {}", token.span.start),
                        format!("token {} overlaps or leaves sentence {}", token.span, sentence.index),
                    ));
                }
                tok_end = token.span.end;
                token.surface = slice_chars(&text, &char_bytes, token.span).unwrap().to_string();
            }
        }

        let mut index = HashMap::new();
        for (i, entity) in entities.iter_mut().enumerate() {
            if !in_bounds(entity.span) {
                return Err(CorpusError::violation(&entity.id, "span outside text bounds"));
            }
            for m in &entity.mutations {
                if m.kind == MutationKind::PointSubstitution
                    && !m.label.as_deref().is_some_and(is_point_substitution)
                {
                    return Err(CorpusError::violation(&entity.id, "malformed point substitution"));
                }
            }
            entity.surface = slice_chars(&text, &char_bytes, entity.span).unwrap().to_string();
            if index.insert(entity.id.clone(), MentionKey::Entity(i)).is_some() {
                return Err(CorpusError::violation(&entity.id, "duplicate mention id"));
            }
        }
        for (i, event) in events.iter_mut().enumerate() {
            if !in_bounds(event.trigger_span) {
                return Err(CorpusError::violation(&event.id, "trigger outside text bounds"));
            }
            event.trigger_surface =
                slice_chars(&text, &char_bytes, event.trigger_span).unwrap().to_string();
            if index.insert(event.id.clone(), MentionKey::Event(i)).is_some() {
                return Err(CorpusError::violation(&event.id, "duplicate mention id"));
            }
        }
        for event in &events {
            for arg in &event.arguments {
                if !index.contains_key(&arg.mention_ref) {
                    return Err(CorpusError::violation(
                        &arg.mention_ref,
                        format!("dangling argument reference from {}", event.id),
                    ));
                }
                if arg.mention_ref == event.id {
                    return Err(CorpusError::violation(&event.id, "event is its own argument"));
                }
            }
        }

        let covered = |span: Span| sentences.iter().any(|s| s.span.contains(&span));
        for entity in &entities {
            if !covered(entity.span) {
                return Err(CorpusError::violation(&entity.id, "mention not inside any sentence"));
            }
        }
        for event in &events {
            if !covered(event.trigger_span) {
                return Err(CorpusError::violation(&event.id, "trigger not inside any sentence"));
            }
        }

        let mut doc = Document {
            doc_id,
            text,
            sentences,
            entities,
            events,
            index,
            char_bytes,
            extents: Vec::new(),
        };
        doc.extents = doc.compute_extents()?;
        Ok(doc)
    }

    pub fn empty(doc_id: impl Into<String>) -> Self {
        Document::new(doc_id, "", vec![], vec![], vec![]).expect("empty document is valid")
    }

    /// Event extents cover the trigger and, recursively, every argument.
    /// Fails if event arguments form a cycle.
    fn compute_extents(&self) -> Result<Vec<Span>, CorpusError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Todo,
            Active,
            Done,
        }
        let mut marks = vec![Mark::Todo; self.events.len()];
        let mut extents = vec![Span::new(0, 0); self.events.len()];

        fn visit(
            doc: &Document,
            i: usize,
            marks: &mut [Mark],
            extents: &mut [Span],
        ) -> Result<Span, CorpusError> {
            match marks[i] {
                Mark::Done => return Ok(extents[i]),
                Mark::Active => {
                    return Err(CorpusError::violation(&doc.events[i].id, "cyclic event arguments"))
                }
                Mark::Todo => {}
            }
            marks[i] = Mark::Active;
            let event = &doc.events[i];
            let mut span = event.trigger_span;
            for arg in &event.arguments {
                let sub = match doc.index[&arg.mention_ref] {
                    MentionKey::Entity(e) => doc.entities[e].span,
                    MentionKey::Event(v) => visit(doc, v, marks, extents)?,
                };
                span = span.cover(&sub);
            }
            marks[i] = Mark::Done;
            extents[i] = span;
            Ok(span)
        }

        for i in 0..self.events.len() {
            visit(self, i, &mut marks, &mut extents)?;
        }
        Ok(extents)
    }

    pub fn slice(&self, span: Span) -> Option<&str> {
        slice_chars(&self.text, &self.char_bytes, span)
    }

    pub fn char_len(&self) -> usize {
        self.char_bytes.len() - 1
    }

    pub fn key(&self, id: &str) -> Option<MentionKey> {
        self.index.get(id).copied()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn entity(&self, id: &str) -> Option<&EntityMention> {
        match self.key(id)? {
            MentionKey::Entity(i) => Some(&self.entities[i]),
            MentionKey::Event(_) => None,
        }
    }

    pub fn event(&self, id: &str) -> Option<&EventMention> {
        match self.key(id)? {
            MentionKey::Event(i) => Some(&self.events[i]),
            MentionKey::Entity(_) => None,
        }
    }

    /// Number of mentions (entities then events); keys map densely onto
    /// `0..mention_count()` via [`Document::ordinal`].
    pub fn mention_count(&self) -> usize {
        self.entities.len() + self.events.len()
    }

    pub fn ordinal(&self, key: MentionKey) -> usize {
        match key {
            MentionKey::Entity(i) => i,
            MentionKey::Event(i) => self.entities.len() + i,
        }
    }

    pub fn key_of_ordinal(&self, ordinal: usize) -> MentionKey {
        if ordinal < self.entities.len() {
            MentionKey::Entity(ordinal)
        } else {
            MentionKey::Event(ordinal - self.entities.len())
        }
    }

    pub fn id_of(&self, key: MentionKey) -> &str {
        match key {
            MentionKey::Entity(i) => &self.entities[i].id,
            MentionKey::Event(i) => &self.events[i].id,
        }
    }

    /// Full textual extent of a mention. For events this covers the
    /// trigger and all arguments.
    pub fn extent(&self, key: MentionKey) -> Span {
        match key {
            MentionKey::Entity(i) => self.entities[i].span,
            MentionKey::Event(i) => self.extents[i],
        }
    }

    /// Earliest character offset of a mention by ID.
    pub fn earliest_offset(&self, id: &str) -> Option<usize> {
        self.key(id).map(|k| self.extent(k).start)
    }

    /// Sentence containing the given character offset.
    pub fn sentence_at(&self, offset: usize) -> Option<usize> {
        self.sentences
            .iter()
            .position(|s| s.span.start <= offset && offset < s.span.end)
    }

    /// Tokens of one sentence overlapping `span`, as an index range.
    pub fn token_range(&self, sentence: usize, span: Span) -> std::ops::Range<usize> {
        let tokens = &self.sentences[sentence].tokens;
        let start = tokens.iter().position(|t| t.span.end > span.start);
        match start {
            None => tokens.len()..tokens.len(),
            Some(start) => {
                let end = tokens[start..]
                    .iter()
                    .position(|t| t.span.start >= span.end)
                    .map_or(tokens.len(), |p| start + p);
                start..end
            }
        }
    }

    /// Events listing `id` as an argument, in document order.
    pub fn events_with_argument<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a EventMention> + 'a {
        self.events
            .iter()
            .filter(move |e| e.arguments.iter().any(|a| a.mention_ref == id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(index: usize, start: usize, end: usize) -> Sentence {
        Sentence {
            index,
            span: Span::new(start, end),
            tokens: vec![],
        }
    }

    fn entity(id: &str, start: usize, end: usize) -> EntityMention {
        EntityMention {
            id: id.into(),
            span: Span::new(start, end),
            label: EntityClass::Protein,
            grounding_id: None,
            mutations: vec![],
            surface: String::new(),
        }
    }

    #[test]
    fn greek_letters_count_as_one_offset() {
        let text = "GSK3β binds GSK3β.";
        let doc = Document::new(
            "d",
            text,
            vec![sentence(0, 0, 18)],
            vec![entity("T1", 0, 5), entity("T2", 12, 17)],
            vec![],
        )
        .unwrap();
        assert_eq!(doc.entities[0].surface, "GSK3β");
        assert_eq!(doc.entities[1].surface, "GSK3β");
        assert_eq!(doc.char_len(), 18);
    }

    #[test]
    fn rejects_overlapping_sentences() {
        let err = Document::new("d", "abc def", vec![sentence(0, 0, 4), sentence(1, 3, 7)], vec![], vec![])
            .unwrap_err();
        assert_eq!(err.location(), Some("offset 3"));
    }

    #[test]
    fn rejects_duplicate_ids_and_out_of_bounds() {
        let err = Document::new(
            "d",
            "abc def",
            vec![sentence(0, 0, 7)],
            vec![entity("T1", 0, 3), entity("T1", 4, 7)],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err.location(), Some("T1"));

        let err = Document::new("d", "abc", vec![sentence(0, 0, 3)], vec![entity("T1", 2, 9)], vec![])
            .unwrap_err();
        assert_eq!(err.location(), Some("T1"));
    }

    #[test]
    fn mention_outside_sentences_is_rejected() {
        let err = Document::new("d", "abc def", vec![sentence(0, 0, 3)], vec![entity("T1", 4, 7)], vec![])
            .unwrap_err();
        assert_eq!(err.location(), Some("T1"));
    }

    #[test]
    fn point_substitution_pattern() {
        assert!(is_point_substitution("S34A"));
        assert!(is_point_substitution("K650E"));
        assert!(!is_point_substitution("1-420"));
        assert!(!is_point_substitution("SA"));
        assert!(!is_point_substitution("s34a"));
        assert!(MutationRecord::new(MutationKind::PointSubstitution, None).is_err());
    }

    #[test]
    fn role_base_strips_slot_number() {
        assert_eq!(role_base("theme2"), "theme");
        assert_eq!(role_base("controller"), "controller");
    }
}
