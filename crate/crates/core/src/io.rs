//! Standoff JSON reading and writing.
//!
//! A document file holds one JSON document, or several as a
//! newline-delimited stream. Result files carry the document plus
//! `links`, `chains`, `completed_events` and `dropped`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::completion::{CompletedEvent, DroppedEvent};
use crate::error::CorpusError;
use crate::model::{
    Argument, Document, EntityClass, EntityMention, EventMention, MutationKind, MutationRecord, Polarity, PosHint,
    Sentence, Span, Token,
};
use crate::pipeline::Resolution;
use crate::state::{CorefLink, SieveName};
use crate::trace::AnaphorTrace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenWire {
    pub start: usize,
    pub end: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceWire {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    #[serde(default)]
    pub tokens: Vec<TokenWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationWire {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityWire {
    pub id: String,
    pub start: usize,
    pub end: usize,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grounding: Option<String>,
    #[serde(default)]
    pub mutations: Vec<MutationWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgWire {
    pub role: String,
    #[serde(rename = "ref")]
    pub mention_ref: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventWire {
    pub id: String,
    pub trigger_start: usize,
    pub trigger_end: usize,
    #[serde(rename = "type")]
    pub event_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<String>,
    pub args: Vec<ArgWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentWire {
    pub doc_id: String,
    pub text: String,
    pub sentences: Vec<SentenceWire>,
    pub entities: Vec<EntityWire>,
    pub events: Vec<EventWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWire {
    pub anaphor: String,
    pub antecedents: Vec<String>,
    pub sieve: SieveName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedWire {
    #[serde(flatten)]
    pub event: EventWire,
    pub derived_from: String,
    #[serde(default)]
    pub provenance: Vec<String>,
    /// Sieves behind the provenance links; written with provenance output.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sieves: Vec<SieveName>,
}

/// A resolved document as written to disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionOutput {
    #[serde(flatten)]
    pub document: DocumentWire,
    pub links: Vec<LinkWire>,
    #[serde(default)]
    pub chains: Vec<Vec<String>>,
    pub completed_events: Vec<CompletedWire>,
    #[serde(default)]
    pub dropped: Vec<DroppedEvent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<AnaphorTrace>>,
}

fn polarity_wire(p: Polarity) -> Option<String> {
    (p != Polarity::Unspecified).then(|| p.as_str().to_string())
}

fn event_wire(id: &str, trigger: Span, event_type: &str, polarity: Polarity, args: &[Argument]) -> EventWire {
    EventWire {
        id: id.to_string(),
        trigger_start: trigger.start,
        trigger_end: trigger.end,
        event_type: event_type.to_string(),
        polarity: polarity_wire(polarity),
        args: args
            .iter()
            .map(|a| ArgWire {
                role: a.role.clone(),
                mention_ref: a.mention_ref.clone(),
            })
            .collect(),
    }
}

fn parse_polarity(id: &str, p: &Option<String>) -> Result<Polarity, CorpusError> {
    match p {
        None => Ok(Polarity::Unspecified),
        Some(s) => s
            .parse()
            .map_err(|_| CorpusError::violation(id, format!("unknown polarity `{s}`"))),
    }
}

fn event_from_wire(w: &EventWire) -> Result<EventMention, CorpusError> {
    Ok(EventMention {
        id: w.id.clone(),
        trigger_span: Span::new(w.trigger_start, w.trigger_end),
        event_type: w.event_type.clone(),
        arguments: w.args.iter().map(|a| Argument::new(&a.role, &a.mention_ref)).collect(),
        polarity: parse_polarity(&w.id, &w.polarity)?,
        trigger_surface: String::new(),
    })
}

impl DocumentWire {
    pub fn from_document(doc: &Document) -> Self {
        DocumentWire {
            doc_id: doc.doc_id.clone(),
            text: doc.text.clone(),
            sentences: doc
                .sentences
                .iter()
                .map(|s| SentenceWire {
                    index: s.index,
                    start: s.span.start,
                    end: s.span.end,
                    tokens: s
                        .tokens
                        .iter()
                        .map(|t| TokenWire {
                            start: t.span.start,
                            end: t.span.end,
                            pos: t.pos.map(|p| p.as_str().to_string()),
                        })
                        .collect(),
                })
                .collect(),
            entities: doc
                .entities
                .iter()
                .map(|e| EntityWire {
                    id: e.id.clone(),
                    start: e.span.start,
                    end: e.span.end,
                    label: e.label.as_str().to_string(),
                    grounding: e.grounding_id.clone(),
                    mutations: e
                        .mutations
                        .iter()
                        .map(|m| MutationWire {
                            kind: m.kind.as_str().to_string(),
                            label: m.label.clone(),
                        })
                        .collect(),
                })
                .collect(),
            events: doc
                .events
                .iter()
                .map(|e| event_wire(&e.id, e.trigger_span, &e.event_type, e.polarity, &e.arguments))
                .collect(),
        }
    }

    pub fn into_document(self) -> Result<Document, CorpusError> {
        let mut sentences = Vec::with_capacity(self.sentences.len());
        for s in self.sentences {
            let mut tokens = Vec::with_capacity(s.tokens.len());
            for t in s.tokens {
                let pos = match t.pos {
                    None => None,
                    Some(p) => Some(p.parse::<PosHint>().map_err(|_| {
                        CorpusError::violation(format!("offset {}", t.start), format!("unknown pos hint `{p}`"))
                    })?),
                };
                tokens.push(Token {
                    span: Span::new(t.start, t.end),
                    surface: String::new(),
                    pos,
                });
            }
            sentences.push(Sentence {
                index: s.index,
                span: Span::new(s.start, s.end),
                tokens,
            });
        }
        let mut entities = Vec::with_capacity(self.entities.len());
        for e in self.entities {
            let label: EntityClass = e
                .label
                .parse()
                .map_err(|_| CorpusError::violation(&e.id, format!("unknown entity class `{}`", e.label)))?;
            let mut mutations = Vec::with_capacity(e.mutations.len());
            for m in e.mutations {
                let kind: MutationKind = m
                    .kind
                    .parse()
                    .map_err(|_| CorpusError::violation(&e.id, format!("unknown mutation kind `{}`", m.kind)))?;
                mutations.push(MutationRecord::new(kind, m.label).map_err(|r| CorpusError::violation(&e.id, r))?);
            }
            entities.push(EntityMention {
                id: e.id,
                span: Span::new(e.start, e.end),
                label,
                grounding_id: e.grounding,
                mutations,
                surface: String::new(),
            });
        }
        let events = self.events.iter().map(event_from_wire).collect::<Result<Vec<_>, _>>()?;
        Document::new(self.doc_id, self.text, sentences, entities, events)
    }
}

fn parse_value(bytes: &[u8]) -> Result<Value, CorpusError> {
    serde_json::from_slice(bytes).map_err(|e| CorpusError::MalformedInput(e.to_string()))
}

fn value_to<T: serde::de::DeserializeOwned>(value: Value) -> Result<T, CorpusError> {
    let at = value
        .get("doc_id")
        .and_then(Value::as_str)
        .unwrap_or("document")
        .to_string();
    serde_json::from_value(value).map_err(|e| CorpusError::violation(at, e.to_string()))
}

/// Parses one standoff JSON document.
pub fn load_document(bytes: &[u8]) -> Result<Document, CorpusError> {
    value_to::<DocumentWire>(parse_value(bytes)?)?.into_document()
}

/// Parses a file holding one document or a newline-delimited stream.
/// Each entry is loaded independently.
pub fn load_documents(bytes: &[u8]) -> Result<Vec<Result<Document, CorpusError>>, CorpusError> {
    let mut out = Vec::new();
    for value in serde_json::Deserializer::from_slice(bytes).into_iter::<Value>() {
        let value = value.map_err(|e| CorpusError::MalformedInput(e.to_string()))?;
        out.push(value_to::<DocumentWire>(value).and_then(DocumentWire::into_document));
    }
    Ok(out)
}

pub fn save_document(doc: &Document) -> String {
    serde_json::to_string_pretty(&DocumentWire::from_document(doc)).expect("document serializes")
}

fn completed_wire(e: &CompletedEvent) -> CompletedWire {
    CompletedWire {
        event: event_wire(&e.id, e.trigger_span, &e.event_type, e.polarity, &e.arguments),
        derived_from: e.derived_from.clone(),
        provenance: e.provenance.clone(),
        sieves: Vec::new(),
    }
}

impl ResolutionOutput {
    /// Output for a resolved document. With `provenance` set, traces and
    /// per-event sieve lists are included.
    pub fn build(doc: &Document, resolution: &Resolution, provenance: bool) -> Self {
        let links = resolution.links();
        let completed_events = resolution
            .completion
            .events
            .iter()
            .map(|e| {
                let mut w = completed_wire(e);
                if provenance {
                    let sieves: BTreeSet<SieveName> = e
                        .provenance
                        .iter()
                        .filter_map(|p| links.iter().find(|l| l.anaphor_id == *p).map(|l| l.sieve))
                        .collect();
                    w.sieves = sieves.into_iter().collect();
                }
                w
            })
            .collect();
        ResolutionOutput {
            document: DocumentWire::from_document(doc),
            links: links.iter().map(link_wire).collect(),
            chains: resolution.chains.clone(),
            completed_events,
            dropped: resolution.dropped_events(doc),
            traces: provenance.then(|| resolution.traces.entries.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, CorpusError> {
        value_to(parse_value(bytes)?)
    }

    /// Every output in a file holding one result or a stream of them.
    pub fn from_json_stream(bytes: &[u8]) -> Result<Vec<Self>, CorpusError> {
        serde_json::Deserializer::from_slice(bytes)
            .into_iter::<Value>()
            .map(|v| value_to(v.map_err(|e| CorpusError::MalformedInput(e.to_string()))?))
            .collect()
    }

    pub fn doc_id(&self) -> &str {
        &self.document.doc_id
    }

    /// The document, links and completed events, with every link checked
    /// against the document.
    pub fn decode(&self) -> Result<(Document, Vec<CorefLink>, Vec<CompletedEvent>), CorpusError> {
        let doc = self.document.clone().into_document()?;
        let links: Vec<CorefLink> = self
            .links
            .iter()
            .map(|l| CorefLink::new(&l.anaphor, l.antecedents.clone(), l.sieve))
            .collect();
        for link in &links {
            link.validate(&doc).map_err(|r| CorpusError::violation(&link.anaphor_id, r))?;
        }
        let mut events = Vec::with_capacity(self.completed_events.len());
        for c in &self.completed_events {
            let e = event_from_wire(&c.event)?;
            events.push(CompletedEvent {
                id: e.id,
                trigger_span: e.trigger_span,
                event_type: e.event_type,
                arguments: e.arguments,
                polarity: e.polarity,
                trigger_surface: doc.slice(e.trigger_span).unwrap_or("").to_string(),
                derived_from: c.derived_from.clone(),
                provenance: c.provenance.clone(),
            });
        }
        Ok((doc, links, events))
    }
}

fn link_wire(l: &CorefLink) -> LinkWire {
    LinkWire {
        anaphor: l.anaphor_id.clone(),
        antecedents: l.antecedent_ids.clone(),
        sieve: l.sieve,
    }
}

/// Serializes a document with its links and completed events. Links are
/// checked against the document first.
pub fn save_result(doc: &Document, links: &[CorefLink], completed: &[CompletedEvent]) -> Result<String, CorpusError> {
    for link in links {
        link.validate(doc).map_err(|r| CorpusError::violation(&link.anaphor_id, r))?;
    }
    let out = ResolutionOutput {
        document: DocumentWire::from_document(doc),
        links: links.iter().map(link_wire).collect(),
        chains: Vec::new(),
        completed_events: completed.iter().map(completed_wire).collect(),
        dropped: Vec::new(),
        traces: None,
    };
    Ok(out.to_json())
}

/// Inverse of [`save_result`].
pub fn load_result(bytes: &[u8]) -> Result<(Document, Vec<CorefLink>, Vec<CompletedEvent>), CorpusError> {
    ResolutionOutput::from_json(bytes)?.decode()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_loads() {
        let doc = load_document(br#"{"doc_id":"d0","text":"","sentences":[],"entities":[],"events":[]}"#).unwrap();
        assert_eq!(doc.doc_id, "d0");
        assert!(doc.entities.is_empty() && doc.events.is_empty());
    }

    #[test]
    fn bad_json_is_malformed_input() {
        assert!(matches!(load_document(b"{not json"), Err(CorpusError::MalformedInput(_))));
    }

    #[test]
    fn missing_field_is_schema_violation() {
        let err = load_document(br#"{"doc_id":"d1","text":"","sentences":[],"entities":[]}"#).unwrap_err();
        assert_eq!(err.location(), Some("d1"));
    }

    #[test]
    fn dangling_reference_names_the_id() {
        let json = br#"{"doc_id":"d2","text":"A binds B.","sentences":[{"index":0,"start":0,"end":10}],
            "entities":[{"id":"T1","start":0,"end":1,"label":"Protein"}],
            "events":[{"id":"E1","trigger_start":2,"trigger_end":7,"type":"Binding",
                       "args":[{"role":"theme1","ref":"T1"},{"role":"theme2","ref":"T99"}]}]}"#;
        let err = load_document(json).unwrap_err();
        assert_eq!(err.location(), Some("T99"));
    }

    #[test]
    fn empty_result_has_empty_arrays() {
        let doc = Document::empty("d0");
        let json = save_result(&doc, &[], &[]).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["links"], serde_json::json!([]));
        assert_eq!(v["completed_events"], serde_json::json!([]));
    }

    #[test]
    fn stream_of_documents() {
        let a = r#"{"doc_id":"a","text":"","sentences":[],"entities":[],"events":[]}"#;
        let b = r#"{"doc_id":"b","text":"","sentences":[],"entities":[],"events":[]}"#;
        let docs = load_documents(format!("{a}\n{b}\n").as_bytes()).unwrap();
        let ids: Vec<String> = docs.into_iter().map(|d| d.unwrap().doc_id).collect();
        assert_eq!(ids, vec!["a", "b"]);
    }
}
