//! Trigger dictionary and argument schema, loaded from JSON config.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ResolveError};
use crate::model::{role_base, EntityClass, EventMention, MutationKind};

pub const DEFAULT_LEXICON_JSON: &str = include_str!("../config/lexicon.json");
pub const DEFAULT_SCHEMA_JSON: &str = include_str!("../config/schema.json");

/// How many antecedents an anaphor asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cardinality {
    One,
    Exactly(usize),
    AtLeastTwo,
}

impl Cardinality {
    /// Minimum number of antecedents that satisfies the anaphor.
    pub fn minimum(&self) -> usize {
        match self {
            Cardinality::One => 1,
            Cardinality::Exactly(n) => *n,
            Cardinality::AtLeastTwo => 2,
        }
    }

    pub fn is_plural(&self) -> bool {
        !matches!(self, Cardinality::One | Cardinality::Exactly(1))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::One => f.write_str("One"),
            Cardinality::Exactly(n) => write!(f, "Exactly({n})"),
            Cardinality::AtLeastTwo => f.write_str("AtLeastTwo"),
        }
    }
}

#[derive(Debug, Deserialize)]
struct LexiconFile {
    event_triggers: BTreeMap<String, String>,
    class_lexicon: BTreeMap<String, String>,
    pronouns: BTreeMap<String, String>,
    #[serde(default)]
    mutant_nouns: Vec<String>,
    #[serde(default)]
    mutation_kinds: BTreeMap<String, String>,
    #[serde(default)]
    stopwords: Vec<String>,
}

/// Closed-class word lists driving anaphor detection. All keys are
/// lowercase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerDictionary {
    pub event_triggers: BTreeMap<String, String>,
    pub class_lexicon: BTreeMap<String, EntityClass>,
    pub pronouns: BTreeMap<String, Cardinality>,
    pub mutant_nouns: BTreeSet<String>,
    pub mutation_kinds: BTreeMap<String, MutationKind>,
    pub stopwords: BTreeSet<String>,
}

impl TriggerDictionary {
    pub fn from_json(json: &str) -> Result<Self, ConfigError> {
        let file: LexiconFile =
            serde_json::from_str(json).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        let lower = |s: &String| s.to_lowercase();

        let class_lexicon = file
            .class_lexicon
            .iter()
            .map(|(k, v)| {
                v.parse::<EntityClass>()
                    .map(|c| (lower(k), c))
                    .map_err(ConfigError::UnknownClass)
            })
            .collect::<Result<_, _>>()?;
        let pronouns = file
            .pronouns
            .iter()
            .map(|(k, v)| {
                let card = match v.as_str() {
                    "One" => Cardinality::One,
                    "AtLeastTwo" => Cardinality::AtLeastTwo,
                    other => return Err(ConfigError::UnknownCardinality(other.to_string())),
                };
                Ok((lower(k), card))
            })
            .collect::<Result<_, _>>()?;
        let mutation_kinds = file
            .mutation_kinds
            .iter()
            .map(|(k, v)| {
                v.parse::<MutationKind>()
                    .map(|m| (lower(k), m))
                    .map_err(ConfigError::UnknownClass)
            })
            .collect::<Result<_, _>>()?;

        let dict = TriggerDictionary {
            event_triggers: file.event_triggers.iter().map(|(k, v)| (lower(k), v.clone())).collect(),
            class_lexicon,
            pronouns,
            mutant_nouns: file.mutant_nouns.iter().map(lower).collect(),
            mutation_kinds,
            stopwords: file.stopwords.iter().map(lower).collect(),
        };
        dict.check_disjoint()?;
        Ok(dict)
    }

    pub fn default_dictionary() -> Self {
        TriggerDictionary::from_json(DEFAULT_LEXICON_JSON).expect("shipped lexicon is valid")
    }

    fn check_disjoint(&self) -> Result<(), ConfigError> {
        let lexicon_words = self
            .event_triggers
            .keys()
            .chain(self.class_lexicon.keys())
            .chain(self.pronouns.keys())
            .chain(self.mutant_nouns.iter())
            .chain(self.mutation_kinds.keys());
        for word in lexicon_words {
            if self.stopwords.contains(word) {
                return Err(ConfigError::LexiconOverlap(word.clone()));
            }
        }
        Ok(())
    }

    /// Every trigger must name an event type the schema knows.
    pub fn check_against(&self, schema: &ArgSchema) -> Result<(), ConfigError> {
        for event_type in self.event_triggers.values() {
            if schema.row(event_type).is_none() {
                return Err(ConfigError::UnknownEventType(event_type.clone()));
            }
        }
        Ok(())
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(&word.to_lowercase())
    }
}

impl Default for TriggerDictionary {
    fn default() -> Self {
        TriggerDictionary::default_dictionary()
    }
}

/// What an argument slot may be filled with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArgKind {
    Entity(EntityClass),
    Event,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleSpec {
    pub classes: BTreeSet<ArgKind>,
    /// Number of distinct slots required; 0 marks an optional role.
    pub count: usize,
}

impl RoleSpec {
    pub fn admits_entity(&self, class: EntityClass) -> bool {
        self.classes.contains(&ArgKind::Entity(class))
    }

    pub fn admits_events(&self) -> bool {
        self.classes.contains(&ArgKind::Event)
    }
}

#[derive(Debug, Deserialize)]
struct RoleFile {
    classes: Vec<String>,
    count: usize,
}

/// Per event type and role: admissible argument kinds and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgSchema {
    rows: BTreeMap<String, BTreeMap<String, RoleSpec>>,
}

impl ArgSchema {
    pub fn from_json(json: &str) -> Result<Self, ConfigError> {
        let file: BTreeMap<String, BTreeMap<String, RoleFile>> =
            serde_json::from_str(json).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        let mut rows = BTreeMap::new();
        for (event_type, roles) in file {
            let mut parsed = BTreeMap::new();
            for (role, spec) in roles {
                let classes = spec
                    .classes
                    .iter()
                    .map(|c| {
                        if c == "Event" {
                            Ok(ArgKind::Event)
                        } else {
                            c.parse::<EntityClass>()
                                .map(ArgKind::Entity)
                                .map_err(ConfigError::UnknownClass)
                        }
                    })
                    .collect::<Result<_, _>>()?;
                parsed.insert(
                    role,
                    RoleSpec {
                        classes,
                        count: spec.count,
                    },
                );
            }
            rows.insert(event_type, parsed);
        }
        Ok(ArgSchema { rows })
    }

    pub fn default_schema() -> Self {
        ArgSchema::from_json(DEFAULT_SCHEMA_JSON).expect("shipped schema is valid")
    }

    pub fn row(&self, event_type: &str) -> Option<&BTreeMap<String, RoleSpec>> {
        self.rows.get(event_type)
    }

    pub fn event_types(&self) -> impl Iterator<Item = &str> {
        self.rows.keys().map(String::as_str)
    }

    /// Spec for a role label; slot numbers are ignored (`theme2` → `theme`).
    pub fn role(&self, event_type: &str, role: &str) -> Result<&RoleSpec, ResolveError> {
        let row = self
            .row(event_type)
            .ok_or_else(|| ResolveError::SchemaMissing(event_type.to_string()))?;
        row.get(role_base(role)).ok_or_else(|| ResolveError::UnknownRole {
            event_type: event_type.to_string(),
            role: role.to_string(),
        })
    }

    /// Regulation-family types take events as arguments.
    pub fn is_regulation(&self, event_type: &str) -> bool {
        self.row(event_type)
            .is_some_and(|row| row.values().any(RoleSpec::admits_events))
    }

    /// Arity check over filled slots, given as `(role label, filler count)`.
    /// A role needing `c` slots is met by `c` distinct labels sharing its
    /// base, or by a single label holding at least `c` fillers.
    pub fn is_complete_slots<'a>(
        &self,
        event_type: &str,
        slots: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> bool {
        let Some(row) = self.row(event_type) else {
            return false;
        };
        let mut by_base: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (label, fillers) in slots {
            if fillers > 0 {
                by_base.entry(role_base(label)).or_default().push(fillers);
            }
        }
        row.iter().all(|(role, spec)| {
            if spec.count == 0 {
                return true;
            }
            match by_base.get(role.as_str()) {
                None => false,
                Some(slots) => slots.len() >= spec.count || (slots.len() == 1 && slots[0] >= spec.count),
            }
        })
    }

    /// Arity check over an event's arguments as written, optionally
    /// ignoring some of them.
    pub fn is_complete_without(&self, event: &EventMention, removed: impl Fn(&str) -> bool) -> bool {
        let mut slots: BTreeMap<&str, usize> = BTreeMap::new();
        for arg in &event.arguments {
            if !removed(&arg.mention_ref) {
                *slots.entry(arg.role.as_str()).or_default() += 1;
            }
        }
        self.is_complete_slots(&event.event_type, slots)
    }

    pub fn is_complete(&self, event: &EventMention) -> bool {
        self.is_complete_without(event, |_| false)
    }
}

impl Default for ArgSchema {
    fn default() -> Self {
        ArgSchema::default_schema()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Argument, Polarity, Span};

    fn event(event_type: &str, args: &[(&str, &str)]) -> EventMention {
        EventMention {
            id: "E1".into(),
            trigger_span: Span::new(0, 1),
            event_type: event_type.into(),
            arguments: args.iter().map(|(r, m)| Argument::new(*r, *m)).collect(),
            polarity: Polarity::Unspecified,
            trigger_surface: String::new(),
        }
    }

    #[test]
    fn shipped_configs_load_and_agree() {
        let dict = TriggerDictionary::default_dictionary();
        let schema = ArgSchema::default_schema();
        dict.check_against(&schema).unwrap();
        assert_eq!(dict.pronouns["its"], Cardinality::One);
        assert_eq!(dict.pronouns["their"], Cardinality::AtLeastTwo);
        assert!(!dict.pronouns.contains_key("which"));
        assert!(!dict.is_stopword("protein"));
    }

    #[test]
    fn lexicon_overlapping_stopwords_is_rejected() {
        let json = r#"{"event_triggers":{},"class_lexicon":{"protein":"Protein"},
            "pronouns":{},"stopwords":["protein"]}"#;
        assert_eq!(
            TriggerDictionary::from_json(json).unwrap_err(),
            ConfigError::LexiconOverlap("protein".into())
        );
    }

    #[test]
    fn binding_arity() {
        let schema = ArgSchema::default_schema();
        assert!(schema.is_complete(&event("Binding", &[("theme1", "A"), ("theme2", "B")])));
        assert!(schema.is_complete(&event("Binding", &[("theme", "A"), ("theme", "B")])));
        assert!(!schema.is_complete(&event("Binding", &[("theme1", "A")])));
        assert!(!schema.is_complete(&event("Binding", &[])));
        let e = event("Binding", &[("theme1", "A"), ("theme2", "B")]);
        assert!(!schema.is_complete_without(&e, |id| id == "A"));
    }

    #[test]
    fn optional_roles_and_regulation_family() {
        let schema = ArgSchema::default_schema();
        assert!(schema.is_complete(&event("Phosphorylation", &[("theme", "A")])));
        assert!(!schema.is_complete(&event("Phosphorylation", &[("cause", "A")])));
        assert!(schema.is_regulation("Regulation"));
        assert!(schema.is_regulation("Activation"));
        assert!(!schema.is_regulation("Binding"));
        assert!(!schema.is_complete(&event("Unknown", &[])));
    }

    #[test]
    fn phosphorylation_theme_excludes_locations() {
        let schema = ArgSchema::default_schema();
        let theme = schema.role("Phosphorylation", "theme").unwrap();
        assert!(theme.admits_entity(EntityClass::Protein));
        assert!(theme.admits_entity(EntityClass::SimpleChemical));
        assert!(!theme.admits_entity(EntityClass::CellularComponent));
        assert!(matches!(
            schema.role("Teleportation", "theme"),
            Err(ResolveError::SchemaMissing(_))
        ));
    }
}
