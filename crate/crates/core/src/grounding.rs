//! Alias to canonical-ID lookup.
//!
//! Matching is exact on the normalized alias: no prefixes, substrings,
//! stemming or fuzzy matching. `glycogen` never grounds through
//! `glycogen synthase kinase 3 beta`.

use std::collections::HashMap;

use unicode_normalization::UnicodeNormalization;

use crate::error::GroundingError;
use crate::model::EntityMention;

/// Namespaces in descending priority, used when one alias maps to
/// several IDs. Unlisted namespaces rank below all of these.
pub const DEFAULT_NAMESPACE_PRIORITY: &[&str] =
    &["uniprot", "hgnc", "pubchem", "chebi", "go", "interpro", "pfam"];

/// NFKC, lowercase, and runs of whitespace or hyphens collapsed to one space.
pub fn normalize(s: &str) -> String {
    let folded: String = s.nfkc().collect::<String>().to_lowercase();
    let mut out = String::with_capacity(folded.len());
    let mut pending_sep = false;
    for c in folded.chars() {
        if c.is_whitespace() || c == '-' {
            pending_sep = true;
        } else {
            if pending_sep && !out.is_empty() {
                out.push(' ');
            }
            pending_sep = false;
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    id: String,
    namespace: String,
}

#[derive(Debug, Clone, Default)]
pub struct GroundingTable {
    entries: HashMap<String, Entry>,
    priority: Vec<String>,
    dropped: usize,
}

impl GroundingTable {
    pub fn empty() -> Self {
        GroundingTable::with_priority(DEFAULT_NAMESPACE_PRIORITY.iter().map(|s| s.to_string()).collect())
    }

    pub fn with_priority(priority: Vec<String>) -> Self {
        GroundingTable {
            entries: HashMap::new(),
            priority,
            dropped: 0,
        }
    }

    /// Parses `alias \t canonical_id [\t namespace]` rows with the default
    /// namespace priority. Blank lines are skipped.
    pub fn load(tsv: &[u8]) -> Result<Self, GroundingError> {
        let mut table = GroundingTable::empty();
        table.ingest(tsv)?;
        Ok(table)
    }

    pub fn ingest(&mut self, tsv: &[u8]) -> Result<(), GroundingError> {
        let text = std::str::from_utf8(tsv).map_err(|_| GroundingError::Encoding)?;
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 2 || cols.len() > 3 {
                return Err(GroundingError::MalformedRow {
                    line: line_no,
                    reason: format!("expected 2 or 3 columns, found {}", cols.len()),
                });
            }
            let alias = cols[0].trim();
            let id = cols[1].trim();
            if alias.is_empty() || id.is_empty() {
                return Err(GroundingError::MalformedRow {
                    line: line_no,
                    reason: "empty alias or canonical id".into(),
                });
            }
            let namespace = match cols.get(2).map(|s| s.trim()) {
                Some(ns) if !ns.is_empty() => ns.to_string(),
                _ => id.split_once(':').map_or("", |(ns, _)| ns).to_string(),
            };
            self.insert(alias, id, &namespace);
        }
        Ok(())
    }

    fn rank(&self, namespace: &str) -> usize {
        self.priority
            .iter()
            .position(|p| p.eq_ignore_ascii_case(namespace))
            .unwrap_or(self.priority.len())
    }

    /// Adds one alias. A duplicate alias replaces the existing entry only
    /// if its namespace has strictly higher priority; otherwise the first
    /// entry wins. Either way one row is counted as dropped.
    pub fn insert(&mut self, alias: &str, id: &str, namespace: &str) {
        let key = normalize(alias);
        let entry = Entry {
            id: id.to_string(),
            namespace: namespace.to_string(),
        };
        match self.entries.get(&key) {
            None => {
                self.entries.insert(key, entry);
            }
            Some(existing) => {
                self.dropped += 1;
                if self.rank(namespace) < self.rank(&existing.namespace) {
                    self.entries.insert(key, entry);
                }
            }
        }
    }

    /// Canonical ID for an alias, or `None`.
    pub fn ground(&self, surface: &str) -> Option<&str> {
        self.entries.get(&normalize(surface)).map(|e| e.id.as_str())
    }

    /// Grounding for a mention; a precomputed ID on the mention wins.
    pub fn ground_mention<'a>(&'a self, mention: &'a EntityMention) -> Option<&'a str> {
        mention.grounding_id.as_deref().or_else(|| self.ground(&mention.surface))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows discarded as duplicate aliases during loading.
    pub fn dropped_duplicates(&self) -> usize {
        self.dropped
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GSK: &str = "GSK-3β\tuniprot:P49841\nglycogen synthase kinase 3 beta\tuniprot:P49841\n";

    #[test]
    fn aliases_share_canonical_id() {
        let table = GroundingTable::load(GSK.as_bytes()).unwrap();
        assert_eq!(table.ground("glycogen synthase kinase 3 beta"), Some("uniprot:P49841"));
        assert_eq!(table.ground("GSK-3β"), Some("uniprot:P49841"));
        assert_eq!(table.len(), 2);
    }

    #[test]
    fn substring_never_grounds() {
        let table = GroundingTable::load(GSK.as_bytes()).unwrap();
        assert_eq!(table.ground("glycogen"), None);
        assert_eq!(table.ground("glycogen synthase"), None);
        assert_eq!(table.ground("GSK"), None);
    }

    #[test]
    fn empty_table_misses() {
        let table = GroundingTable::load(b"").unwrap();
        assert!(table.is_empty());
        assert_eq!(table.ground("GSK-3β"), None);
    }

    #[test]
    fn normalization_folds_case_space_and_hyphens() {
        assert_eq!(normalize("GSK-3β"), "gsk 3β");
        assert_eq!(normalize("  Glycogen   synthase--kinase "), "glycogen synthase kinase");
        // NFKC folds the compatibility ligature.
        assert_eq!(normalize("ﬁbronectin"), "fibronectin");
        let table = GroundingTable::load(GSK.as_bytes()).unwrap();
        assert_eq!(table.ground("gsk 3β"), Some("uniprot:P49841"));
        assert_eq!(table.ground("GSK3β"), None);
    }

    #[test]
    fn namespace_priority_resolves_duplicates() {
        // Manual trace: row 1 inserts hgnc; row 2 (uniprot, rank 0) beats
        // hgnc (rank 1) and replaces it; row 3 (pfam, rank 6) loses.
        let tsv = "AKT1\thgnc:391\thgnc\nAKT1\tuniprot:P31749\tuniprot\nAKT1\tpfam:PF00169\tpfam\n";
        let table = GroundingTable::load(tsv.as_bytes()).unwrap();
        assert_eq!(table.ground("AKT1"), Some("uniprot:P31749"));
        assert_eq!(table.dropped_duplicates(), 2);
    }

    #[test]
    fn first_row_wins_on_equal_priority() {
        let tsv = "X\tfoo:1\nX\tfoo:2\n";
        let table = GroundingTable::load(tsv.as_bytes()).unwrap();
        assert_eq!(table.ground("X"), Some("foo:1"));
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = GroundingTable::load(b"A\tuniprot:1\nonly-one-column\n").unwrap_err();
        assert_eq!(
            err,
            GroundingError::MalformedRow {
                line: 2,
                reason: "expected 2 or 3 columns, found 1".into()
            }
        );
    }

    proptest::proptest! {
        #[test]
        fn normalize_is_idempotent(s in "\\PC{0,24}") {
            let once = normalize(&s);
            proptest::prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn hits_are_exact_keys(alias in "[a-zA-Z0-9 -]{1,12}", probe in "[a-zA-Z0-9 -]{1,12}") {
            let mut table = GroundingTable::empty();
            table.insert(&alias, "uniprot:X", "uniprot");
            let hit = table.ground(&probe).is_some();
            proptest::prop_assert_eq!(hit, normalize(&probe) == normalize(&alias));
        }
    }
}
