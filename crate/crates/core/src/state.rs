//! Shared coreference state threaded through the sieves.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{Document, MentionKey};

/// Stable sieve names, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SieveName {
    ExactString,
    SharedGrounding,
    MutantMatch,
    StrictHeadMatch,
    Pronominal,
    ClassNp,
    EventCoref,
    Cleanup,
}

impl SieveName {
    pub const PIPELINE: [SieveName; 8] = [
        SieveName::ExactString,
        SieveName::SharedGrounding,
        SieveName::MutantMatch,
        SieveName::StrictHeadMatch,
        SieveName::Pronominal,
        SieveName::ClassNp,
        SieveName::EventCoref,
        SieveName::Cleanup,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SieveName::ExactString => "exact_string",
            SieveName::SharedGrounding => "shared_grounding",
            SieveName::MutantMatch => "mutant_match",
            SieveName::StrictHeadMatch => "strict_head_match",
            SieveName::Pronominal => "pronominal",
            SieveName::ClassNp => "class_np",
            SieveName::EventCoref => "event_coref",
            SieveName::Cleanup => "cleanup",
        }
    }

    /// 1-based position in the pipeline.
    pub fn rank(&self) -> u8 {
        SieveName::PIPELINE.iter().position(|s| s == self).unwrap() as u8 + 1
    }

    /// Sieves that may be switched off for ablation. Cleanup always runs.
    pub fn is_optional(&self) -> bool {
        *self != SieveName::Cleanup
    }
}

impl FromStr for SieveName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SieveName::PIPELINE
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownSieve(s.to_string()))
    }
}

impl fmt::Display for SieveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anaphor resolution produced by one sieve. The anaphor ID doubles as
/// the link's identifier: every anaphor is linked at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorefLink {
    pub anaphor_id: String,
    pub antecedent_ids: Vec<String>,
    pub sieve: SieveName,
    pub confidence_rank: u8,
}

impl CorefLink {
    pub fn new(anaphor_id: impl Into<String>, antecedent_ids: Vec<String>, sieve: SieveName) -> Self {
        CorefLink {
            anaphor_id: anaphor_id.into(),
            antecedent_ids,
            sieve,
            confidence_rank: sieve.rank(),
        }
    }

    /// Checks the link against its document: non-empty, no self-reference,
    /// every antecedent strictly earlier than the anaphor.
    pub fn validate(&self, doc: &Document) -> Result<(), String> {
        let anaphor_at = doc
            .earliest_offset(&self.anaphor_id)
            .ok_or_else(|| format!("unknown anaphor {}", self.anaphor_id))?;
        if self.antecedent_ids.is_empty() {
            return Err(format!("link for {} has no antecedents", self.anaphor_id));
        }
        for a in &self.antecedent_ids {
            if *a == self.anaphor_id {
                return Err(format!("{} is its own antecedent", a));
            }
            let at = doc
                .earliest_offset(a)
                .ok_or_else(|| format!("unknown antecedent {a}"))?;
            if at >= anaphor_at {
                return Err(format!("antecedent {a} does not precede anaphor {}", self.anaphor_id));
            }
        }
        Ok(())
    }
}

/// Chains (union-find over mention ordinals), links and resolved anaphors.
#[derive(Debug, Clone)]
pub struct CorefState {
    chains: UnionFind<usize>,
    size: usize,
    pub links: Vec<CorefLink>,
    pub resolved: BTreeSet<String>,
    pub sieve_cursor: usize,
}

impl CorefState {
    pub fn new(doc: &Document) -> Self {
        let size = doc.mention_count();
        CorefState {
            chains: UnionFind::new(size),
            size,
            links: Vec::new(),
            resolved: BTreeSet::new(),
            sieve_cursor: 0,
        }
    }

    pub fn merge(&mut self, doc: &Document, a: MentionKey, b: MentionKey) {
        self.chains.union(doc.ordinal(a), doc.ordinal(b));
    }

    /// Chain identifier of a mention; stable for the current state only.
    pub fn chain_of(&self, doc: &Document, key: MentionKey) -> usize {
        self.chains.find(doc.ordinal(key))
    }

    pub fn same_chain(&self, doc: &Document, a: MentionKey, b: MentionKey) -> bool {
        self.chain_of(doc, a) == self.chain_of(doc, b)
    }

    pub fn is_resolved(&self, id: &str) -> bool {
        self.resolved.contains(id)
    }

    pub fn link_for(&self, id: &str) -> Option<&CorefLink> {
        self.links.iter().find(|l| l.anaphor_id == id)
    }

    /// Records a link and merges anaphor and antecedents into one chain.
    /// Returns false (and does nothing) if the anaphor is already resolved.
    pub fn apply_link(&mut self, doc: &Document, link: CorefLink) -> bool {
        if self.resolved.contains(&link.anaphor_id) || link.antecedent_ids.is_empty() {
            return false;
        }
        let anaphor = doc.key(&link.anaphor_id).expect("anaphor belongs to document");
        for a in &link.antecedent_ids {
            let key = doc.key(a).expect("antecedent belongs to document");
            self.merge(doc, anaphor, key);
        }
        self.resolved.insert(link.anaphor_id.clone());
        self.links.push(link);
        true
    }

    /// Multi-member chains as mention IDs, members in document order,
    /// chains ordered by their first member.
    pub fn chains(&self, doc: &Document) -> Vec<Vec<String>> {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); self.size];
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&o| (doc.extent(doc.key_of_ordinal(o)).start, o));
        for o in order {
            groups[self.chains.find(o)].push(o);
        }
        let mut chains: Vec<Vec<usize>> = groups.into_iter().filter(|g| g.len() > 1).collect();
        chains.sort_by_key(|g| {
            let first = g[0];
            (doc.extent(doc.key_of_ordinal(first)).start, first)
        });
        chains
            .into_iter()
            .map(|g| g.into_iter().map(|o| doc.id_of(doc.key_of_ordinal(o)).to_string()).collect())
            .collect()
    }

    /// Partition check: every mention in exactly one chain and every
    /// link's members sharing a chain.
    pub fn check_partition(&self, doc: &Document) -> Result<(), String> {
        let chains = self.chains(doc);
        let mut seen = BTreeSet::new();
        for chain in &chains {
            for id in chain {
                if !seen.insert(id.clone()) {
                    return Err(format!("{id} appears in two chains"));
                }
            }
        }
        for link in &self.links {
            let anaphor = doc.key(&link.anaphor_id).ok_or("unknown anaphor")?;
            for a in &link.antecedent_ids {
                let key = doc.key(a).ok_or("unknown antecedent")?;
                if !self.same_chain(doc, anaphor, key) {
                    return Err(format!("link {} -> {a} crosses chains", link.anaphor_id));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_names_round_trip_and_rank() {
        for (i, s) in SieveName::PIPELINE.iter().enumerate() {
            assert_eq!(s.as_str().parse::<SieveName>().unwrap(), *s);
            assert_eq!(s.rank() as usize, i + 1);
        }
        assert!("relaxed_head_match".parse::<SieveName>().is_err());
    }
}
