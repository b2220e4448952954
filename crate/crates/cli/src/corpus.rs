//! Writing and checking the example corpus on disk.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use biocoref_core::fixtures::{corpus, corpus_resolver, Manifest, GROUNDING_TSV};
use biocoref_core::io::{load_document, save_document};

/// Writes every fixture document, `manifest.json` and `grounding.tsv`.
pub fn write_fixtures(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let fixtures = corpus();
    for f in &fixtures {
        fs::write(dir.join(format!("{}.json", f.name)), save_document(&f.doc))?;
    }
    let manifest = Manifest::from_corpus(&fixtures);
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    fs::write(dir.join("grounding.tsv"), GROUNDING_TSV)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: String,
    pub problems: Vec<String>,
}

/// Loads each fixture from `dir`, compares it with the built-in corpus
/// and resolves it against the manifest expectations.
pub fn check_fixtures(dir: &Path) -> Result<Vec<FixtureCheck>> {
    let manifest_bytes = fs::read(dir.join("manifest.json")).context("cannot read manifest.json")?;
    let manifest: Manifest = serde_json::from_slice(&manifest_bytes).context("invalid manifest.json")?;
    let built = corpus();
    let resolver = corpus_resolver();
    let mut out = Vec::new();
    for entry in &manifest.fixtures {
        let mut problems = Vec::new();
        match fs::read(dir.join(&entry.file)).map_err(|e| e.to_string()).and_then(|b| load_document(&b).map_err(|e| e.to_string())) {
            Ok(doc) => {
                match built.iter().find(|f| f.name == entry.doc_id) {
                    Some(f) if f.doc != doc => problems.push("document differs from the built-in fixture".into()),
                    Some(f) if f.expect != entry.expect => problems.push("manifest differs from the built-in expectation".into()),
                    Some(_) => {}
                    None => problems.push("not a built-in fixture".into()),
                }
                match resolver.resolve(&doc) {
                    Ok(res) => problems.extend(entry.expect.verify(&doc, &res)),
                    Err(e) => problems.push(e.to_string()),
                }
            }
            Err(e) => problems.push(e),
        }
        out.push(FixtureCheck {
            name: entry.doc_id.clone(),
            problems,
        });
    }
    Ok(out)
}
