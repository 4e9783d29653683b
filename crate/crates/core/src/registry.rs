//! The canonical corpus file and the in-memory registry.
//!
//! A corpus is one UTF-8 JSON document, `{"manifest": {...}, "entries": [...]}`.
//! Each stored entry also carries its computed `aggregate` for readers of the
//! file, but that field is ignored on load: ratings are always recomputed.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entry::{validate_entry, BenchmarkEntry, EntryRecord, Finding, CURRENT_SCHEMA_VERSION};
use crate::rubric::AggregateRating;

/// File extension of corpus files.
pub const CORPUS_EXTENSION: &str = ".ontology.json";

/// The transcribed benchmark collection shipped with the crate.
pub const SEED_CORPUS: &str = include_str!("../data/seed.ontology.json");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported corpus schema_version {found} (newest supported is {supported})")]
    UnsupportedSchema { found: u32, supported: u32 },
    #[error("manifest entry_count {declared} does not match {actual} entries")]
    EntryCountMismatch { declared: usize, actual: usize },
    #[error("duplicate entry id `{0}`")]
    DuplicateId(String),
    #[error("invalid entries: {}", describe_invalid(.0))]
    Validation(Vec<InvalidEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidEntry {
    pub id: String,
    pub findings: Vec<Finding>,
}

fn describe_invalid(items: &[InvalidEntry]) -> String {
    items
        .iter()
        .map(|i| {
            let codes: Vec<&str> = i.findings.iter().map(|f| f.code.as_str()).collect();
            format!("{} [{}]", i.id, codes.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<serde_json::Error> for CorpusError {
    fn from(e: serde_json::Error) -> Self {
        CorpusError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    pub schema_version: u32,
    pub entry_count: usize,
    pub generated_at: DateTime<Utc>,
    pub source: String,
}

impl CorpusManifest {
    pub fn new(source: impl Into<String>, generated_at: DateTime<Utc>) -> Self {
        CorpusManifest { schema_version: CURRENT_SCHEMA_VERSION, entry_count: 0, generated_at, source: source.into() }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    manifest: CorpusManifest,
    entries: Vec<EntryRecord>,
}

#[derive(Serialize)]
struct StoredEntry<'a> {
    #[serde(flatten)]
    record: EntryRecord,
    aggregate: &'a AggregateRating,
}

#[derive(Serialize)]
struct StoredCorpus<'a> {
    manifest: &'a CorpusManifest,
    entries: Vec<StoredEntry<'a>>,
}

/// An immutable, validated collection of entries kept in (descending
/// average, ascending id) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    manifest: CorpusManifest,
    entries: Vec<BenchmarkEntry>,
}

fn canonical_order(a: &BenchmarkEntry, b: &BenchmarkEntry) -> std::cmp::Ordering {
    b.aggregate().average.cmp(&a.aggregate().average).then_with(|| a.id().cmp(b.id()))
}

impl Registry {
    pub fn new(manifest: CorpusManifest, mut entries: Vec<BenchmarkEntry>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::with_capacity(entries.len());
        for e in &entries {
            if !seen.insert(e.id()) {
                return Err(CorpusError::DuplicateId(e.id().to_string()));
            }
        }
        entries.sort_by(canonical_order);
        let manifest = CorpusManifest { entry_count: entries.len(), ..manifest };
        Ok(Registry { manifest, entries })
    }

    pub fn empty(manifest: CorpusManifest) -> Self {
        Registry { manifest: CorpusManifest { entry_count: 0, ..manifest }, entries: Vec::new() }
    }

    pub fn manifest(&self) -> &CorpusManifest {
        &self.manifest
    }

    pub fn entries(&self) -> &[BenchmarkEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&BenchmarkEntry> {
        self.entries.iter().find(|e| e.id() == id)
    }

    pub fn with_generated_at(&self, at: DateTime<Utc>) -> Registry {
        Registry {
            manifest: CorpusManifest { generated_at: at, ..self.manifest.clone() },
            entries: self.entries.clone(),
        }
    }

    /// Returns a new registry that also contains `record`; `self` is unchanged.
    pub fn add_entry(&self, record: EntryRecord) -> Result<Registry, CorpusError> {
        let id = record.id.clone();
        let entry = BenchmarkEntry::try_from(record)
            .map_err(|findings| CorpusError::Validation(vec![InvalidEntry { id, findings }]))?;
        let mut entries = self.entries.clone();
        entries.push(entry);
        Registry::new(self.manifest.clone(), entries)
    }

    /// Canonical serialized form; identical registries give identical bytes.
    pub fn to_json(&self) -> String {
        let stored = StoredCorpus {
            manifest: &self.manifest,
            entries: self
                .entries
                .iter()
                .map(|e| StoredEntry { record: e.to_record(), aggregate: e.aggregate() })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&stored).expect("corpus serializes");
        out.push('\n');
        out
    }
}

/// Parses and validates a corpus document.
pub fn parse_corpus(text: &str) -> Result<Registry, CorpusError> {
    let file: CorpusFile = serde_json::from_str(text)?;
    let mut manifest = file.manifest;
    if manifest.schema_version > CURRENT_SCHEMA_VERSION {
        return Err(CorpusError::UnsupportedSchema {
            found: manifest.schema_version,
            supported: CURRENT_SCHEMA_VERSION,
        });
    }
    if manifest.entry_count != file.entries.len() {
        return Err(CorpusError::EntryCountMismatch { declared: manifest.entry_count, actual: file.entries.len() });
    }
    if manifest.schema_version < CURRENT_SCHEMA_VERSION {
        log::info!("migrating corpus from schema_version {} to {}", manifest.schema_version, CURRENT_SCHEMA_VERSION);
        manifest.source = format!(
            "{} [migrated from schema_version {} to {}]",
            manifest.source, manifest.schema_version, CURRENT_SCHEMA_VERSION
        );
        manifest.schema_version = CURRENT_SCHEMA_VERSION;
    }

    let mut invalid = Vec::new();
    let mut entries = Vec::with_capacity(file.entries.len());
    for record in file.entries {
        let findings = validate_entry(&record);
        if !findings.is_empty() {
            invalid.push(InvalidEntry { id: record.id.clone(), findings });
            continue;
        }
        for w in crate::entry::vocabulary_warnings(&record) {
            log::warn!("{}: {}", record.id, w);
        }
        entries.push(BenchmarkEntry::try_from(record).expect("validated"));
    }
    if !invalid.is_empty() {
        return Err(CorpusError::Validation(invalid));
    }
    Registry::new(manifest, entries)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Registry, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(&text)
}

/// Writes the canonical form through a sibling temporary file and a rename.
pub fn save_corpus(registry: &Registry, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let io_err = |source| CorpusError::Io { path: path.to_path_buf(), source };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, registry.to_json()).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// The shipped seed collection.
pub fn seed_registry() -> Registry {
    parse_corpus(SEED_CORPUS).expect("seed corpus is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rubric::{Provenance, RatingCard, Score};
    use chrono::{NaiveDate, TimeZone};

    fn manifest() -> CorpusManifest {
        CorpusManifest::new("test", Utc.with_ymd_and_hms(2025, 1, 1, 0, 0, 0).unwrap())
    }

    fn record(key: &str, half_points: u8) -> EntryRecord {
        let s = Score::from_half_points(half_points).unwrap();
        EntryRecord::new(
            key,
            "regression",
            key,
            &["Chemistry"],
            "Regression",
            RatingCard::from_scores([s; 6], Provenance::AggregateOnly),
            NaiveDate::from_ymd_opt(2025, 1, 1).unwrap(),
        )
    }

    #[test]
    fn empty_text_is_a_parse_error() {
        assert!(matches!(parse_corpus(""), Err(CorpusError::Parse { line: 1, .. })));
    }

    #[test]
    fn parse_error_carries_position() {
        let err = parse_corpus("{\n  \"manifest\": ,\n}").unwrap_err();
        match err {
            CorpusError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn add_entry_has_value_semantics() {
        let empty = Registry::empty(manifest());
        let one = empty.add_entry(record("a2024", 8)).unwrap();
        assert_eq!(empty.len(), 0);
        assert_eq!(one.len(), 1);
        assert_eq!(one.manifest().entry_count, 1);
        assert!(
            matches!(one.add_entry(record("a2024", 9)), Err(CorpusError::DuplicateId(id)) if id == "a2024:regression")
        );
    }

    #[test]
    fn add_entry_rejects_invalid_records() {
        let mut r = record("a2024", 8);
        r.domains.clear();
        let err = Registry::empty(manifest()).add_entry(r).unwrap_err();
        assert!(matches!(err, CorpusError::Validation(ref v) if v[0].findings[0].code.as_str() == "EMPTY_DOMAINS"));
    }

    #[test]
    fn entries_are_ordered_by_average_then_id() {
        let r = Registry::empty(manifest())
            .add_entry(record("b2024", 6))
            .unwrap()
            .add_entry(record("c2024", 9))
            .unwrap()
            .add_entry(record("a2024", 6))
            .unwrap();
        let ids: Vec<&str> = r.entries().iter().map(|e| e.id()).collect();
        assert_eq!(ids, vec!["c2024:regression", "a2024:regression", "b2024:regression"]);
    }

    #[test]
    fn duplicate_ids_in_file_are_rejected() {
        let r = Registry::empty(manifest()).add_entry(record("a2024", 8)).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let e = doc["entries"][0].clone();
        doc["entries"].as_array_mut().unwrap().push(e);
        doc["manifest"]["entry_count"] = 2.into();
        assert!(matches!(parse_corpus(&doc.to_string()), Err(CorpusError::DuplicateId(_))));
    }

    #[test]
    fn stored_aggregate_is_ignored_on_load() {
        let r = Registry::empty(manifest()).add_entry(record("a2024", 8)).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        doc["entries"][0]["aggregate"]["display"] = "1.00".into();
        doc["entries"][0]["aggregate"]["endorsed"] = true.into();
        let loaded = parse_corpus(&doc.to_string()).unwrap();
        assert_eq!(loaded.entries()[0].aggregate().display, "4.00");
        assert!(!loaded.entries()[0].aggregate().endorsed);
    }

    #[test]
    fn newer_schema_is_rejected() {
        let r = Registry::empty(manifest());
        let text = r.to_json().replace("\"schema_version\": 1", "\"schema_version\": 7");
        assert!(matches!(parse_corpus(&text), Err(CorpusError::UnsupportedSchema { found: 7, .. })));
    }

    #[test]
    fn entry_count_must_match() {
        let text = Registry::empty(manifest()).to_json().replace("\"entry_count\": 0", "\"entry_count\": 3");
        assert!(matches!(parse_corpus(&text), Err(CorpusError::EntryCountMismatch { declared: 3, actual: 0 })));
    }
}
