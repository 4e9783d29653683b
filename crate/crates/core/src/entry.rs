//! Benchmark entries and their validation.
//!
//! [`EntryRecord`] is the serialized shape, which may violate invariants (for
//! example a record listing two motifs). [`validate_entry`] reports every
//! violation; [`BenchmarkEntry`] can only be built from a record with none.

use std::collections::BTreeSet;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::rubric::{AggregateRating, Category, CategoryScores, RatingCard, RubricError};
use crate::taxonomy::{display_order, ComputeBoundTag, Domain, Motif};

/// Schema version written by this crate.
pub const CURRENT_SCHEMA_VERSION: u32 = 1;

/// Lowercase ASCII slug: alphanumerics kept, every other run becomes one `-`.
pub fn slugify(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for ch in raw.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('-') {
            out.push('-');
        }
    }
    while out.ends_with('-') {
        out.pop();
    }
    out
}

/// Entry id: citation slug and task slug joined by `:`.
pub fn derive_id(citation_key: &str, task_slug: &str) -> String {
    format!("{}:{}", slugify(citation_key), task_slug)
}

/// A motif field as written in an input record. Only `One` is valid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MotifField {
    One(Motif),
    Many(Vec<Motif>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub id: String,
    pub citation_key: String,
    pub task_slug: String,
    pub title: String,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    pub domains: Vec<Domain>,
    pub motif: MotifField,
    #[serde(default)]
    pub compute_bound_tags: Vec<ComputeBoundTag>,
    pub rating: RatingCard,
    pub date_added: NaiveDate,
    #[serde(default = "current_schema")]
    pub schema_version: u32,
}

fn current_schema() -> u32 {
    CURRENT_SCHEMA_VERSION
}

impl EntryRecord {
    /// A record with a derived id, today's schema and an empty description.
    pub fn new(
        citation_key: &str,
        task_slug: &str,
        title: &str,
        domains: &[&str],
        motif: &str,
        rating: RatingCard,
        date_added: NaiveDate,
    ) -> Self {
        EntryRecord {
            id: derive_id(citation_key, task_slug),
            citation_key: citation_key.to_string(),
            task_slug: task_slug.to_string(),
            title: title.to_string(),
            description: String::new(),
            url: None,
            domains: domains.iter().map(|d| Domain::new(d)).collect(),
            motif: MotifField::One(Motif::new(motif)),
            compute_bound_tags: Vec::new(),
            rating,
            date_added,
            schema_version: CURRENT_SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FindingCode {
    EmptyId,
    IdMismatch,
    EmptyCitationKey,
    InvalidTaskSlug,
    EmptyTitle,
    EmptyDomains,
    MissingMotif,
    MultipleMotifs,
    MissingCategory,
    MetricsOutOfRange,
    UnsupportedSchemaVersion,
    NonCanonicalDomain,
    NonCanonicalMotif,
}

impl FindingCode {
    pub fn as_str(self) -> &'static str {
        match self {
            FindingCode::EmptyId => "EMPTY_ID",
            FindingCode::IdMismatch => "ID_MISMATCH",
            FindingCode::EmptyCitationKey => "EMPTY_CITATION_KEY",
            FindingCode::InvalidTaskSlug => "INVALID_TASK_SLUG",
            FindingCode::EmptyTitle => "EMPTY_TITLE",
            FindingCode::EmptyDomains => "EMPTY_DOMAINS",
            FindingCode::MissingMotif => "MISSING_MOTIF",
            FindingCode::MultipleMotifs => "MULTIPLE_MOTIFS",
            FindingCode::MissingCategory => "MISSING_CATEGORY",
            FindingCode::MetricsOutOfRange => "METRICS_OUT_OF_RANGE",
            FindingCode::UnsupportedSchemaVersion => "UNSUPPORTED_SCHEMA_VERSION",
            FindingCode::NonCanonicalDomain => "NON_CANONICAL_DOMAIN",
            FindingCode::NonCanonicalMotif => "NON_CANONICAL_MOTIF",
        }
    }
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub code: FindingCode,
    pub field: String,
    pub message: String,
}

impl Finding {
    fn new(code: FindingCode, field: impl Into<String>, message: impl Into<String>) -> Self {
        Finding { code, field: field.into(), message: message.into() }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.code, self.field, self.message)
    }
}

/// Checks every entry invariant. An empty result means the record is valid.
pub fn validate_entry(record: &EntryRecord) -> Vec<Finding> {
    let mut findings = Vec::new();
    if record.id.trim().is_empty() {
        findings.push(Finding::new(FindingCode::EmptyId, "id", "id is empty"));
    }
    if record.citation_key.trim().is_empty() || slugify(&record.citation_key).is_empty() {
        findings.push(Finding::new(
            FindingCode::EmptyCitationKey,
            "citation_key",
            "citation key has no alphanumeric characters",
        ));
    }
    if record.task_slug.is_empty() || slugify(&record.task_slug) != record.task_slug {
        findings.push(Finding::new(
            FindingCode::InvalidTaskSlug,
            "task_slug",
            format!("task slug {:?} is not a lowercase slug", record.task_slug),
        ));
    }
    let expected = derive_id(&record.citation_key, &record.task_slug);
    if !record.id.trim().is_empty() && record.id != expected {
        findings.push(Finding::new(
            FindingCode::IdMismatch,
            "id",
            format!("id {:?} does not match derived id {:?}", record.id, expected),
        ));
    }
    if record.title.trim().is_empty() {
        findings.push(Finding::new(FindingCode::EmptyTitle, "title", "title is empty"));
    }
    if record.domains.iter().all(|d| d.as_str().is_empty()) {
        findings.push(Finding::new(FindingCode::EmptyDomains, "domains", "at least one domain is required"));
    }
    match &record.motif {
        MotifField::One(m) if m.as_str().is_empty() => {
            findings.push(Finding::new(FindingCode::MissingMotif, "motif", "motif is empty"));
        }
        MotifField::One(_) => {}
        MotifField::Many(ms) => match ms.len() {
            0 => findings.push(Finding::new(FindingCode::MissingMotif, "motif", "motif is empty")),
            1 => {}
            n => findings.push(Finding::new(
                FindingCode::MultipleMotifs,
                "motif",
                format!("an entry has exactly one motif, found {n}"),
            )),
        },
    }
    for category in Category::ALL {
        match record.rating.category_score(category) {
            Ok(_) => {}
            Err(RubricError::MissingCategory(c)) => findings.push(Finding::new(
                FindingCode::MissingCategory,
                format!("rating.{c}"),
                format!("no checklist or override for {c}"),
            )),
            Err(e) => {
                findings.push(Finding::new(FindingCode::MetricsOutOfRange, format!("rating.{category}"), e.to_string()))
            }
        }
    }
    if record.schema_version > CURRENT_SCHEMA_VERSION {
        findings.push(Finding::new(
            FindingCode::UnsupportedSchemaVersion,
            "schema_version",
            format!("schema_version {} is newer than {}", record.schema_version, CURRENT_SCHEMA_VERSION),
        ));
    }
    findings
}

/// Non-blocking findings: vocabulary terms outside the canonical lists.
pub fn vocabulary_warnings(record: &EntryRecord) -> Vec<Finding> {
    let mut out: Vec<Finding> = record
        .domains
        .iter()
        .filter(|d| !d.as_str().is_empty() && !d.is_canonical())
        .map(|d| Finding::new(FindingCode::NonCanonicalDomain, "domains", format!("non-canonical domain {d:?}")))
        .collect();
    let motifs: Vec<&Motif> = match &record.motif {
        MotifField::One(m) => vec![m],
        MotifField::Many(ms) => ms.iter().collect(),
    };
    out.extend(
        motifs
            .into_iter()
            .filter(|m| !m.as_str().is_empty() && !m.is_canonical())
            .map(|m| Finding::new(FindingCode::NonCanonicalMotif, "motif", format!("non-canonical motif {m:?}"))),
    );
    out
}

/// A validated benchmark entry with its recomputed rating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkEntry {
    id: String,
    citation_key: String,
    task_slug: String,
    title: String,
    description: String,
    url: Option<String>,
    domains: Vec<Domain>,
    motif: Motif,
    compute_bound_tags: Vec<ComputeBoundTag>,
    rating: RatingCard,
    scores: CategoryScores,
    aggregate: AggregateRating,
    date_added: NaiveDate,
}

impl TryFrom<EntryRecord> for BenchmarkEntry {
    type Error = Vec<Finding>;

    fn try_from(record: EntryRecord) -> Result<Self, Self::Error> {
        let findings = validate_entry(&record);
        if !findings.is_empty() {
            return Err(findings);
        }
        let motif = match record.motif {
            MotifField::One(m) => m,
            MotifField::Many(mut ms) => ms.remove(0),
        };
        let mut domains: Vec<Domain> = record
            .domains
            .into_iter()
            .filter(|d| !d.as_str().is_empty())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        domains.sort_by(|a, b| display_order(a, b, Domain::canonical_rank));
        let compute_bound_tags: Vec<ComputeBoundTag> =
            record.compute_bound_tags.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let scores = record.rating.scores().expect("validated rating");
        Ok(BenchmarkEntry {
            id: record.id,
            citation_key: record.citation_key,
            task_slug: record.task_slug,
            title: record.title,
            description: record.description,
            url: record.url,
            domains,
            motif,
            compute_bound_tags,
            aggregate: AggregateRating::from_scores(&scores),
            scores,
            rating: record.rating,
            date_added: record.date_added,
        })
    }
}

impl BenchmarkEntry {
    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn citation_key(&self) -> &str {
        &self.citation_key
    }
    pub fn task_slug(&self) -> &str {
        &self.task_slug
    }
    pub fn title(&self) -> &str {
        &self.title
    }
    pub fn description(&self) -> &str {
        &self.description
    }
    pub fn url(&self) -> Option<&str> {
        self.url.as_deref()
    }
    /// Domains in display order, without duplicates.
    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }
    pub fn motif(&self) -> &Motif {
        &self.motif
    }
    pub fn compute_bound_tags(&self) -> &[ComputeBoundTag] {
        &self.compute_bound_tags
    }
    pub fn rating(&self) -> &RatingCard {
        &self.rating
    }
    pub fn scores(&self) -> &CategoryScores {
        &self.scores
    }
    pub fn aggregate(&self) -> &AggregateRating {
        &self.aggregate
    }
    pub fn date_added(&self) -> NaiveDate {
        self.date_added
    }

    pub fn to_record(&self) -> EntryRecord {
        EntryRecord {
            id: self.id.clone(),
            citation_key: self.citation_key.clone(),
            task_slug: self.task_slug.clone(),
            title: self.title.clone(),
            description: self.description.clone(),
            url: self.url.clone(),
            domains: self.domains.clone(),
            motif: MotifField::One(self.motif.clone()),
            compute_bound_tags: self.compute_bound_tags.clone(),
            rating: self.rating.clone(),
            date_added: self.date_added,
            schema_version: CURRENT_SCHEMA_VERSION,
        }
    }
}
