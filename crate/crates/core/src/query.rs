//! Faceted filtering, sorting and the domain × motif heatmap.
//!
//! Clauses are conjunctive; set clauses match when an entry has any of the
//! listed values. Text matching is a case-insensitive substring test over the
//! title, description and citation key.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entry::BenchmarkEntry;
use crate::exact::{self, format_rational, Rational};
use crate::registry::Registry;
use crate::taxonomy::{display_order, ComputeBoundTag, Domain, Motif};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("min_average {0} outside [0, 5]")]
    MinAverageOutOfRange(String),
    #[error("`{0}` must not be an empty set")]
    EmptySet(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SortField {
    #[default]
    Average,
    Id,
    Title,
    DateAdded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Asc,
    #[default]
    Desc,
}

/// Primary sort key; ascending id is always appended as the final tiebreak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SortKey {
    pub field: SortField,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Query {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domains_any_of: Option<BTreeSet<Domain>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motifs_any_of: Option<BTreeSet<Motif>>,
    #[serde(with = "exact::option", skip_serializing_if = "Option::is_none")]
    pub min_average: Option<Rational>,
    pub endorsed_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compute_tags_any_of: Option<BTreeSet<ComputeBoundTag>>,
    pub sort: SortKey,
}

/// The facets reported by [`facet_counts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Facet {
    Domain,
    Motif,
    ComputeTag,
    Endorsed,
}

impl Query {
    pub fn validate(&self) -> Result<(), QueryError> {
        if let Some(min) = self.min_average {
            if min < Rational::from_integer(0) || min > Rational::from_integer(5) {
                return Err(QueryError::MinAverageOutOfRange(format_rational(min)));
            }
        }
        if self.domains_any_of.as_ref().is_some_and(BTreeSet::is_empty) {
            return Err(QueryError::EmptySet("domains_any_of"));
        }
        if self.motifs_any_of.as_ref().is_some_and(BTreeSet::is_empty) {
            return Err(QueryError::EmptySet("motifs_any_of"));
        }
        if self.compute_tags_any_of.as_ref().is_some_and(BTreeSet::is_empty) {
            return Err(QueryError::EmptySet("compute_tags_any_of"));
        }
        Ok(())
    }

    /// The same query with the clause belonging to `facet` removed.
    pub fn without(&self, facet: Facet) -> Query {
        let mut q = self.clone();
        match facet {
            Facet::Domain => q.domains_any_of = None,
            Facet::Motif => q.motifs_any_of = None,
            Facet::ComputeTag => q.compute_tags_any_of = None,
            Facet::Endorsed => q.endorsed_only = false,
        }
        q
    }

    pub fn matches(&self, e: &BenchmarkEntry) -> bool {
        if let Some(domains) = &self.domains_any_of {
            if !e.domains().iter().any(|d| domains.contains(d)) {
                return false;
            }
        }
        if let Some(motifs) = &self.motifs_any_of {
            if !motifs.contains(e.motif()) {
                return false;
            }
        }
        if let Some(min) = self.min_average {
            if e.aggregate().average < min {
                return false;
            }
        }
        if self.endorsed_only && !e.aggregate().endorsed {
            return false;
        }
        if let Some(tags) = &self.compute_tags_any_of {
            if !e.compute_bound_tags().iter().any(|t| tags.contains(t)) {
                return false;
            }
        }
        if let Some(text) = &self.text {
            let needle = text.to_lowercase();
            let hit = [e.title(), e.description(), e.citation_key()]
                .iter()
                .any(|field| field.to_lowercase().contains(&needle));
            if !hit {
                return false;
            }
        }
        true
    }

    fn compare(&self, a: &BenchmarkEntry, b: &BenchmarkEntry) -> Ordering {
        let primary = match self.sort.field {
            SortField::Average => a.aggregate().average.cmp(&b.aggregate().average),
            SortField::Id => a.id().cmp(b.id()),
            SortField::Title => a.title().to_lowercase().cmp(&b.title().to_lowercase()),
            SortField::DateAdded => a.date_added().cmp(&b.date_added()),
        };
        let primary = match self.sort.direction {
            Direction::Asc => primary,
            Direction::Desc => primary.reverse(),
        };
        primary.then_with(|| a.id().cmp(b.id()))
    }
}

/// Entries matching every clause of `q`, in the query's sort order.
pub fn evaluate<'r>(q: &Query, r: &'r Registry) -> Result<Vec<&'r BenchmarkEntry>, QueryError> {
    q.validate()?;
    let mut hits: Vec<&BenchmarkEntry> = r.entries().iter().filter(|e| q.matches(e)).collect();
    hits.sort_by(|a, b| q.compare(a, b));
    Ok(hits)
}

/// Per-facet value counts. Each facet is counted over the entries matching
/// `q` with that facet's own clause removed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FacetCounts {
    pub domain: BTreeMap<String, usize>,
    pub motif: BTreeMap<String, usize>,
    pub compute_tag: BTreeMap<String, usize>,
    pub endorsed: BTreeMap<String, usize>,
}

pub fn facet_counts(q: &Query, r: &Registry) -> Result<FacetCounts, QueryError> {
    q.validate()?;
    let mut out = FacetCounts::default();
    let matching = |facet| {
        let sub = q.without(facet);
        r.entries().iter().filter(move |e| sub.matches(e))
    };
    for e in matching(Facet::Domain) {
        for d in e.domains() {
            *out.domain.entry(d.to_string()).or_default() += 1;
        }
    }
    for e in matching(Facet::Motif) {
        *out.motif.entry(e.motif().to_string()).or_default() += 1;
    }
    for e in matching(Facet::ComputeTag) {
        for t in e.compute_bound_tags() {
            *out.compute_tag.entry(t.to_string()).or_default() += 1;
        }
    }
    out.endorsed.insert("true".into(), 0);
    out.endorsed.insert("false".into(), 0);
    for e in matching(Facet::Endorsed) {
        *out.endorsed.entry(e.aggregate().endorsed.to_string()).or_default() += 1;
    }
    Ok(out)
}

/// Task counts per (domain, motif). A multi-domain entry counts once in
/// each of its domains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeatmapMatrix {
    pub rows: Vec<Domain>,
    pub cols: Vec<Motif>,
    pub counts: Vec<Vec<usize>>,
}

impl HeatmapMatrix {
    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn column_sum(&self, motif: &Motif) -> usize {
        match self.cols.iter().position(|m| m == motif) {
            Some(j) => self.counts.iter().map(|row| row[j]).sum(),
            None => 0,
        }
    }

    pub fn cell(&self, domain: &Domain, motif: &Motif) -> usize {
        let i = self.rows.iter().position(|d| d == domain);
        let j = self.cols.iter().position(|m| m == motif);
        match (i, j) {
            (Some(i), Some(j)) => self.counts[i][j],
            _ => 0,
        }
    }
}

/// Rows and columns list the canonical vocabulary first, then any other terms
/// present in the registry alphabetically.
pub fn heatmap(r: &Registry) -> HeatmapMatrix {
    let mut rows: BTreeSet<Domain> = Domain::canonical().into_iter().collect();
    let mut cols: BTreeSet<Motif> = Motif::canonical().into_iter().collect();
    for e in r.entries() {
        rows.extend(e.domains().iter().cloned());
        cols.insert(e.motif().clone());
    }
    let mut rows: Vec<Domain> = rows.into_iter().collect();
    rows.sort_by(|a, b| display_order(a, b, Domain::canonical_rank));
    let mut cols: Vec<Motif> = cols.into_iter().collect();
    cols.sort_by(|a, b| display_order(a, b, Motif::canonical_rank));

    let mut counts = vec![vec![0usize; cols.len()]; rows.len()];
    for e in r.entries() {
        let j = cols.iter().position(|m| m == e.motif()).expect("motif column");
        for d in e.domains() {
            let i = rows.iter().position(|x| x == d).expect("domain row");
            counts[i][j] += 1;
        }
    }
    HeatmapMatrix { rows, cols, counts }
}
