//! Static site data and the markdown report table.
//!
//! Both outputs are pure functions of the registry and an injected timestamp,
//! so re-exporting an unchanged registry yields byte-identical files.

use std::fs;
use std::io;
use std::path::Path;

use chrono::{DateTime, NaiveDate, Utc};
use serde::Serialize;

use crate::cluster::Dendrogram;
use crate::entry::BenchmarkEntry;
use crate::exact::format_rational;
use crate::query::{heatmap, HeatmapMatrix};
use crate::registry::Registry;
use crate::rubric::CategoryScores;
use crate::taxonomy::{ComputeBoundTag, Domain, Motif};

pub const SITE_DATA_FILE: &str = "site-data.json";
pub const REPORT_FILE: &str = "report.md";

/// Public projection of an entry: no override provenance, averages as
/// two-decimal strings plus the exact rational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublicEntry {
    pub id: String,
    pub citation_key: String,
    pub title: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    pub domains: Vec<Domain>,
    pub motif: Motif,
    pub compute_bound_tags: Vec<ComputeBoundTag>,
    pub scores: CategoryScores,
    pub average: String,
    pub average_exact: String,
    pub endorsed: bool,
    pub date_added: NaiveDate,
}

impl From<&BenchmarkEntry> for PublicEntry {
    fn from(e: &BenchmarkEntry) -> Self {
        PublicEntry {
            id: e.id().to_string(),
            citation_key: e.citation_key().to_string(),
            title: e.title().to_string(),
            description: e.description().to_string(),
            url: e.url().map(str::to_string),
            domains: e.domains().to_vec(),
            motif: e.motif().clone(),
            compute_bound_tags: e.compute_bound_tags().to_vec(),
            scores: *e.scores(),
            average: e.aggregate().display.clone(),
            average_exact: format_rational(e.aggregate().average),
            endorsed: e.aggregate().endorsed,
            date_added: e.date_added(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vocabularies {
    pub domains: Vec<Domain>,
    pub motifs: Vec<Motif>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiteData {
    pub generated_at: DateTime<Utc>,
    pub entries: Vec<PublicEntry>,
    pub heatmap: HeatmapMatrix,
    pub vocabularies: Vocabularies,
    /// Full dendrogram over the traced workloads, when traces were supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dendrogram: Option<Dendrogram>,
}

impl SiteData {
    pub fn with_dendrogram(self, dendrogram: Dendrogram) -> Self {
        SiteData { dendrogram: Some(dendrogram), ..self }
    }
}

pub fn site_data(r: &Registry, generated_at: DateTime<Utc>) -> SiteData {
    let heatmap = heatmap(r);
    SiteData {
        generated_at,
        entries: r.entries().iter().map(PublicEntry::from).collect(),
        vocabularies: Vocabularies { domains: heatmap.rows.clone(), motifs: heatmap.cols.clone() },
        heatmap,
        dendrogram: None,
    }
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

/// Markdown table `Citation | Domain | AI/ML Motif | Average Rating`, one row
/// per entry in registry order, endorsed averages in bold.
pub fn report_markdown(r: &Registry) -> String {
    let mut out = String::from("| Citation | Domain | AI/ML Motif | Average Rating |\n|---|---|---|---|\n");
    for e in r.entries() {
        let domains: Vec<&str> = e.domains().iter().map(Domain::as_str).collect();
        let avg = &e.aggregate().display;
        let avg = if e.aggregate().endorsed { format!("**{avg}**") } else { avg.clone() };
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            cell(e.citation_key()),
            cell(&domains.join(", ")),
            cell(e.motif().as_str()),
            avg
        ));
    }
    out
}

/// Writes `site-data.json` and `report.md` into `out_dir`.
pub fn export_site(r: &Registry, out_dir: &Path, generated_at: DateTime<Utc>) -> io::Result<SiteData> {
    let data = site_data(r, generated_at);
    write_site(r, &data, out_dir)?;
    Ok(data)
}

/// Writes already assembled site data plus the report for `r`.
pub fn write_site(r: &Registry, data: &SiteData, out_dir: &Path) -> io::Result<()> {
    fs::create_dir_all(out_dir)?;
    let mut json = serde_json::to_string_pretty(data).map_err(io::Error::other)?;
    json.push('\n');
    fs::write(out_dir.join(SITE_DATA_FILE), json)?;
    fs::write(out_dir.join(REPORT_FILE), report_markdown(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::CorpusManifest;
    use chrono::TimeZone;

    #[test]
    fn empty_registry_exports_empty_site() {
        let at = Utc.with_ymd_and_hms(2025, 1, 1, 0, 0, 0).unwrap();
        let r = Registry::empty(CorpusManifest::new("t", at));
        let data = site_data(&r, at);
        assert!(data.entries.is_empty());
        assert_eq!(data.heatmap.total(), 0);
        assert_eq!(data.vocabularies.domains.len(), 7);
        assert_eq!(report_markdown(&r).lines().count(), 2);
    }

    #[test]
    fn pipes_are_escaped() {
        assert_eq!(cell("a|b"), "a\\|b");
    }
}
