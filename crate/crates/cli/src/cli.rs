//! `ontology` subcommands.
//!
//! Exit status: 0 success, 1 validation findings, 2 usage error, 3 I/O or
//! parse error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use clap::{Parser, Subcommand, ValueEnum};
use ontology_core::entry::vocabulary_warnings;
use ontology_core::export::{report_markdown, site_data, write_site, PublicEntry};
use ontology_core::profile::DEFAULT_BINS;
use ontology_core::registry::InvalidEntry;
use ontology_core::{
    evaluate, featurize, load_corpus, parse_trace, save_corpus, select_subset, validate_entry,
    workload_id_from_file_name, AxisWeights, BinningConfig, ClusterError, CorpusError, CutControl, EntryRecord,
    Linkage, Query, RatingCard,
};
use serde_json::Value;

use crate::api::{router, AppState};
use crate::score::score_card;
use crate::traces::{featurize_dir, full_dendrogram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ontology", version, about = "Scientific ML benchmark registry, rating and workload selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Ids,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every entry of a corpus and report findings.
    Validate {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
    },
    /// Score a rating card or an entry file.
    Score {
        entry_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Add an entry to a corpus file.
    Add {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        entry_file: PathBuf,
    },
    /// Run a query given as JSON (or `@file`).
    Query {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        #[arg(long, default_value = "{}")]
        query: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the power-distribution feature vector of one trace.
    Featurize {
        trace: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        /// Histogram ceiling in watts; defaults to the trace maximum.
        #[arg(long)]
        pmax: Option<f64>,
    },
    /// Cluster traced workloads and pick one representative per cluster.
    Cluster {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        #[arg(long)]
        traces: PathBuf,
        /// Axis weights as JSON (or `@file`), e.g. `{"power": 1, "dataset": 0.5}`.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        threshold: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "average")]
        linkage: Linkage,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        /// Histogram ceiling in watts; defaults to the maximum over all traces.
        #[arg(long)]
        pmax: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Write site-data.json and report.md.
    ExportSite {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Timestamp to embed; defaults to the corpus manifest's.
        #[arg(long)]
        generated_at: Option<DateTime<Utc>>,
        /// Trace directory; when given, the full dendrogram is embedded.
        #[arg(long)]
        traces: Option<PathBuf>,
        #[arg(long, default_value = "average")]
        linkage: Linkage,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[arg(long)]
        pmax: Option<f64>,
    },
    /// Write the markdown rating table.
    Report {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(env = "ONTOLOGY_CORPUS")]
        corpus: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        #[arg(long)]
        traces: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[arg(long)]
        pmax: Option<f64>,
    },
}

/// A failed command: exit status plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { status: EXIT_USAGE, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { status: EXIT_IO, message: message.into() }
    }

    fn findings(message: impl Into<String>) -> Self {
        Failure { status: EXIT_FINDINGS, message: message.into() }
    }
}

fn corpus_failure(path: &Path, e: CorpusError) -> Failure {
    match e {
        CorpusError::Io { .. } | CorpusError::Parse { .. } | CorpusError::UnsupportedSchema { .. } => {
            Failure::io(format!("{}: {e}", path.display()))
        }
        CorpusError::Validation(invalid) => Failure::findings(render_invalid(&invalid)),
        other => Failure::findings(format!("{}: {other}", path.display())),
    }
}

fn render_invalid(invalid: &[InvalidEntry]) -> String {
    let mut out = String::new();
    for entry in invalid {
        for f in &entry.findings {
            let _ = writeln!(out, "{}: {f}", entry.id);
        }
    }
    out.trim_end().to_string()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn json_arg(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(raw.to_string()),
    }
}

fn cluster_failure(e: ClusterError) -> Failure {
    match e {
        ClusterError::InvalidClusterCount(_) | ClusterError::InvalidWeights(_) => Failure::usage(e.to_string()),
        other => Failure::findings(other.to_string()),
    }
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let w = |out: &mut dyn Write, text: &str| out.write_all(text.as_bytes()).map_err(|e| Failure::io(e.to_string()));
    match cli.command {
        Command::Validate { corpus } => {
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let mut text = String::new();
            for e in r.entries() {
                for warning in vocabulary_warnings(&e.to_record()) {
                    let _ = writeln!(text, "warning: {}: {warning}", e.id());
                }
            }
            let _ = writeln!(text, "{}: {} entries, no findings", corpus.display(), r.len());
            w(out, &text)
        }
        Command::Score { entry_file, json } => {
            let text = read(&entry_file)?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Failure::io(format!("{}: {e}", entry_file.display())))?;
            let card: RatingCard = if value.get("rating").is_some() {
                let record: EntryRecord =
                    serde_json::from_value(value).map_err(|e| Failure::io(format!("{}: {e}", entry_file.display())))?;
                let findings = validate_entry(&record);
                if !findings.is_empty() {
                    let lines: Vec<String> = findings.iter().map(|f| format!("{}: {f}", record.id)).collect();
                    return Err(Failure::findings(lines.join("\n")));
                }
                record.rating
            } else {
                serde_json::from_value(value).map_err(|e| Failure::io(format!("{}: {e}", entry_file.display())))?
            };
            let report = score_card(&card).map_err(|e| Failure::findings(e.to_string()))?;
            if json {
                w(out, &format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")))
            } else {
                w(out, &report.to_text())
            }
        }
        Command::Add { corpus, entry_file } => {
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let text = read(&entry_file)?;
            let record: EntryRecord =
                serde_json::from_str(&text).map_err(|e| Failure::io(format!("{}: {e}", entry_file.display())))?;
            let id = record.id.clone();
            let grown = r.add_entry(record).map_err(|e| corpus_failure(&entry_file, e))?;
            save_corpus(&grown, &corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let added = grown.get(&id).expect("just added");
            let verdict = if added.aggregate().endorsed { "ENDORSED" } else { "NOT ENDORSED" };
            w(out, &format!("added {id}: {} {verdict} ({} entries)\n", added.aggregate().display, grown.len()))
        }
        Command::Query { corpus, query, format } => {
            let q: Query =
                serde_json::from_str(&json_arg(&query)?).map_err(|e| Failure::usage(format!("--query: {e}")))?;
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let hits = evaluate(&q, &r).map_err(|e| Failure::usage(format!("--query: {e}")))?;
            let text = match format {
                Format::Ids => hits.iter().map(|e| format!("{}\n", e.id())).collect(),
                Format::Json => {
                    let items: Vec<PublicEntry> = hits.iter().map(|e| PublicEntry::from(*e)).collect();
                    format!("{}\n", serde_json::to_string_pretty(&items).expect("entries serialize"))
                }
                Format::Table => {
                    let mut t = String::new();
                    for e in &hits {
                        let domains: Vec<&str> = e.domains().iter().map(|d| d.as_str()).collect();
                        let mark = if e.aggregate().endorsed { "*" } else { " " };
                        let _ = writeln!(
                            t,
                            "{}{mark}  {}  {}  {}",
                            e.aggregate().display,
                            e.id(),
                            domains.join(", "),
                            e.motif()
                        );
                    }
                    let _ = writeln!(t, "{} entries", hits.len());
                    t
                }
            };
            w(out, &text)
        }
        Command::Featurize { trace, bins, pmax } => {
            let text = read(&trace)?;
            let name = trace.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            let id = workload_id_from_file_name(name)
                .unwrap_or_else(|| trace.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string());
            let t = parse_trace(id, &text).map_err(|e| Failure::io(format!("{}: {e}", trace.display())))?;
            let cfg = match pmax {
                Some(p) => BinningConfig::new(bins, p),
                None => BinningConfig::fitted(bins, [&t]),
            }
            .map_err(|e| Failure::usage(e.to_string()))?;
            let v = featurize(&t, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
            let doc = serde_json::json!({ "workload_id": v.workload_id, "n_bins": cfg.n_bins, "p_max": cfg.p_max, "values": v.values });
            w(out, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("vector serializes")))
        }
        Command::Cluster { corpus, traces, weights, threshold, k, linkage, bins, pmax, json } => {
            let weights: AxisWeights = match weights {
                Some(raw) => {
                    serde_json::from_str(&json_arg(&raw)?).map_err(|e| Failure::usage(format!("--weights: {e}")))?
                }
                None => AxisWeights::default(),
            };
            let control = match (threshold, k) {
                (Some(t), _) => CutControl::Threshold(t),
                (None, Some(k)) => CutControl::Clusters(k),
                (None, None) => return Err(Failure::usage("give --threshold or --k")),
            };
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let vectors = featurize_dir(&traces, bins, pmax).map_err(|e| Failure::io(e.to_string()))?;
            if vectors.is_empty() {
                return Err(Failure::findings(format!("{}: no trace files", traces.display())));
            }
            let sel = select_subset(&r, &vectors, &weights, control, linkage).map_err(cluster_failure)?;
            if json {
                return w(out, &format!("{}\n", serde_json::to_string_pretty(&sel).expect("selection serializes")));
            }
            let mut t = String::new();
            let _ = writeln!(
                t,
                "{} clusters at threshold {:.6} ({} linkage)",
                sel.clusters.len(),
                sel.threshold,
                linkage.as_str()
            );
            for (i, c) in sel.clusters.iter().enumerate() {
                let _ =
                    writeln!(t, "cluster {i}: representative {} members {}", c.representative, c.members.join(", "));
            }
            if !sel.excluded.is_empty() {
                let _ = writeln!(t, "{} entries without traces excluded", sel.excluded.len());
            }
            t.push_str(&sel.dendrogram.to_text());
            w(out, &t)
        }
        Command::ExportSite { corpus, output, generated_at, traces, linkage, bins, pmax } => {
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let at = generated_at.unwrap_or(r.manifest().generated_at);
            let mut data = site_data(&r, at);
            if let Some(dir) = traces {
                let vectors = featurize_dir(&dir, bins, pmax).map_err(|e| Failure::io(e.to_string()))?;
                if vectors.is_empty() {
                    return Err(Failure::findings(format!("{}: no trace files", dir.display())));
                }
                data = data.with_dendrogram(full_dendrogram(&r, &vectors, linkage).map_err(cluster_failure)?);
            }
            write_site(&r, &data, &output).map_err(|e| Failure::io(format!("{}: {e}", output.display())))?;
            w(out, &format!("wrote {} entries to {}\n", data.entries.len(), output.display()))
        }
        Command::Report { corpus, output } => {
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            fs::write(&output, report_markdown(&r)).map_err(|e| Failure::io(format!("{}: {e}", output.display())))?;
            w(out, &format!("wrote {} rows to {}\n", r.len(), output.display()))
        }
        Command::Serve { corpus, port, bind, traces, bins, pmax } => {
            let r = load_corpus(&corpus).map_err(|e| corpus_failure(&corpus, e))?;
            let vectors = match traces {
                Some(dir) => featurize_dir(&dir, bins, pmax).map_err(|e| Failure::io(e.to_string()))?,
                None => Vec::new(),
            };
            let addr: SocketAddr =
                format!("{bind}:{port}").parse().map_err(|e| Failure::usage(format!("--bind/--port: {e}")))?;
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| Failure::io(e.to_string()))?;
            log::info!("serving {} entries and {} traces on http://{addr}", r.len(), vectors.len());
            runtime.block_on(async move {
                let listener =
                    tokio::net::TcpListener::bind(addr).await.map_err(|e| Failure::io(format!("{addr}: {e}")))?;
                axum::serve(listener, router(AppState::new(r, vectors))).await.map_err(|e| Failure::io(e.to_string()))
            })
        }
    }
}
