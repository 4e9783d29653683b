//! Registry, rating and exploration engine for scientific ML benchmarks.
//!
//! - [`rubric`]: six-category scoring and the endorsement rule
//! - [`entry`] / [`taxonomy`]: the entry data model and its vocabularies
//! - [`registry`]: the canonical corpus file and the shipped seed collection
//! - [`query`]: faceted filtering, sorting and the domain × motif heatmap
//! - [`profile`]: power traces and power-distribution feature vectors
//! - [`cluster`]: cosine distances, agglomerative clustering, cuts and medoids
//! - [`export`]: static site data and the markdown report

pub mod cluster;
pub mod entry;
pub mod exact;
pub mod export;
pub mod profile;
pub mod query;
pub mod registry;
pub mod rubric;
pub mod taxonomy;

pub use cluster::{
    agglomerate, cosine_distance, cut, pairwise, representatives, select_subset, AxisWeights, ClusterCut, ClusterError,
    CutControl, Dendrogram, DistanceMatrix, Linkage, Selection, WeightVector,
};
pub use entry::{validate_entry, BenchmarkEntry, EntryRecord, Finding, FindingCode};
pub use exact::Rational;
pub use profile::{
    featurize, load_trace_dir, parse_trace, trace_file_name, workload_id_from_file_name, BinningConfig, FeatureVector,
    PowerTrace, TraceDirError, TraceError,
};
pub use query::{evaluate, facet_counts, heatmap, FacetCounts, HeatmapMatrix, Query};
pub use registry::{load_corpus, parse_corpus, save_corpus, seed_registry, CorpusError, CorpusManifest, Registry};
pub use rubric::{aggregate, score_category, score_metrics, AggregateRating, Category, RatingCard, Score};
pub use taxonomy::{ComputeBoundTag, Domain, Motif};
