//! Workload clustering: weighted cosine distances, agglomerative hierarchical
//! clustering, dendrogram cuts and medoid selection.

mod dendrogram;
mod distance;
mod select;

use thiserror::Error;

pub use dendrogram::{agglomerate, cut, ClusterCut, Dendrogram, Linkage, Merge};
pub use distance::{cosine_distance, pairwise, weighted_cosine_distance, DistanceMatrix, WeightVector};
pub use select::{representatives, rubric_axes, select_subset, AxisWeights, CutControl, SelectedCluster, Selection};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClusterError {
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("degenerate vector{}: zero norm under the given weights", .workload_id.as_ref().map(|id| format!(" `{id}`")).unwrap_or_default())]
    DegenerateVector { workload_id: Option<String>, side: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("need at least 2 workloads, got {0}")]
    TooFewLeaves(usize),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid dendrogram: {0}")]
    InvalidDendrogram(String),
    #[error("unknown linkage `{0}` (expected average, single or complete)")]
    UnknownLinkage(String),
    #[error("cluster count must be at least 1, got {0}")]
    InvalidClusterCount(usize),
    #[error("workload `{0}` does not match any registry entry")]
    UnknownWorkload(String),
    #[error("no registry entry has a feature vector")]
    NoOverlap,
}
