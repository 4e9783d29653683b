//! Loading and featurizing a directory of power traces.

use std::path::Path;

use ontology_core::{
    featurize, load_trace_dir, select_subset, AxisWeights, BinningConfig, ClusterError, CutControl, Dendrogram,
    FeatureVector, Linkage, Registry, TraceDirError,
};

/// Feature vectors for every trace in `dir`. Without `p_max` the histogram
/// ceiling is the largest power seen across the whole set.
pub fn featurize_dir(dir: &Path, n_bins: usize, p_max: Option<f64>) -> Result<Vec<FeatureVector>, TraceDirError> {
    let traces = load_trace_dir(dir)?;
    if traces.is_empty() {
        return Ok(Vec::new());
    }
    let wrap = |source| TraceDirError::Trace { path: dir.to_path_buf(), source };
    let cfg = match p_max {
        Some(p) => BinningConfig::new(n_bins, p),
        None => BinningConfig::fitted(n_bins, &traces),
    }
    .map_err(wrap)?;
    traces.iter().map(|t| featurize(t, &cfg).map_err(wrap)).collect()
}

/// The complete merge tree over every traced workload, with power-only weights.
pub fn full_dendrogram(r: &Registry, vectors: &[FeatureVector], linkage: Linkage) -> Result<Dendrogram, ClusterError> {
    select_subset(r, vectors, &AxisWeights::default(), CutControl::Clusters(1), linkage).map(|s| s.dendrogram)
}
