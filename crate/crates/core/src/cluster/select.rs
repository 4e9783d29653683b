use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::dendrogram::{agglomerate, ClusterCut, Dendrogram, Linkage};
use super::distance::{pairwise, DistanceMatrix, WeightVector};
use super::ClusterError;
use crate::entry::BenchmarkEntry;
use crate::profile::FeatureVector;
use crate::registry::Registry;
use crate::rubric::Category;

/// Medoid of each cluster: the member with the smallest summed distance to
/// the other members, ties going to the lexicographically smallest id.
pub fn representatives(cut: &ClusterCut, m: &DistanceMatrix) -> Result<Vec<String>, ClusterError> {
    cut.clusters
        .iter()
        .map(|members| {
            let idx: Vec<usize> = members
                .iter()
                .map(|id| m.index_of(id).ok_or_else(|| ClusterError::UnknownWorkload(id.clone())))
                .collect::<Result<_, _>>()?;
            let mut best: Option<(f64, &String)> = None;
            for (&i, id) in idx.iter().zip(members) {
                let total: f64 = idx.iter().map(|&j| m.get(i, j)).sum();
                let better = match best {
                    None => true,
                    Some((t, b)) => total < t || (total == t && id < b),
                };
                if better {
                    best = Some((total, id));
                }
            }
            best.map(|(_, id)| id.clone()).ok_or(ClusterError::TooFewLeaves(0))
        })
        .collect()
}

/// User priorities for the selection bar. `power` weighs every histogram
/// bin; any rubric weight present appends the six category axes (scores
/// divided by 5), with absent categories weighted 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisWeights {
    #[serde(default = "one")]
    pub power: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub software: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specification: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub documentation: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl Default for AxisWeights {
    fn default() -> Self {
        AxisWeights {
            power: 1.0,
            software: None,
            specification: None,
            dataset: None,
            metrics: None,
            reference: None,
            documentation: None,
        }
    }
}

impl AxisWeights {
    fn rubric(&self) -> [Option<f64>; 6] {
        [self.software, self.specification, self.dataset, self.metrics, self.reference, self.documentation]
    }

    pub fn uses_rubric_axes(&self) -> bool {
        self.rubric().iter().any(Option::is_some)
    }

    /// Per-dimension weights for `n_bins` histogram bins plus, when enabled,
    /// the six rubric axes.
    pub fn expand(&self, n_bins: usize) -> Result<WeightVector, ClusterError> {
        let mut w = vec![self.power; n_bins];
        if self.uses_rubric_axes() {
            w.extend(self.rubric().iter().map(|x| x.unwrap_or(0.0)));
        }
        WeightVector::new(w)
    }
}

/// Rubric axes of an entry, each category score scaled to `[0, 1]`.
pub fn rubric_axes(entry: &BenchmarkEntry) -> [f64; 6] {
    Category::ALL.map(|c| entry.scores().get(c).to_f64() / 5.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutControl {
    Threshold(f64),
    Clusters(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedCluster {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub threshold: f64,
    pub clusters: Vec<SelectedCluster>,
    /// Workload id to cluster index.
    pub assignments: BTreeMap<String, usize>,
    /// Registry entries skipped because they have no feature vector.
    pub excluded: Vec<String>,
    pub dendrogram: Dendrogram,
}

impl Selection {
    pub fn representatives(&self) -> Vec<&str> {
        self.clusters.iter().map(|c| c.representative.as_str()).collect()
    }

    pub fn representative_entries<'r>(&self, r: &'r Registry) -> Vec<&'r BenchmarkEntry> {
        self.clusters.iter().filter_map(|c| r.get(&c.representative)).collect()
    }
}

/// Clusters the traced workloads of a registry and picks one medoid per
/// cluster: pairwise weighted cosine distances, agglomeration, a cut at the
/// given threshold (or the threshold giving at most `k` clusters), medoids.
pub fn select_subset(
    r: &Registry,
    vectors: &[FeatureVector],
    weights: &AxisWeights,
    control: CutControl,
    linkage: Linkage,
) -> Result<Selection, ClusterError> {
    for v in vectors {
        if r.get(&v.workload_id).is_none() {
            return Err(ClusterError::UnknownWorkload(v.workload_id.clone()));
        }
    }
    let traced: Vec<&FeatureVector> =
        r.entries().iter().filter_map(|e| vectors.iter().find(|v| v.workload_id == e.id())).collect();
    let excluded: Vec<String> = r
        .entries()
        .iter()
        .filter(|e| !vectors.iter().any(|v| v.workload_id == e.id()))
        .map(|e| e.id().to_string())
        .collect();
    for id in &excluded {
        log::warn!("{id}: no power trace, excluded from clustering");
    }
    if traced.is_empty() {
        return Err(ClusterError::NoOverlap);
    }
    // Leaves in workload id order, independent of registry ordering.
    let mut traced = traced;
    traced.sort_by(|a, b| a.workload_id.cmp(&b.workload_id));

    let n_bins = traced[0].len();
    let weight_vector = weights.expand(n_bins)?;
    let prepared: Vec<FeatureVector> = traced
        .iter()
        .map(|v| {
            if v.len() != n_bins {
                return Err(ClusterError::LengthMismatch { expected: n_bins, found: v.len() });
            }
            Ok(if weights.uses_rubric_axes() {
                let entry = r.get(&v.workload_id).expect("checked above");
                v.extended(rubric_axes(entry))
            } else {
                (*v).clone()
            })
        })
        .collect::<Result<_, _>>()?;

    if let CutControl::Clusters(0) = control {
        return Err(ClusterError::InvalidClusterCount(0));
    }

    if prepared.len() == 1 {
        let id = prepared[0].workload_id.clone();
        if !prepared[0].values.iter().zip(weight_vector.as_slice()).any(|(x, w)| w * x * x > 0.0) {
            return Err(ClusterError::DegenerateVector { workload_id: Some(id), side: 0 });
        }
        let threshold = match control {
            CutControl::Threshold(t) => t,
            CutControl::Clusters(_) => 0.0,
        };
        return Ok(Selection {
            threshold,
            clusters: vec![SelectedCluster { representative: id.clone(), members: vec![id.clone()] }],
            assignments: BTreeMap::from([(id.clone(), 0)]),
            excluded,
            dendrogram: Dendrogram { leaves: vec![id], merges: Vec::new(), linkage },
        });
    }

    let matrix = pairwise(&prepared, &weight_vector)?;
    let dendrogram = agglomerate(&matrix, linkage)?;
    let threshold = match control {
        CutControl::Threshold(t) => t,
        CutControl::Clusters(k) => dendrogram.threshold_for_k(k)?,
    };
    let cut = dendrogram.cut(threshold);
    let medoids = representatives(&cut, &matrix)?;
    let mut assignments = BTreeMap::new();
    let clusters = cut
        .clusters
        .into_iter()
        .zip(medoids)
        .enumerate()
        .map(|(k, (members, representative))| {
            for m in &members {
                assignments.insert(m.clone(), k);
            }
            SelectedCluster { representative, members }
        })
        .collect();
    Ok(Selection { threshold, clusters, assignments, excluded, dendrogram })
}
