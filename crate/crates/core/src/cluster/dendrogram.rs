use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::distance::DistanceMatrix;
use super::ClusterError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    #[default]
    Average,
    Single,
    Complete,
}

impl Linkage {
    pub const ALL: [Linkage; 3] = [Linkage::Average, Linkage::Single, Linkage::Complete];

    pub fn as_str(self) -> &'static str {
        match self {
            Linkage::Average => "average",
            Linkage::Single => "single",
            Linkage::Complete => "complete",
        }
    }
}

impl FromStr for Linkage {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Linkage::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ClusterError::UnknownLinkage(s.to_string()))
    }
}

/// One merge step. Node references follow the usual convention: `0..n` are
/// leaves, `n + k` is the cluster created by merge `k`. `left` is the child
/// whose smallest leaf index is lower.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub leaves: Vec<String>,
    pub merges: Vec<Merge>,
    pub linkage: Linkage,
}

/// Agglomerative clustering over a distance matrix.
///
/// Inter-cluster distances are maintained incrementally: single takes the
/// minimum, complete the maximum, and average keeps the sum of cross-pair
/// distances so the mean over all cross pairs is exact up to summation order.
/// Each step merges the pair at minimal linkage distance; ties go to the pair
/// with the smallest (left leaf index, right leaf index), where a cluster's
/// leaf index is that of its smallest member.
pub fn agglomerate(m: &DistanceMatrix, linkage: Linkage) -> Result<Dendrogram, ClusterError> {
    let n = m.len();
    if n < 2 {
        return Err(ClusterError::TooFewLeaves(n));
    }
    // Slots are indexed by each cluster's smallest leaf; a merged cluster
    // keeps the lower slot.
    let mut link: Vec<f64> = (0..n * n).map(|k| m.get(k / n, k % n)).collect();
    let mut size = vec![1usize; n];
    let mut node = (0..n).collect::<Vec<usize>>();
    let mut active: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n - 1);

    let linkage_value = |link: &[f64], size: &[usize], i: usize, j: usize| match linkage {
        Linkage::Average => link[i * n + j] / (size[i] * size[j]) as f64,
        Linkage::Single | Linkage::Complete => link[i * n + j],
    };

    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for (ai, &i) in active.iter().enumerate() {
            for &j in &active[ai + 1..] {
                let v = linkage_value(&link, &size, i, j);
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let (distance, i, j) = best.expect("at least two active clusters");
        merges.push(Merge { left: node[i], right: node[j], distance, size: size[i] + size[j] });

        for &k in &active {
            if k == i || k == j {
                continue;
            }
            let (ik, jk) = (link[i * n + k], link[j * n + k]);
            let updated = match linkage {
                Linkage::Average => ik + jk,
                Linkage::Single => ik.min(jk),
                Linkage::Complete => ik.max(jk),
            };
            link[i * n + k] = updated;
            link[k * n + i] = updated;
        }
        size[i] += size[j];
        node[i] = n + step;
        active.retain(|&k| k != j);
    }

    Ok(Dendrogram { leaves: m.ids().to_vec(), merges, linkage })
}

/// Flat clusters obtained by applying every merge at or below `threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterCut {
    pub threshold: f64,
    /// Clusters ordered by their first leaf; members in leaf order.
    pub clusters: Vec<Vec<String>>,
}

impl ClusterCut {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn cluster_of(&self, id: &str) -> Option<usize> {
        self.clusters.iter().position(|c| c.iter().any(|m| m == id))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Dendrogram {
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Smallest leaf index under each node, for leaves and merges alike.
    fn first_leaf(&self) -> Vec<usize> {
        let n = self.leaves.len();
        let mut first: Vec<usize> = (0..n).collect();
        for m in &self.merges {
            first.push(first[m.left].min(first[m.right]));
        }
        first
    }

    /// Leaf-level cluster labels (`0..k`, numbered by first leaf) after
    /// applying merges with distance `<= threshold`.
    pub fn labels(&self, threshold: f64) -> Vec<usize> {
        let n = self.leaves.len();
        let first = self.first_leaf();
        let mut parent: Vec<usize> = (0..n).collect();
        for m in &self.merges {
            if m.distance <= threshold {
                let a = find(&mut parent, first[m.left]);
                let b = find(&mut parent, first[m.right]);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let mut label_of_root = vec![usize::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|leaf| {
                let root = find(&mut parent, leaf);
                if label_of_root[root] == usize::MAX {
                    label_of_root[root] = next;
                    next += 1;
                }
                label_of_root[root]
            })
            .collect()
    }

    pub fn cut(&self, threshold: f64) -> ClusterCut {
        let labels = self.labels(threshold);
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut clusters = vec![Vec::new(); k];
        for (leaf, &label) in labels.iter().enumerate() {
            clusters[label].push(self.leaves[leaf].clone());
        }
        ClusterCut { threshold, clusters }
    }

    /// The cut threshold that yields at most `k` clusters: the midpoint between
    /// the `(n-k)`th and `(n-k+1)`th smallest merge distances. For `k >= n` the
    /// lower bound is 0; for `k = 1` the largest merge distance itself is used.
    pub fn threshold_for_k(&self, k: usize) -> Result<f64, ClusterError> {
        if k == 0 {
            return Err(ClusterError::InvalidClusterCount(k));
        }
        let mut d: Vec<f64> = self.merges.iter().map(|m| m.distance).collect();
        d.sort_by(f64::total_cmp);
        let applied = self.leaves.len().saturating_sub(k);
        let lower = if applied == 0 { 0.0 } else { d[applied - 1] };
        Ok(match d.get(applied) {
            Some(&upper) => (lower + upper) / 2.0,
            None => lower,
        })
    }

    /// Checks that merges form a binary tree over the leaves: `n - 1` merges,
    /// every node used exactly once as a child, sizes consistent.
    pub fn check_structure(&self) -> Result<(), ClusterError> {
        let n = self.leaves.len();
        if self.merges.len() + 1 != n {
            return Err(ClusterError::InvalidDendrogram(format!("{} merges for {} leaves", self.merges.len(), n)));
        }
        let mut used = vec![false; 2 * n - 1];
        let mut sizes = vec![1usize; n];
        for (k, m) in self.merges.iter().enumerate() {
            for child in [m.left, m.right] {
                if child >= n + k || used[child] {
                    return Err(ClusterError::InvalidDendrogram(format!(
                        "merge {k} reuses or forward-references {child}"
                    )));
                }
                used[child] = true;
            }
            if m.size != sizes[m.left] + sizes[m.right] {
                return Err(ClusterError::InvalidDendrogram(format!("merge {k} has wrong size")));
            }
            sizes.push(m.size);
        }
        Ok(())
    }

    /// True when merge distances never decrease (within `tol`).
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.merges.windows(2).all(|w| w[1].distance + tol >= w[0].distance)
    }

    fn node_label(&self, node: usize) -> String {
        let n = self.leaves.len();
        if node < n {
            self.leaves[node].clone()
        } else {
            format!("#{}", node - n)
        }
    }

    /// Line-oriented export: `merge <k>: <left> + <right> @ <distance> size <n>`.
    /// Leaves print as their ids and merged clusters as `#<k>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, m) in self.merges.iter().enumerate() {
            let _ = writeln!(
                out,
                "merge {k}: {} + {} @ {:.6} size {}",
                self.node_label(m.left),
                self.node_label(m.right),
                m.distance,
                m.size
            );
        }
        out
    }
}

pub fn cut(dend: &Dendrogram, threshold: f64) -> ClusterCut {
    dend.cut(threshold)
}
