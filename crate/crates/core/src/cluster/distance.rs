use serde::Serialize;

use super::ClusterError;
use crate::profile::FeatureVector;

/// Nonnegative per-dimension weights with at least one positive entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, ClusterError> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(ClusterError::InvalidWeights("weights must be finite and nonnegative".into()));
        }
        if !weights.iter().any(|w| *w > 0.0) {
            return Err(ClusterError::InvalidWeights("at least one weight must be positive".into()));
        }
        Ok(WeightVector { weights })
    }

    pub fn uniform(len: usize) -> Self {
        WeightVector { weights: vec![1.0; len] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// Multiplies every weight by `factor`; distances are unchanged.
    pub fn scaled(&self, factor: f64) -> Result<Self, ClusterError> {
        WeightVector::new(self.weights.iter().map(|w| w * factor).collect())
    }
}

/// Weighted cosine distance `1 - <a,b>_w / (|a|_w |b|_w)`.
///
/// The products are formed as `w * (a * b)` so that swapping the arguments
/// gives a bit-identical result. The value is clamped into `[0, 2]`; for
/// nonnegative inputs it lies in `[0, 1]`.
pub fn weighted_cosine_distance(a: &[f64], b: &[f64], w: &[f64]) -> Result<f64, ClusterError> {
    if a.len() != b.len() {
        return Err(ClusterError::LengthMismatch { expected: a.len(), found: b.len() });
    }
    if w.len() != a.len() {
        return Err(ClusterError::LengthMismatch { expected: a.len(), found: w.len() });
    }
    let mut dot = 0.0;
    let mut norm_a = 0.0;
    let mut norm_b = 0.0;
    for ((&x, &y), &wi) in a.iter().zip(b).zip(w) {
        dot += wi * (x * y);
        norm_a += wi * (x * x);
        norm_b += wi * (y * y);
    }
    if norm_a.is_nan() || norm_a <= 0.0 {
        return Err(ClusterError::DegenerateVector { workload_id: None, side: 0 });
    }
    if norm_b.is_nan() || norm_b <= 0.0 {
        return Err(ClusterError::DegenerateVector { workload_id: None, side: 1 });
    }
    // sqrt(fl(s * s)) == s, so identical vectors give exactly zero.
    let cos = dot / (norm_a * norm_b).sqrt();
    Ok((1.0 - cos.clamp(-1.0, 1.0)).max(0.0))
}

pub fn cosine_distance(a: &FeatureVector, b: &FeatureVector, w: &WeightVector) -> Result<f64, ClusterError> {
    weighted_cosine_distance(&a.values, &b.values, w.as_slice()).map_err(|e| match e {
        ClusterError::DegenerateVector { side, .. } => ClusterError::DegenerateVector {
            workload_id: Some(if side == 0 { a.workload_id.clone() } else { b.workload_id.clone() }),
            side,
        },
        other => other,
    })
}

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    #[serde(skip)]
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows, checking symmetry, a zero diagonal and
    /// finite nonnegative entries.
    pub fn new(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, ClusterError> {
        let n = ids.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ClusterError::InvalidMatrix(format!("expected a {n}x{n} matrix")));
        }
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(ClusterError::InvalidMatrix(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..n {
                let v = rows[i][j];
                if !v.is_finite() || v < 0.0 {
                    return Err(ClusterError::InvalidMatrix(format!("entry ({i},{j}) = {v}")));
                }
                if v != rows[j][i] {
                    return Err(ClusterError::InvalidMatrix(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        Ok(DistanceMatrix { ids, d: rows.into_iter().flatten().collect() })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.ids.len() + j]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.ids.len().max(1)).map(<[f64]>::to_vec).collect()
    }
}

/// All pairwise weighted cosine distances.
pub fn pairwise(vectors: &[FeatureVector], w: &WeightVector) -> Result<DistanceMatrix, ClusterError> {
    let n = vectors.len();
    if n < 2 {
        return Err(ClusterError::TooFewLeaves(n));
    }
    let dim = w.len();
    for v in vectors {
        if v.len() != dim {
            return Err(ClusterError::LengthMismatch { expected: dim, found: v.len() });
        }
        if !v.values.iter().zip(w.as_slice()).any(|(x, wi)| *wi * (x * x) > 0.0) {
            return Err(ClusterError::DegenerateVector { workload_id: Some(v.workload_id.clone()), side: 0 });
        }
    }
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let value = cosine_distance(&vectors[i], &vectors[j], w)?;
            d[i * n + j] = value;
            d[j * n + i] = value;
        }
    }
    Ok(DistanceMatrix { ids: vectors.iter().map(|v| v.workload_id.clone()).collect(), d })
}
