//! Reference implementations used to cross-check the engine.

use ontology_core::{DistanceMatrix, Linkage};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// One merge as the reference sees it: child node ids, distance, size.
#[derive(Debug, Clone, PartialEq)]
pub struct RefMerge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

/// Agglomeration by full re-scan: every step recomputes the linkage of every
/// pair of current clusters directly from the leaf distances.
pub fn brute_force(d: &[Vec<f64>], linkage: Linkage) -> Vec<RefMerge> {
    let n = d.len();
    // (node id, member leaves)
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut out = Vec::new();
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in 0..clusters.len() {
                if a == b {
                    continue;
                }
                let (ma, mb) = (min_leaf(&clusters[a].1), min_leaf(&clusters[b].1));
                if ma > mb {
                    continue;
                }
                let cross: Vec<f64> =
                    clusters[a].1.iter().flat_map(|&i| clusters[b].1.iter().map(move |&j| d[i][j])).collect();
                let v = match linkage {
                    Linkage::Single => cross.iter().copied().fold(f64::INFINITY, f64::min),
                    Linkage::Complete => cross.iter().copied().fold(0.0, f64::max),
                    Linkage::Average => cross.iter().sum::<f64>() / cross.len() as f64,
                };
                let key = (v, ma, mb);
                let better = match best {
                    None => true,
                    Some((bv, bma, bmb, _, _)) => key.0 < bv || (key.0 == bv && (key.1, key.2) < (bma, bmb)),
                };
                if better {
                    best = Some((v, ma, mb, a, b));
                }
            }
        }
        let (v, _, _, a, b) = best.unwrap();
        let mut members = clusters[a].1.clone();
        members.extend(&clusters[b].1);
        out.push(RefMerge { left: clusters[a].0, right: clusters[b].0, distance: v, size: members.len() });
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        clusters.remove(hi);
        clusters.remove(lo);
        clusters.push((n + step, members));
    }
    out
}

fn min_leaf(v: &[usize]) -> usize {
    *v.iter().min().unwrap()
}

/// Symmetric matrix with a zero diagonal and entries uniform in (0, 1).
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(0.001..1.0);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

pub fn distance_matrix(d: Vec<Vec<f64>>) -> DistanceMatrix {
    let ids = (0..d.len()).map(|i| format!("w{i:02}")).collect();
    DistanceMatrix::new(ids, d).unwrap()
}

/// Every cluster of `fine` is contained in some cluster of `coarse`.
pub fn refines(fine: &[Vec<String>], coarse: &[Vec<String>]) -> bool {
    fine.iter().all(|f| coarse.iter().any(|c| f.iter().all(|x| c.contains(x))))
}

/// Independent weighted cosine distance, computed with the plain formula.
pub fn reference_cosine(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    let dot: f64 = (0..a.len()).map(|i| w[i] * a[i] * b[i]).sum();
    let na: f64 = (0..a.len()).map(|i| w[i] * a[i] * a[i]).sum::<f64>().sqrt();
    let nb: f64 = (0..a.len()).map(|i| w[i] * b[i] * b[i]).sum::<f64>().sqrt();
    1.0 - dot / (na * nb)
}
