//! Seeded inputs for the engine benchmarks.

use ontology_core::profile::{PowerSample, PowerTrace};
use ontology_core::FeatureVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` nonnegative feature vectors of length `dim`, each with unit mass.
pub fn feature_vectors(n: usize, dim: usize, seed: u64) -> Vec<FeatureVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..1.0)).collect();
            let total: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= total);
            FeatureVector::new(format!("w{i:04}:bench"), v)
        })
        .collect()
}

/// A trace of `len` samples at 100 ms spacing, power uniform in 50..300 W.
pub fn trace(len: usize, seed: u64) -> PowerTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..len)
        .map(|i| PowerSample { timestamp_ms: i as u64 * 100, power_w: rng.random_range(50.0..300.0) })
        .collect();
    PowerTrace::new("bench:trace", samples).expect("valid trace")
}
