//! Nine synthetic power traces in three behaviour groups.
//!
//! Low traces idle near 90 W, high traces run near 250 W, mixed traces spread
//! over 120 to 220 W with short low and high excursions.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const SEED: u64 = 0x5eed_0072;
pub const SAMPLES: usize = 600;
pub const STEP_MS: u64 = 100;
pub const P_MAX: f64 = 320.0;
pub const CUT: f64 = 0.72;
pub const GROUPS: [&str; 3] = ["low", "high", "mixed"];

pub fn workload_id(group: &str, k: usize) -> String {
    format!("synth-{group}-{k}:power-profile")
}

/// `(workload id, CSV text)` for all nine traces, grouped low, high, mixed.
pub fn traces() -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let low = Normal::new(90.0, 3.0).unwrap();
    let high = Normal::new(250.0, 3.0).unwrap();
    let mut out = Vec::new();
    for group in GROUPS {
        for k in 1..=3 {
            let mut csv = String::from("timestamp_ms,power_w\n");
            for s in 0..SAMPLES {
                let p: f64 = match group {
                    "low" => low.sample(&mut rng),
                    "high" => high.sample(&mut rng),
                    _ => {
                        let u: f64 = rng.random();
                        if u < 0.05 {
                            low.sample(&mut rng)
                        } else if u < 0.10 {
                            high.sample(&mut rng)
                        } else {
                            rng.random_range(120.0..220.0)
                        }
                    }
                };
                csv.push_str(&format!("{},{:.3}\n", s as u64 * STEP_MS, p.max(0.0)));
            }
            out.push((workload_id(group, k), csv));
        }
    }
    out
}

/// A corpus holding one entry per synthetic trace.
pub fn corpus() -> String {
    let mut entries = Vec::new();
    for group in GROUPS {
        for k in 1..=3 {
            let id = workload_id(group, k);
            let citation = id.split(':').next().unwrap().to_string();
            entries.push(serde_json::json!({
                "id": id,
                "citation_key": citation,
                "task_slug": "power-profile",
                "title": format!("Synthetic {group} workload {k}"),
                "description": format!("Synthetic {group}-power trace."),
                "domains": ["Computational Science & AI"],
                "motif": "Regression",
                "compute_bound_tags": [],
                "rating": {"overrides": {
                    "software": "3", "specification": "3", "dataset": "3",
                    "metrics": "3", "reference": "3", "documentation": "3"
                }, "provenance": "aggregate-only"},
                "date_added": "2025-10-01",
                "schema_version": 1
            }));
        }
    }
    let doc = serde_json::json!({
        "manifest": {
            "schema_version": 1,
            "entry_count": entries.len(),
            "generated_at": "2025-10-01T00:00:00Z",
            "source": "synthetic power-profile fixture"
        },
        "entries": entries
    });
    let registry = ontology_core::parse_corpus(&doc.to_string()).expect("fixture corpus is valid");
    registry.to_json()
}
