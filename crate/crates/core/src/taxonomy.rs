//! Scientific domains, AI/ML motifs and compute-bound tags.
//!
//! Both vocabularies are open: any non-empty name is accepted, but names are
//! case-normalized and matched against a seeded canonical list so callers can
//! flag entries that fall outside it.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Canonical scientific domains, in display order.
pub const CANONICAL_DOMAINS: [&str; 7] = [
    "High Energy Physics",
    "Chemistry",
    "Materials Science",
    "Biology & Medicine",
    "Climate & Earth Science",
    "Computational Science & AI",
    "Mathematics",
];

/// Canonical AI/ML motifs, in display order.
pub const CANONICAL_MOTIFS: [&str; 9] = [
    "Classification",
    "Regression",
    "Sequence Prediction/Forecasting",
    "Anomaly Detection",
    "Reinforcement Learning/Control",
    "Generative",
    "Multimodal Reasoning",
    "Surrogate Modeling",
    "Reasoning & Generalization",
];

/// Lowercases and collapses every run of punctuation/whitespace (other than `&`)
/// to one space, so "High-Energy Physics" and "high energy  physics" compare equal.
fn fold(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut pending_space = false;
    for ch in name.chars() {
        if ch.is_alphanumeric() || ch == '&' {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(ch.to_lowercase());
        } else {
            pending_space = true;
        }
    }
    out
}

fn title_case(name: &str) -> String {
    name.split_whitespace()
        .map(|word| {
            let mut chars = word.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().chain(chars.flat_map(char::to_lowercase)).collect(),
                None => String::new(),
            }
        })
        .collect::<Vec<String>>()
        .join(" ")
}

fn normalize(raw: &str, canonical: &[&'static str]) -> (String, bool) {
    let key = fold(raw);
    match canonical.iter().find(|c| fold(c) == key) {
        Some(c) => ((*c).to_string(), true),
        None => (title_case(raw), false),
    }
}

macro_rules! vocabulary_term {
    ($(#[$meta:meta])* $name:ident, $canonical:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            /// Normalizes `raw` to its canonical spelling when it matches the
            /// seeded vocabulary, or to title case otherwise.
            pub fn new(raw: &str) -> Self {
                Self(normalize(raw, &$canonical).0)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            pub fn is_canonical(&self) -> bool {
                $canonical.contains(&self.0.as_str())
            }

            /// Position in the canonical list, used for stable display ordering.
            pub fn canonical_rank(&self) -> Option<usize> {
                $canonical.iter().position(|c| *c == self.0)
            }

            pub fn canonical() -> Vec<Self> {
                $canonical.iter().map(|c| Self((*c).to_string())).collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let raw = String::deserialize(d)?;
                Ok(Self::new(&raw))
            }
        }
    };
}

vocabulary_term!(
    /// A scientific domain a benchmark belongs to. An entry may carry several.
    Domain,
    CANONICAL_DOMAINS
);

vocabulary_term!(
    /// The single AI/ML task type of a benchmark.
    Motif,
    CANONICAL_MOTIFS
);

/// Orders vocabulary terms canonical-first (in seeded order), then alphabetically.
pub fn display_order<T>(a: &T, b: &T, rank: impl Fn(&T) -> Option<usize>) -> std::cmp::Ordering
where
    T: Ord,
{
    match (rank(a), rank(b)) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

/// The computational area a benchmark implementation is typically bound by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComputeBoundTag {
    LatencyBound,
    MemoryBound,
    ThroughputBound,
    UtilizationBound,
}

impl ComputeBoundTag {
    pub const ALL: [ComputeBoundTag; 4] = [
        ComputeBoundTag::LatencyBound,
        ComputeBoundTag::MemoryBound,
        ComputeBoundTag::ThroughputBound,
        ComputeBoundTag::UtilizationBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ComputeBoundTag::LatencyBound => "LatencyBound",
            ComputeBoundTag::MemoryBound => "MemoryBound",
            ComputeBoundTag::ThroughputBound => "ThroughputBound",
            ComputeBoundTag::UtilizationBound => "UtilizationBound",
        }
    }

    pub fn parse(raw: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str().eq_ignore_ascii_case(raw.trim()))
    }
}

impl fmt::Display for ComputeBoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
