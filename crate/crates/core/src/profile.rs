//! Power traces and their power-distribution feature vectors.
//!
//! A trace CSV starts with the exact header `timestamp_ms,power_w`, followed
//! by `<integer>,<decimal>` rows with LF line endings. Featurization bins the
//! instantaneous power samples into an N-bin histogram over `[0, p_max]` and
//! normalizes it to unit mass. Samples are counted, not duration-weighted.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TRACE_HEADER: &str = "timestamp_ms,power_w";
pub const DEFAULT_BINS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("missing or wrong header: expected `{TRACE_HEADER}`")]
    BadHeader,
    #[error("row {row}: malformed row {text:?}")]
    MalformedRow { row: usize, text: String },
    #[error("trace has no samples")]
    EmptyTrace,
    #[error("row {row}: negative power {power}")]
    NegativePower { row: usize, power: f64 },
    #[error("row {row}: non-finite power")]
    NonFinitePower { row: usize },
    #[error("row {row}: timestamp {timestamp} is earlier than the previous sample")]
    DecreasingTimestamp { row: usize, timestamp: u64 },
    #[error("n_bins must be at least 2, got {0}")]
    TooFewBins(usize),
    #[error("p_max must be finite and positive, got {0}")]
    InvalidPowerCeiling(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSample {
    pub timestamp_ms: u64,
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerTrace {
    workload_id: String,
    samples: Vec<PowerSample>,
}

impl PowerTrace {
    /// Checks the trace invariants: non-empty, finite nonnegative power and
    /// non-decreasing timestamps. Row numbers in errors count the header as row 1.
    pub fn new(workload_id: impl Into<String>, samples: Vec<PowerSample>) -> Result<Self, TraceError> {
        if samples.is_empty() {
            return Err(TraceError::EmptyTrace);
        }
        let mut last = 0u64;
        for (i, s) in samples.iter().enumerate() {
            let row = i + 2;
            if !s.power_w.is_finite() {
                return Err(TraceError::NonFinitePower { row });
            }
            if s.power_w < 0.0 {
                return Err(TraceError::NegativePower { row, power: s.power_w });
            }
            if s.timestamp_ms < last {
                return Err(TraceError::DecreasingTimestamp { row, timestamp: s.timestamp_ms });
            }
            last = s.timestamp_ms;
        }
        Ok(PowerTrace { workload_id: workload_id.into(), samples })
    }

    pub fn workload_id(&self) -> &str {
        &self.workload_id
    }

    pub fn samples(&self) -> &[PowerSample] {
        &self.samples
    }

    pub fn max_power(&self) -> f64 {
        self.samples.iter().map(|s| s.power_w).fold(0.0, f64::max)
    }
}

pub fn parse_trace(workload_id: impl Into<String>, source: &str) -> Result<PowerTrace, TraceError> {
    let mut lines = source.split('\n');
    if lines.next() != Some(TRACE_HEADER) {
        return Err(TraceError::BadHeader);
    }
    let mut samples = Vec::new();
    let mut last = 0u64;
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        if line.is_empty() {
            continue;
        }
        let malformed = || TraceError::MalformedRow { row, text: line.to_string() };
        let (ts, power) = line.split_once(',').ok_or_else(malformed)?;
        if !ts.bytes().all(|b| b.is_ascii_digit()) || ts.is_empty() {
            return Err(malformed());
        }
        let timestamp_ms: u64 = ts.parse().map_err(|_| malformed())?;
        let power_w: f64 = power.parse().map_err(|_| malformed())?;
        if !power_w.is_finite() {
            return Err(TraceError::NonFinitePower { row });
        }
        if power_w < 0.0 {
            return Err(TraceError::NegativePower { row, power: power_w });
        }
        if timestamp_ms < last {
            return Err(TraceError::DecreasingTimestamp { row, timestamp: timestamp_ms });
        }
        last = timestamp_ms;
        samples.push(PowerSample { timestamp_ms, power_w });
    }
    PowerTrace::new(workload_id, samples)
}

/// Renders a trace in the CSV format accepted by [`parse_trace`].
pub fn write_trace(trace: &PowerTrace) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for s in trace.samples() {
        out.push_str(&format!("{},{}\n", s.timestamp_ms, s.power_w));
    }
    out
}

/// File name of a workload's trace. Ids hold exactly one `:` and slugs never
/// contain `--`, so the `:` is written as `--`.
pub fn trace_file_name(workload_id: &str) -> String {
    format!("{}.csv", workload_id.replacen(':', "--", 1))
}

/// Inverse of [`trace_file_name`]; `None` for anything else.
pub fn workload_id_from_file_name(name: &str) -> Option<String> {
    let stem = name.strip_suffix(".csv")?;
    let (citation, task) = stem.split_once("--")?;
    if citation.is_empty() || task.is_empty() || task.contains("--") {
        return None;
    }
    Some(format!("{citation}:{task}"))
}

#[derive(Debug, Error)]
pub enum TraceDirError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Trace { path: PathBuf, source: TraceError },
    #[error("{0}: trace file names must look like `<citation>--<task>.csv`")]
    BadFileName(PathBuf),
}

/// Loads every `*.csv` in `dir`, sorted by file name.
pub fn load_trace_dir(dir: impl AsRef<Path>) -> Result<Vec<PowerTrace>, TraceDirError> {
    let dir = dir.as_ref();
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| TraceDirError::Io { path, source }
    };
    let mut paths = Vec::new();
    for item in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = item.map_err(io_err(dir))?.path();
        if path.extension().is_some_and(|e| e == "csv") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            let id = workload_id_from_file_name(name).ok_or_else(|| TraceDirError::BadFileName(path.clone()))?;
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            parse_trace(id, &text).map_err(|source| TraceDirError::Trace { path, source })
        })
        .collect()
}

/// Bin `i` covers `[i * p_max / n_bins, (i + 1) * p_max / n_bins)`; the last bin
/// is closed above and also absorbs samples above `p_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinningConfig {
    pub n_bins: usize,
    pub p_max: f64,
}

impl BinningConfig {
    pub fn new(n_bins: usize, p_max: f64) -> Result<Self, TraceError> {
        if n_bins < 2 {
            return Err(TraceError::TooFewBins(n_bins));
        }
        if !(p_max.is_finite() && p_max > 0.0) {
            return Err(TraceError::InvalidPowerCeiling(p_max));
        }
        Ok(BinningConfig { n_bins, p_max })
    }

    /// Uses the maximum power observed across `traces` as the ceiling.
    pub fn fitted<'a>(n_bins: usize, traces: impl IntoIterator<Item = &'a PowerTrace>) -> Result<Self, TraceError> {
        let p_max = traces.into_iter().map(PowerTrace::max_power).fold(0.0, f64::max);
        BinningConfig::new(n_bins, p_max)
    }

    pub fn bin_of(&self, power_w: f64) -> usize {
        let scaled = power_w * self.n_bins as f64 / self.p_max;
        (scaled.floor() as usize).min(self.n_bins - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub workload_id: String,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(workload_id: impl Into<String>, values: Vec<f64>) -> Self {
        FeatureVector { workload_id: workload_id.into(), values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Appends extra axes (for example rubric scores scaled to `[0, 1]`).
    pub fn extended(&self, axes: impl IntoIterator<Item = f64>) -> FeatureVector {
        let mut values = self.values.clone();
        values.extend(axes);
        FeatureVector { workload_id: self.workload_id.clone(), values }
    }
}

/// Normalized power histogram of a trace.
pub fn featurize(trace: &PowerTrace, cfg: &BinningConfig) -> Result<FeatureVector, TraceError> {
    let cfg = BinningConfig::new(cfg.n_bins, cfg.p_max)?;
    let mut counts = vec![0u64; cfg.n_bins];
    let mut clamped = 0usize;
    for s in trace.samples() {
        if s.power_w > cfg.p_max {
            clamped += 1;
        }
        counts[cfg.bin_of(s.power_w)] += 1;
    }
    if clamped > 0 {
        log::warn!(
            "{}: {} sample(s) above p_max {} W clamped into the top bin",
            trace.workload_id(),
            clamped,
            cfg.p_max
        );
    }
    let total = trace.samples().len() as f64;
    let values = counts.into_iter().map(|c| c as f64 / total).collect();
    Ok(FeatureVector::new(trace.workload_id(), values))
}
