// SPDX-License-Identifier: Apache-2.0

//! Benchmark plans and reports in JSON and CSV.
//!
//! JSON keeps full `f64` precision and round-trips byte for byte. CSV is
//! for plotting: seconds are printed with 9 decimals, speedup, efficiency
//! and Karp-Flatt with 3, and an absent Karp-Flatt value (p = 1) is an
//! empty field.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tspbench_core::metrics::{build_metrics_table, MetricsRow, TimingRecord};
use tspbench_core::MAX_CITIES;

use crate::backend::BackendSpec;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

pub const RAW_CSV_HEADER: &str = "backend,n,p,run_index,seconds";
pub const METRICS_CSV_HEADER: &str = "backend,n,p,mean_seconds,speedup,efficiency,karp_flatt";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchPlan {
    pub n_values: Vec<usize>,
    pub backends: Vec<BackendSpec>,
    pub repetitions: usize,
    pub warmup: usize,
    pub seed: u64,
    /// Generate symmetric instances.
    pub symmetric: bool,
}

impl Default for BenchPlan {
    fn default() -> Self {
        BenchPlan {
            n_values: (8..=12).collect(),
            backends: vec![
                BackendSpec::Serial,
                BackendSpec::SharedMemory { threads: 2 },
                BackendSpec::SharedMemory { threads: 4 },
                BackendSpec::MessagePassing { processes: 2 },
                BackendSpec::MessagePassing { processes: 4 },
            ],
            repetitions: 5,
            warmup: 1,
            seed: 42,
            symmetric: true,
        }
    }
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Validation("repetitions must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Validation("no city counts to benchmark".into()));
        }
        if let Some(n) = self
            .n_values
            .iter()
            .find(|n| !(2..=MAX_CITIES).contains(*n))
        {
            return Err(Error::Validation(format!(
                "city count {n} outside 2..={MAX_CITIES}"
            )));
        }
        Ok(())
    }

    /// Backends in run order: serial first, duplicates dropped.
    pub fn effective_backends(&self) -> Vec<BackendSpec> {
        let mut out = vec![BackendSpec::Serial];
        for b in &self.backends {
            if !out.contains(b) {
                out.push(*b);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: String,
    pub plan: BenchPlan,
    /// Free-form host description.
    pub environment: String,
    pub records: Vec<TimingRecord>,
    pub metrics: Vec<MetricsRow>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: ReportFile = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("malformed report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported report schema version {:?}",
                report.schema_version
            )));
        }
        Ok(report)
    }

    /// Metrics recomputed from the timing records, using the serial
    /// records as baseline.
    pub fn recompute_metrics(&self) -> Result<Vec<MetricsRow>> {
        let baseline: BTreeMap<usize, f64> = self
            .records
            .iter()
            .filter(|r| r.backend == BackendSpec::Serial.to_string())
            .map(|r| (r.n, r.mean_seconds))
            .collect();
        build_metrics_table(&self.records, &baseline).map_err(|e| match e {
            tspbench_core::Error::MissingBaseline(n) => {
                Error::Validation(format!("report has no serial record for n = {n}"))
            }
            other => other.into(),
        })
    }

    /// One row per timed run.
    pub fn raw_csv(&self) -> String {
        let mut out = format!("{RAW_CSV_HEADER}\n");
        for r in &self.records {
            for (i, t) in r.runs.iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{},{:.9}", r.backend, r.n, r.p, i, t);
            }
        }
        out
    }
}

pub fn metrics_csv(rows: &[MetricsRow]) -> String {
    let mut out = format!("{METRICS_CSV_HEADER}\n");
    for r in rows {
        let kf = r.karp_flatt.map(|e| format!("{e:.3}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{:.9},{:.3},{:.3},{}",
            r.backend, r.n, r.p, r.mean_seconds, r.speedup, r.efficiency, kf
        );
    }
    out
}

/// Short description of the host for the report.
pub fn environment_note() -> String {
    let cpus = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    format!(
        "{}-{}, {} logical cpus, tspbench {}",
        std::env::consts::OS,
        std::env::consts::ARCH,
        cpus,
        env!("CARGO_PKG_VERSION")
    )
}
