// SPDX-License-Identifier: Apache-2.0

//! Parallel-scaling metrics: speedup, efficiency and the Karp-Flatt
//! experimentally determined serial fraction.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::Error;

/// `t_serial / t_parallel`.
pub fn speedup(t_serial: f64, t_parallel: f64) -> Result<f64, Error> {
    if !(t_serial > 0.0 && t_parallel > 0.0) {
        return Err(Error::InvalidMetric("times must be positive"));
    }
    Ok(t_serial / t_parallel)
}

/// `psi / p`.
pub fn efficiency(psi: f64, p: usize) -> Result<f64, Error> {
    if psi.is_nan() || psi <= 0.0 {
        return Err(Error::InvalidMetric("speedup must be positive"));
    }
    if p == 0 {
        return Err(Error::InvalidMetric("p must be at least 1"));
    }
    Ok(psi / p as f64)
}

/// Karp-Flatt serial fraction `(1/psi - 1/p) / (1 - 1/p)`.
///
/// Zero for perfectly linear speedup, one when nothing was gained.
/// Undefined for `p < 2`.
pub fn karp_flatt(psi: f64, p: usize) -> Result<f64, Error> {
    if psi.is_nan() || psi <= 0.0 {
        return Err(Error::InvalidMetric("speedup must be positive"));
    }
    if p < 2 {
        return Err(Error::InvalidMetric("Karp-Flatt needs p >= 2"));
    }
    let inv_p = 1.0 / p as f64;
    Ok((1.0 / psi - inv_p) / (1.0 - inv_p))
}

/// Wall times of repeated runs of one configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimingRecord {
    /// Backend label, e.g. `threads:4`.
    pub backend: String,
    /// City count.
    pub n: usize,
    /// Parallel elements.
    pub p: usize,
    /// Seconds per timed run, in execution order.
    pub runs: Vec<f64>,
    /// Arithmetic mean of `runs`; drives the metrics.
    pub mean_seconds: f64,
    /// Fastest run.
    pub min_seconds: f64,
    /// Median run.
    pub median_seconds: f64,
}

impl TimingRecord {
    /// Summarises `runs`, which must be non-empty and strictly positive.
    pub fn new(
        backend: impl Into<String>,
        n: usize,
        p: usize,
        runs: Vec<f64>,
    ) -> Result<Self, Error> {
        if runs.is_empty() {
            return Err(Error::InvalidMetric("timing record needs at least one run"));
        }
        if runs
            .iter()
            .any(|&t| t.is_nan() || t <= 0.0 || !t.is_finite())
        {
            return Err(Error::InvalidMetric(
                "run times must be positive and finite",
            ));
        }
        if p == 0 {
            return Err(Error::InvalidMetric("p must be at least 1"));
        }
        let mean_seconds = runs.iter().sum::<f64>() / runs.len() as f64;
        let mut sorted = runs.clone();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median_seconds = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        };
        Ok(TimingRecord {
            backend: backend.into(),
            n,
            p,
            min_seconds: sorted[0],
            runs,
            mean_seconds,
            median_seconds,
        })
    }
}

/// Speedup, efficiency and serial fraction of one configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricsRow {
    /// Backend label.
    pub backend: String,
    /// City count.
    pub n: usize,
    /// Parallel elements.
    pub p: usize,
    /// Mean parallel wall time.
    pub mean_seconds: f64,
    /// Serial mean time over `mean_seconds`.
    pub speedup: f64,
    /// `speedup / p`.
    pub efficiency: f64,
    /// Absent for `p == 1`.
    pub karp_flatt: Option<f64>,
}

impl MetricsRow {
    /// Metrics of `record` against a serial mean time.
    pub fn from_record(record: &TimingRecord, serial_seconds: f64) -> Result<Self, Error> {
        let psi = speedup(serial_seconds, record.mean_seconds)?;
        let karp_flatt = if record.p >= 2 {
            Some(karp_flatt(psi, record.p)?)
        } else {
            None
        };
        Ok(MetricsRow {
            backend: record.backend.clone(),
            n: record.n,
            p: record.p,
            mean_seconds: record.mean_seconds,
            speedup: psi,
            efficiency: efficiency(psi, record.p)?,
            karp_flatt,
        })
    }
}

/// One [`MetricsRow`] per record, sorted by `(backend, n, p)`.
///
/// `serial_baseline` maps each city count to its serial mean time.
pub fn build_metrics_table(
    records: &[TimingRecord],
    serial_baseline: &BTreeMap<usize, f64>,
) -> Result<Vec<MetricsRow>, Error> {
    let mut rows = records
        .iter()
        .map(|r| {
            let base = serial_baseline
                .get(&r.n)
                .ok_or(Error::MissingBaseline(r.n))?;
            MetricsRow::from_record(r, *base)
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| (&a.backend, a.n, a.p).cmp(&(&b.backend, b.n, b.p)));
    Ok(rows)
}
