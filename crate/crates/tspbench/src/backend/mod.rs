// SPDX-License-Identifier: Apache-2.0

//! Execution backends. Every backend splits `[0, (n-1)!)` with
//! [`tspbench_core::partition`] and merges the per-worker optima with the
//! canonical tie-break, so all of them return the serial answer exactly.

mod process;
mod shared;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tspbench_core::{solve_serial, CostMatrix, SolveResult, WorkRange};

pub use process::{
    coordinate, hybrid_assignment, solve_hybrid, solve_message_passing, ChildWorker, LineLink,
    WorkerCommand, WorkerLink, WORKER_BIN_ENV,
};
pub use shared::{local_ranges, scan_ranges, solve_shared_memory};

use crate::{Error, Result};

/// Which executor runs a solve, and with how many parallel elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BackendSpec {
    Serial,
    SharedMemory { threads: usize },
    MessagePassing { processes: usize },
    Hybrid { processes: usize, threads: usize },
}

impl BackendSpec {
    /// Total parallel elements `p`.
    pub fn elements(&self) -> usize {
        match *self {
            BackendSpec::Serial => 1,
            BackendSpec::SharedMemory { threads } => threads,
            BackendSpec::MessagePassing { processes } => processes,
            BackendSpec::Hybrid { processes, threads } => processes * threads,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            BackendSpec::Serial => true,
            BackendSpec::SharedMemory { threads } => threads >= 1,
            BackendSpec::MessagePassing { processes } => processes >= 1,
            BackendSpec::Hybrid { processes, threads } => processes >= 1 && threads >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Validation(format!(
                "backend {self} needs at least one thread and process"
            )))
        }
    }
}

/// Labels: `serial`, `threads:T`, `procs:P`, `hybrid:PxT`.
impl fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendSpec::Serial => f.write_str("serial"),
            BackendSpec::SharedMemory { threads } => write!(f, "threads:{threads}"),
            BackendSpec::MessagePassing { processes } => write!(f, "procs:{processes}"),
            BackendSpec::Hybrid { processes, threads } => write!(f, "hybrid:{processes}x{threads}"),
        }
    }
}

impl FromStr for BackendSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Validation(format!(
                "unknown backend {s:?} (expected serial, threads:T, procs:P or hybrid:PxT)"
            ))
        };
        let count = |v: &str| v.parse::<usize>().map_err(|_| bad());
        let spec = match s.trim().split_once(':') {
            None if s.trim() == "serial" => BackendSpec::Serial,
            Some(("threads", t)) => BackendSpec::SharedMemory { threads: count(t)? },
            Some(("procs", p)) => BackendSpec::MessagePassing {
                processes: count(p)?,
            },
            Some(("hybrid", pt)) => {
                let (p, t) = pt.split_once('x').ok_or_else(bad)?;
                BackendSpec::Hybrid {
                    processes: count(p)?,
                    threads: count(t)?,
                }
            }
            _ => return Err(bad()),
        };
        spec.validate()
    }
}

impl From<BackendSpec> for String {
    fn from(spec: BackendSpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for BackendSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Local optimum of one worker (thread or process).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkerReport {
    pub worker_id: usize,
    pub range: WorkRange,
    pub local_best: SolveResult,
}

/// Outcome of a backend run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    /// Reduced canonical optimum.
    pub result: SolveResult,
    /// One report per top-level worker: threads for shared memory,
    /// processes for message passing and hybrid.
    pub reports: Vec<WorkerReport>,
    /// Ranges scanned by the innermost parallel elements, in index order.
    pub assigned: Vec<WorkRange>,
}

impl Execution {
    pub(crate) fn from_reports(reports: Vec<WorkerReport>, assigned: Vec<WorkRange>) -> Self {
        let result = reports
            .iter()
            .map(|r| r.local_best.clone())
            .fold(SolveResult::empty(), SolveResult::merge);
        Execution {
            result,
            reports,
            assigned,
        }
    }
}

/// Runs `spec` on `matrix`. `worker` locates the executable for
/// process-based backends.
pub fn execute(
    matrix: &CostMatrix,
    spec: BackendSpec,
    worker: &WorkerCommand,
) -> Result<Execution> {
    match spec.validate()? {
        BackendSpec::Serial => {
            let result = solve_serial(matrix);
            let range = WorkRange::new(0, matrix.tour_count())?;
            let report = WorkerReport {
                worker_id: 0,
                range,
                local_best: result.clone(),
            };
            Ok(Execution {
                result,
                reports: vec![report],
                assigned: vec![range],
            })
        }
        BackendSpec::SharedMemory { threads } => solve_shared_memory(matrix, threads),
        BackendSpec::MessagePassing { processes } => {
            solve_message_passing(matrix, processes, worker)
        }
        BackendSpec::Hybrid { processes, threads } => {
            solve_hybrid(matrix, processes, threads, worker)
        }
    }
}
