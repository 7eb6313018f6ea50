// SPDX-License-Identifier: Apache-2.0

use std::thread;

use tspbench_core::{partition, solve_range, CostMatrix, WorkRange};

use super::{Execution, WorkerReport};
use crate::{Error, Result};

/// Splits `range` among `threads` workers with the same quotient/remainder
/// rule as a flat partition.
pub fn local_ranges(range: WorkRange, threads: usize) -> Result<Vec<WorkRange>> {
    Ok(partition(range.len(), threads)?
        .into_iter()
        .map(|r| r.offset(range.start()))
        .collect())
}

/// Scans each range on its own scoped thread; the matrix is shared
/// read-only. Reports come back in range order.
pub fn scan_ranges(matrix: &CostMatrix, ranges: &[WorkRange]) -> Result<Vec<WorkerReport>> {
    thread::scope(|scope| {
        let mut handles = Vec::with_capacity(ranges.len());
        for (worker_id, &range) in ranges.iter().enumerate() {
            let handle = thread::Builder::new()
                .name(format!("tsp-worker-{worker_id}"))
                .spawn_scoped(scope, move || solve_range(matrix, range))
                .map_err(|e| {
                    Error::Execution(format!("cannot spawn worker thread {worker_id}: {e}"))
                })?;
            handles.push((worker_id, range, handle));
        }
        handles
            .into_iter()
            .map(|(worker_id, range, handle)| {
                let local_best = handle.join().map_err(|_| {
                    Error::Execution(format!("worker thread {worker_id} panicked"))
                })??;
                Ok(WorkerReport {
                    worker_id,
                    range,
                    local_best,
                })
            })
            .collect()
    })
}

/// Shared-memory backend: `threads` workers over one flat partition.
pub fn solve_shared_memory(matrix: &CostMatrix, threads: usize) -> Result<Execution> {
    let ranges = partition(matrix.tour_count(), threads)?;
    let reports = scan_ranges(matrix, &ranges)?;
    Ok(Execution::from_reports(reports, ranges))
}
