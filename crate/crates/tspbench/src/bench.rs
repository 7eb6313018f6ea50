// SPDX-License-Identifier: Apache-2.0

//! Benchmark sweeps: warm-up, timed repetitions, correctness checks
//! against the serial answer, and metrics.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use tspbench_core::instance::generate_instance;
use tspbench_core::metrics::{build_metrics_table, TimingRecord};
use tspbench_core::{solve_serial, CostMatrix, SolveResult};

use crate::backend::{execute, BackendSpec, WorkerCommand};
use crate::report::{environment_note, BenchPlan, ReportFile, SCHEMA_VERSION};
use crate::{Error, Result};

/// Something that can run a backend on an instance.
pub trait Solver {
    fn solve(&self, matrix: &CostMatrix, spec: BackendSpec) -> Result<SolveResult>;
}

/// The real backends.
#[derive(Debug, Clone)]
pub struct Backends {
    pub worker: WorkerCommand,
}

impl Solver for Backends {
    fn solve(&self, matrix: &CostMatrix, spec: BackendSpec) -> Result<SolveResult> {
        execute(matrix, spec, &self.worker).map(|e| e.result)
    }
}

// Instant differences can read zero on coarse clocks for tiny instances.
const CLOCK_FLOOR: Duration = Duration::from_nanos(1);

/// Runs `plan` and assembles the report.
///
/// Every run, warm-up included, must reproduce the serial cost and path
/// exactly; a mismatch aborts the sweep. Timings cover the full solve,
/// including partitioning and worker start-up, but not instance generation.
pub fn run_bench<S: Solver + ?Sized>(plan: &BenchPlan, solver: &S) -> Result<ReportFile> {
    plan.validate()?;
    let backends = plan.effective_backends();
    let mut records = Vec::new();
    let mut baseline = BTreeMap::new();

    for &n in &plan.n_values {
        let matrix = generate_instance(n, plan.seed, plan.symmetric)?;
        let reference = solve_serial(&matrix);
        for &spec in &backends {
            let check = |result: &SolveResult, run: &str| {
                if result.cost != reference.cost || result.path != reference.path {
                    return Err(Error::Correctness(format!(
                        "{spec} on n = {n} ({run}) returned cost {} path {:?}, serial gives cost {} path {:?}",
                        result.cost, result.path, reference.cost, reference.path
                    )));
                }
                Ok(())
            };
            for w in 0..plan.warmup {
                check(&solver.solve(&matrix, spec)?, &format!("warm-up {w}"))?;
            }
            let mut runs = Vec::with_capacity(plan.repetitions);
            for k in 0..plan.repetitions {
                let started = Instant::now();
                let result = solver.solve(&matrix, spec)?;
                let elapsed = started.elapsed().max(CLOCK_FLOOR);
                check(&result, &format!("run {k}"))?;
                runs.push(elapsed.as_secs_f64());
            }
            let record = TimingRecord::new(spec.to_string(), n, spec.elements(), runs)?;
            if spec == BackendSpec::Serial {
                baseline.insert(n, record.mean_seconds);
            }
            records.push(record);
        }
    }

    let metrics = build_metrics_table(&records, &baseline)?;
    Ok(ReportFile {
        schema_version: SCHEMA_VERSION.into(),
        plan: plan.clone(),
        environment: environment_note(),
        records,
        metrics,
    })
}
