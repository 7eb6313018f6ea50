// SPDX-License-Identifier: Apache-2.0

//! Message-passing and hybrid backends.
//!
//! The coordinator spawns one child per process element, each a copy of
//! the `tspbench` executable in `--worker` mode, and talks to it over its
//! stdin/stdout with [`crate::protocol`]. The coordinator itself scans no
//! permutations; it only distributes tasks and reduces results.

use std::env;
use std::ffi::OsString;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use tspbench_core::{partition, path_cost, CostMatrix, SolveResult, WorkRange, UNREACHED};

use super::{local_ranges, Execution, WorkerReport};
use crate::protocol::{self, Message};
use crate::{Error, Result};

/// Overrides the executable spawned for worker processes.
pub const WORKER_BIN_ENV: &str = "TSPBENCH_WORKER_BIN";

/// How to launch a worker process. `--worker` is appended to `args`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkerCommand {
    pub program: PathBuf,
    pub args: Vec<OsString>,
}

impl WorkerCommand {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        WorkerCommand {
            program: program.into(),
            args: Vec::new(),
        }
    }

    /// `$TSPBENCH_WORKER_BIN` if set, else the running executable.
    pub fn from_env() -> Result<Self> {
        if let Some(bin) = env::var_os(WORKER_BIN_ENV) {
            return Ok(WorkerCommand::new(bin));
        }
        let exe = env::current_exe()
            .map_err(|e| Error::Execution(format!("cannot locate own executable: {e}")))?;
        Ok(WorkerCommand::new(exe))
    }
}

/// Duplex message channel to one worker.
pub trait WorkerLink {
    fn send(&mut self, msg: &Message) -> Result<()>;
    /// Next message, or `None` once the worker closed its end.
    fn recv(&mut self) -> Result<Option<Message>>;
}

/// [`WorkerLink`] over any pair of byte streams.
pub struct LineLink<R, W> {
    reader: R,
    writer: W,
}

impl<R: BufRead, W: Write> LineLink<R, W> {
    pub fn new(reader: R, writer: W) -> Self {
        LineLink { reader, writer }
    }
}

impl<R: BufRead, W: Write> WorkerLink for LineLink<R, W> {
    fn send(&mut self, msg: &Message) -> Result<()> {
        protocol::send(&mut self.writer, msg)
            .map_err(|e| Error::Execution(format!("send failed: {e}")))
    }

    fn recv(&mut self) -> Result<Option<Message>> {
        protocol::recv(&mut self.reader)
    }
}

/// A spawned worker process. Killed on drop unless it exited cleanly.
pub struct ChildWorker {
    id: usize,
    child: Child,
    link: LineLink<BufReader<ChildStdout>, ChildStdin>,
    reaped: bool,
}

impl ChildWorker {
    pub fn spawn(command: &WorkerCommand, id: usize) -> Result<Self> {
        let mut child = Command::new(&command.program)
            .args(&command.args)
            .arg("--worker")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| {
                Error::Execution(format!(
                    "worker {id}: cannot spawn {}: {e}",
                    command.program.display()
                ))
            })?;
        let stdin = child.stdin.take().expect("stdin is piped");
        let stdout = child.stdout.take().expect("stdout is piped");
        Ok(ChildWorker {
            id,
            child,
            link: LineLink::new(BufReader::new(stdout), stdin),
            reaped: false,
        })
    }

    /// Waits for the worker to exit after a shutdown; non-zero status is an error.
    pub fn wait(mut self) -> Result<()> {
        let status = self
            .child
            .wait()
            .map_err(|e| Error::Execution(format!("worker {}: wait failed: {e}", self.id)))?;
        self.reaped = true;
        if status.success() {
            Ok(())
        } else {
            Err(Error::Execution(format!(
                "worker {} exited with {status}",
                self.id
            )))
        }
    }
}

impl WorkerLink for ChildWorker {
    fn send(&mut self, msg: &Message) -> Result<()> {
        self.link.send(msg)
    }

    fn recv(&mut self) -> Result<Option<Message>> {
        self.link.recv()
    }
}

impl Drop for ChildWorker {
    fn drop(&mut self) {
        if !self.reaped {
            let _ = self.child.kill();
            let _ = self.child.wait();
        }
    }
}

/// Sends task `i` to link `i`, collects every result, then shuts all
/// workers down. Any error, refusal or early exit aborts the whole solve.
pub fn coordinate<L: WorkerLink>(
    links: &mut [L],
    matrix: &CostMatrix,
    tasks: &[(WorkRange, usize)],
) -> Result<Vec<WorkerReport>> {
    assert_eq!(links.len(), tasks.len(), "one task per worker");
    let rows: Vec<Vec<u64>> = matrix.rows().map(<[u64]>::to_vec).collect();
    for (id, (link, &(range, threads))) in links.iter_mut().zip(tasks).enumerate() {
        let task = Message::Task {
            n: matrix.n(),
            matrix: rows.clone(),
            start: range.start(),
            end: range.end(),
            threads,
        };
        link.send(&task).map_err(|e| tag(id, e))?;
    }

    let mut reports = Vec::with_capacity(links.len());
    for (id, (link, &(range, _))) in links.iter_mut().zip(tasks).enumerate() {
        let local_best = match link.recv().map_err(|e| tag(id, e))? {
            Some(Message::Result {
                cost,
                path,
                evaluated,
            }) => check_result(
                matrix,
                range,
                SolveResult {
                    cost,
                    path,
                    evaluated,
                },
            )
            .map_err(|e| tag(id, e))?,
            Some(Message::Error { message }) => {
                return Err(Error::Execution(format!("worker {id} reported: {message}")))
            }
            Some(other) => {
                return Err(Error::Protocol(format!(
                    "worker {id}: expected a result, got {}",
                    other.encode()
                )))
            }
            None => {
                return Err(Error::Execution(format!(
                    "worker {id} exited without a result"
                )))
            }
        };
        reports.push(WorkerReport {
            worker_id: id,
            range,
            local_best,
        });
    }

    for (id, link) in links.iter_mut().enumerate() {
        link.send(&Message::Shutdown).map_err(|e| tag(id, e))?;
    }
    Ok(reports)
}

fn tag(id: usize, e: Error) -> Error {
    match e {
        Error::Protocol(m) => Error::Protocol(format!("worker {id}: {m}")),
        Error::Execution(m) if !m.starts_with("worker ") => {
            Error::Execution(format!("worker {id}: {m}"))
        }
        other => other,
    }
}

// Rejects results that are inconsistent with the task they answer.
fn check_result(matrix: &CostMatrix, range: WorkRange, r: SolveResult) -> Result<SolveResult> {
    if r.evaluated != range.len() {
        return Err(Error::Protocol(format!(
            "evaluated {} permutations, task had {}",
            r.evaluated,
            range.len()
        )));
    }
    if range.is_empty() {
        if r.path.is_empty() && r.cost == UNREACHED {
            return Ok(r);
        }
        return Err(Error::Protocol(
            "non-empty result for an empty range".into(),
        ));
    }
    let n = matrix.n();
    let well_formed = r.path.len() == n + 1 && r.path[0] == 0 && r.path[n] == 0;
    let cost = if well_formed {
        path_cost(&r.path[1..n], matrix).ok()
    } else {
        None
    };
    match cost {
        Some(c) if c == r.cost => Ok(r),
        _ => Err(Error::Protocol(format!(
            "result path {:?} / cost {} is not a valid tour",
            r.path, r.cost
        ))),
    }
}

/// Flat partition into `processes * threads` ranges, grouped per process.
pub fn hybrid_assignment(
    total: tspbench_core::PermIndex,
    processes: usize,
    threads: usize,
) -> Result<Vec<Vec<WorkRange>>> {
    if processes == 0 || threads == 0 {
        return Err(Error::Validation(
            "hybrid needs at least one process and one thread".into(),
        ));
    }
    Ok(partition(total, processes * threads)?
        .chunks(threads)
        .map(<[WorkRange]>::to_vec)
        .collect())
}

fn span(group: &[WorkRange]) -> WorkRange {
    WorkRange::new(group[0].start(), group[group.len() - 1].end()).expect("groups are contiguous")
}

fn run_processes(
    matrix: &CostMatrix,
    tasks: &[(WorkRange, usize)],
    command: &WorkerCommand,
) -> Result<Vec<WorkerReport>> {
    let mut workers = Vec::with_capacity(tasks.len());
    for id in 0..tasks.len() {
        workers.push(ChildWorker::spawn(command, id)?);
    }
    let reports = coordinate(&mut workers, matrix, tasks)?;
    for worker in workers {
        worker.wait()?;
    }
    Ok(reports)
}

/// Message-passing backend: one single-threaded worker process per range.
pub fn solve_message_passing(
    matrix: &CostMatrix,
    processes: usize,
    command: &WorkerCommand,
) -> Result<Execution> {
    let ranges = partition(matrix.tour_count(), processes)?;
    let tasks: Vec<_> = ranges.iter().map(|&r| (r, 1)).collect();
    let reports = run_processes(matrix, &tasks, command)?;
    Ok(Execution::from_reports(reports, ranges))
}

/// Hybrid backend: `processes` worker processes, each scanning its share
/// of the flat partition on `threads` threads.
pub fn solve_hybrid(
    matrix: &CostMatrix,
    processes: usize,
    threads: usize,
    command: &WorkerCommand,
) -> Result<Execution> {
    let groups = hybrid_assignment(matrix.tour_count(), processes, threads)?;
    let tasks: Vec<_> = groups.iter().map(|g| (span(g), threads)).collect();
    let mut assigned = Vec::with_capacity(processes * threads);
    for &(range, t) in &tasks {
        // the worker splits its span with the same rule
        assigned.extend(local_ranges(range, t)?);
    }
    let reports = run_processes(matrix, &tasks, command)?;
    Ok(Execution::from_reports(reports, assigned))
}
