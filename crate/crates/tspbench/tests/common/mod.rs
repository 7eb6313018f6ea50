// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::io::{BufReader, PipeReader, PipeWriter};
use std::thread::{self, JoinHandle};

use tspbench::backend::{LineLink, WorkerCommand};
use tspbench::core::CostMatrix;

pub type PipeLink = LineLink<BufReader<PipeReader>, PipeWriter>;

pub fn worker_cmd() -> WorkerCommand {
    WorkerCommand::new(env!("CARGO_BIN_EXE_tspbench"))
}

pub fn textbook() -> CostMatrix {
    CostMatrix::from_rows(&[
        [0, 10, 15, 20],
        [10, 0, 35, 25],
        [15, 35, 0, 30],
        [20, 25, 30, 0],
    ])
    .unwrap()
}

pub fn uniform(n: usize) -> CostMatrix {
    let costs = (0..n * n).map(|k| u64::from(k / n != k % n)).collect();
    CostMatrix::from_flat(n, costs).unwrap()
}

/// In-process worker on OS pipes; `script` plays the worker side.
pub fn fake_worker<F, T>(script: F) -> (PipeLink, JoinHandle<T>)
where
    F: FnOnce(BufReader<PipeReader>, PipeWriter) -> T + Send + 'static,
    T: Send + 'static,
{
    let (to_worker_r, to_worker_w) = std::io::pipe().unwrap();
    let (from_worker_r, from_worker_w) = std::io::pipe().unwrap();
    let handle = thread::spawn(move || script(BufReader::new(to_worker_r), from_worker_w));
    (
        LineLink::new(BufReader::new(from_worker_r), to_worker_w),
        handle,
    )
}
