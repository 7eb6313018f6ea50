// SPDX-License-Identifier: Apache-2.0

//! Parallel executors, the coordinator/worker wire protocol, instance and
//! report files, and the benchmark harness around [`tspbench_core`].

pub mod backend;
pub mod bench;
mod error;
pub mod instance_file;
pub mod protocol;
pub mod report;
pub mod worker;

pub use error::{Error, Result};
pub use tspbench_core as core;
