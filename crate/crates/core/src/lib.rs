// SPDX-License-Identifier: Apache-2.0

//! Exact brute-force travelling salesman solving over lexicographic
//! permutation ranges, plus the speedup / efficiency / Karp-Flatt metrics
//! used to analyse parallel runs.
//!
//! City `0` is the fixed start and end of every tour. A tour is identified
//! by the ordering of cities `1..n`, and every ordering by its lexicographic
//! index in `0..(n-1)!`. Parallel executors split that index space with
//! [`perm::partition`] and merge per-worker optima with
//! [`SolveResult::merge`].
//!
//! The crate is `no_std` and only needs `alloc`. Threads, processes and file
//! formats live in the `tspbench` companion crate.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

mod error;
pub mod instance;
pub mod metrics;
pub mod perm;
pub mod tsp;

pub use error::Error;
pub use perm::{factorial, next_permutation, partition, rank, unrank, PermIndex, WorkRange};
pub use tsp::{
    path_cost, solve_range, solve_serial, CostMatrix, SolveResult, TourPermutation, MAX_CITIES,
    MAX_COST, UNREACHED,
};
