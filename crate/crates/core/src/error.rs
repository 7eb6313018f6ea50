// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use core::fmt;

use crate::perm::PermIndex;

/// Errors raised by the permutation engine, the solver and the metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `n!` does not fit in a [`PermIndex`].
    FactorialOverflow(usize),
    /// A permutation index or range end lies past the permutation count.
    IndexOutOfRange {
        /// Offending index.
        index: PermIndex,
        /// Number of permutations available.
        bound: PermIndex,
    },
    /// A range with `start > end`.
    InvertedRange {
        /// Inclusive start.
        start: PermIndex,
        /// Exclusive end.
        end: PermIndex,
    },
    /// A sequence contains the same label twice.
    DuplicateLabel,
    /// Partitioning among zero workers.
    ZeroWorkers,
    /// A city label that does not belong to the instance.
    LabelOutOfRange {
        /// The label.
        label: usize,
        /// Number of cities.
        n: usize,
    },
    /// A malformed cost matrix or tour.
    InvalidInstance(String),
    /// A metric input outside its domain.
    InvalidMetric(&'static str),
    /// No serial baseline time for this city count.
    MissingBaseline(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FactorialOverflow(n) => {
                write!(f, "{n}! does not fit in a 128-bit permutation index")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(
                    f,
                    "permutation index {index} out of range (count is {bound})"
                )
            }
            Error::InvertedRange { start, end } => {
                write!(f, "work range start {start} is past its end {end}")
            }
            Error::DuplicateLabel => f.write_str("permutation contains a duplicate label"),
            Error::ZeroWorkers => f.write_str("cannot partition among zero workers"),
            Error::LabelOutOfRange { label, n } => {
                write!(f, "city label {label} is not valid for a {n}-city instance")
            }
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::InvalidMetric(msg) => write!(f, "invalid metric input: {msg}"),
            Error::MissingBaseline(n) => write!(f, "no serial baseline for n = {n}"),
        }
    }
}

impl core::error::Error for Error {}
