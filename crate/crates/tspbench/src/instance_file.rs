// SPDX-License-Identifier: Apache-2.0

//! Plain-text instance files.
//!
//! ```text
//! 4
//! 0,10,15,20
//! 10,0,35,25
//! 15,35,0,30
//! 20,25,30,0
//! ```
//!
//! Line 1 is the city count `n`, followed by `n` rows of `n` comma-separated
//! non-negative integers. Blank trailing lines and surrounding whitespace
//! are ignored.

use std::fs;
use std::path::Path;

use tspbench_core::CostMatrix;

use crate::{Error, Result};

/// Parses the text form of an instance.
pub fn parse_instance(text: &str) -> Result<CostMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| invalid(1, "empty instance file"))?;
    let n: usize = header.parse().map_err(|_| {
        invalid(
            1,
            &format!("city count {header:?} is not a non-negative integer"),
        )
    })?;

    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if rows.len() == n {
            return Err(invalid(lineno, "more rows than the declared city count"));
        }
        let row = line
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                if !cell.bytes().all(|b| b.is_ascii_digit()) || cell.is_empty() {
                    return Err(invalid(
                        lineno,
                        &format!("{cell:?} is not a non-negative integer"),
                    ));
                }
                cell.parse::<u64>()
                    .map_err(|_| invalid(lineno, &format!("{cell:?} does not fit 64 bits")))
            })
            .collect::<Result<Vec<u64>>>()?;
        if row.len() != n {
            return Err(invalid(
                lineno,
                &format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Validation(format!(
            "instance declares {n} cities but has {} rows",
            rows.len()
        )));
    }
    Ok(CostMatrix::from_rows(&rows)?)
}

fn invalid(line: usize, msg: &str) -> Error {
    Error::Validation(format!("instance line {line}: {msg}"))
}

/// Text form of an instance; `parse_instance` inverts it.
pub fn format_instance(matrix: &CostMatrix) -> String {
    let mut out = format!("{}\n", matrix.n());
    for row in matrix.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn read_instance(path: &Path) -> Result<CostMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

pub fn write_instance(path: &Path, matrix: &CostMatrix) -> Result<()> {
    fs::write(path, format_instance(matrix))
        .map_err(|e| Error::io(format!("cannot write {}", path.display()), e))
}
