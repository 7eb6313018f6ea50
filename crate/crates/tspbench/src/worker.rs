// SPDX-License-Identifier: Apache-2.0

//! Worker side of the message-passing protocol.

use std::io::{self, BufRead, Write};

use tspbench_core::{CostMatrix, SolveResult, WorkRange};

use crate::backend::{local_ranges, scan_ranges};
use crate::protocol::{self, Message};
use crate::{Error, Result};

/// Answers tasks from `input` until a shutdown message or end of stream.
///
/// A task that cannot be run is answered with an error message and the
/// loop continues. A message that violates the protocol is answered with
/// an error message and ends the loop with `Err`.
pub fn serve<R: BufRead, W: Write>(mut input: R, mut output: W) -> Result<()> {
    let reply = |out: &mut W, msg: &Message| {
        protocol::send(out, msg).map_err(|e| Error::Execution(format!("cannot write reply: {e}")))
    };
    loop {
        let msg = match protocol::recv(&mut input) {
            Ok(Some(msg)) => msg,
            Ok(None) => return Ok(()),
            Err(e) => {
                reply(
                    &mut output,
                    &Message::Error {
                        message: e.to_string(),
                    },
                )?;
                return Err(e);
            }
        };
        match msg {
            Message::Task {
                n,
                matrix,
                start,
                end,
                threads,
            } => {
                let answer = match run_task(n, &matrix, start, end, threads) {
                    Ok(r) => Message::Result {
                        cost: r.cost,
                        path: r.path,
                        evaluated: r.evaluated,
                    },
                    Err(e) => Message::Error {
                        message: e.to_string(),
                    },
                };
                reply(&mut output, &answer)?;
            }
            Message::Shutdown => return Ok(()),
            other => {
                let e = Error::Protocol(format!("worker cannot handle {}", other.encode()));
                reply(
                    &mut output,
                    &Message::Error {
                        message: e.to_string(),
                    },
                )?;
                return Err(e);
            }
        }
    }
}

fn run_task(
    n: usize,
    rows: &[Vec<u64>],
    start: u128,
    end: u128,
    threads: usize,
) -> Result<SolveResult> {
    if rows.len() != n {
        return Err(Error::Validation(format!(
            "task declares n = {n} but carries {} rows",
            rows.len()
        )));
    }
    if threads == 0 {
        return Err(Error::Validation("task asks for zero threads".into()));
    }
    let matrix = CostMatrix::from_rows(rows)?;
    let range = WorkRange::new(start, end)?;
    if range.end() > matrix.tour_count() {
        return Err(tspbench_core::Error::IndexOutOfRange {
            index: end,
            bound: matrix.tour_count(),
        }
        .into());
    }
    let reports = scan_ranges(&matrix, &local_ranges(range, threads)?)?;
    Ok(reports
        .into_iter()
        .map(|r| r.local_best)
        .fold(SolveResult::empty(), SolveResult::merge))
}

/// Worker-mode entry point on the process's standard streams; returns the exit code.
pub fn run_stdio() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    match serve(stdin.lock(), stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tspbench worker: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(input: &str) -> (Result<()>, Vec<Message>) {
        let mut out = Vec::new();
        let res = serve(input.as_bytes(), &mut out);
        let replies = String::from_utf8(out)
            .unwrap()
            .lines()
            .map(|l| Message::decode(l).unwrap())
            .collect();
        (res, replies)
    }

    const TASK: &str = r#"{"v":1,"type":"task","n":4,"matrix":[[0,10,15,20],[10,0,35,25],[15,35,0,30],[20,25,30,0]],"start":"3","end":"6","threads":2}"#;

    #[test]
    fn answers_tasks_until_shutdown() {
        let input = format!("{TASK}\n{TASK}\n{{\"v\":1,\"type\":\"shutdown\"}}\n{TASK}\n");
        let (res, replies) = run(&input);
        assert!(res.is_ok());
        let expected = Message::Result {
            cost: 80,
            path: vec![0, 2, 3, 1, 0],
            evaluated: 3,
        };
        assert_eq!(replies, vec![expected.clone(), expected]);
    }

    #[test]
    fn bad_task_yields_error_and_continues() {
        let out_of_range = TASK.replace(r#""end":"6""#, r#""end":"7""#);
        let (res, replies) = run(&format!("{out_of_range}\n{TASK}\n"));
        assert!(res.is_ok());
        assert!(matches!(&replies[0], Message::Error { .. }));
        assert!(matches!(&replies[1], Message::Result { cost: 80, .. }));
    }

    #[test]
    fn wrong_version_ends_loop() {
        let v2 = TASK.replace(r#""v":1"#, r#""v":2"#);
        let (res, replies) = run(&format!("{v2}\n{TASK}\n"));
        assert!(matches!(res, Err(Error::Protocol(_))));
        assert_eq!(replies.len(), 1);
        match &replies[0] {
            Message::Error { message } => assert!(message.contains("version"), "{message}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn end_of_stream_is_clean() {
        assert!(run("").0.is_ok());
    }
}
