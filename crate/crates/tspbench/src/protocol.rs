// SPDX-License-Identifier: Apache-2.0

//! Coordinator/worker wire protocol: line-delimited JSON, one message per
//! line, each carrying `"v":1`.
//!
//! Permutation indices travel as decimal strings since they can exceed
//! 64 bits.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tspbench_core::PermIndex;

use crate::{Error, Result};

pub const PROTOCOL_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Message {
    /// Coordinator → worker: scan `[start, end)` of `matrix` with `threads` threads.
    Task {
        n: usize,
        matrix: Vec<Vec<u64>>,
        #[serde(with = "decimal")]
        start: PermIndex,
        #[serde(with = "decimal")]
        end: PermIndex,
        threads: usize,
    },
    /// Worker → coordinator: best tour of the task's range.
    Result {
        cost: u64,
        path: Vec<usize>,
        #[serde(with = "decimal")]
        evaluated: PermIndex,
    },
    /// Worker → coordinator: the task could not be run.
    Error { message: String },
    /// Coordinator → worker: exit with status 0.
    Shutdown,
}

#[derive(Serialize)]
struct Envelope<'a> {
    v: u64,
    #[serde(flatten)]
    message: &'a Message,
}

impl Message {
    /// Single-line JSON encoding, without the trailing newline.
    pub fn encode(&self) -> String {
        serde_json::to_string(&Envelope {
            v: PROTOCOL_VERSION,
            message: self,
        })
        .expect("protocol messages always serialize")
    }

    /// Decodes one line, rejecting any version other than 1.
    pub fn decode(line: &str) -> Result<Message> {
        let value: Value = serde_json::from_str(line)
            .map_err(|e| Error::Protocol(format!("malformed message: {e}")))?;
        match value.get("v") {
            Some(Value::Number(v)) if v.as_u64() == Some(PROTOCOL_VERSION) => {}
            Some(v) => return Err(Error::Protocol(format!("unsupported protocol version {v}"))),
            None => return Err(Error::Protocol("message has no version field".into())),
        }
        Message::deserialize(value).map_err(|e| Error::Protocol(format!("malformed message: {e}")))
    }
}

/// Writes `msg` as one line and flushes.
pub fn send<W: Write>(out: &mut W, msg: &Message) -> std::io::Result<()> {
    let mut line = msg.encode();
    line.push('\n');
    out.write_all(line.as_bytes())?;
    out.flush()
}

/// Reads the next message; `Ok(None)` at end of stream.
pub fn recv<R: BufRead>(input: &mut R) -> Result<Option<Message>> {
    let mut line = String::new();
    loop {
        line.clear();
        let read = input
            .read_line(&mut line)
            .map_err(|e| Error::Protocol(format!("read failed: {e}")))?;
        if read == 0 {
            return Ok(None);
        }
        if !line.trim().is_empty() {
            return Message::decode(line.trim_end()).map(Some);
        }
    }
}

mod decimal {
    use serde::{de, Deserialize, Deserializer, Serializer};
    use tspbench_core::PermIndex;

    pub fn serialize<S: Serializer>(value: &PermIndex, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PermIndex, D::Error> {
        let text = String::deserialize(d)?;
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(de::Error::custom(format!(
                "{text:?} is not a decimal index"
            )));
        }
        text.parse()
            .map_err(|_| de::Error::custom(format!("{text:?} does not fit 128 bits")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodes_with_version_and_string_indices() {
        let task = Message::Task {
            n: 2,
            matrix: vec![vec![0, 7], vec![7, 0]],
            start: 0,
            end: 1,
            threads: 1,
        };
        assert_eq!(
            task.encode(),
            r#"{"v":1,"type":"task","n":2,"matrix":[[0,7],[7,0]],"start":"0","end":"1","threads":1}"#
        );
        assert_eq!(Message::Shutdown.encode(), r#"{"v":1,"type":"shutdown"}"#);
        let result = Message::Result {
            cost: 14,
            path: vec![0, 1, 0],
            evaluated: 1,
        };
        assert_eq!(
            result.encode(),
            r#"{"v":1,"type":"result","cost":14,"path":[0,1,0],"evaluated":"1"}"#
        );
        assert_eq!(Message::decode(&result.encode()).unwrap(), result);
    }

    #[test]
    fn indices_beyond_u64_are_exact() {
        let big = (1u128 << 100) + 12345;
        let line =
            format!(r#"{{"type":"result","v":1,"cost":3,"path":[0,1,0],"evaluated":"{big}"}}"#);
        match Message::decode(&line).unwrap() {
            Message::Result { evaluated, .. } => assert_eq!(evaluated, big),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_versions_and_indices() {
        for line in [
            r#"{"type":"shutdown"}"#,
            r#"{"v":2,"type":"shutdown"}"#,
            r#"{"v":"1","type":"shutdown"}"#,
            r#"{"v":1,"type":"result","cost":1,"path":[],"evaluated":7}"#,
            r#"{"v":1,"type":"result","cost":1,"path":[],"evaluated":"-7"}"#,
            r#"{"v":1,"type":"result","cost":1,"path":[],"evaluated":"+7"}"#,
            r#"{"v":1,"type":"result","cost":1,"path":[],"evaluated":"999999999999999999999999999999999999999999"}"#,
            r#"{"v":1,"type":"launch"}"#,
            "not json",
        ] {
            assert!(
                matches!(Message::decode(line), Err(Error::Protocol(_))),
                "{line}"
            );
        }
    }
}
