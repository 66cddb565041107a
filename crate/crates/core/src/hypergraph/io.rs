//! Plain-text instance format.
//!
//! ```text
//! # optional comments
//! k n
//! v1 v2 ... vk
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. The writer lists edges sorted
//! lexicographically with sorted vertices, so equal graphs serialize to equal bytes.

use std::fmt::Write as _;
use std::path::Path;

use super::KGraph;
use crate::error::{Error, Result};

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<KGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `k n` header".into(),
    })?;
    let header = numbers(header, lineno)?;
    let [k, n] = header[..] else {
        return Err(Error::Parse {
            line: lineno,
            msg: "header must be exactly `k n`".into(),
        });
    };

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let e = numbers(line, lineno)?;
        if e.len() != k {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {k} vertices, found {}", e.len()),
            });
        }
        edges.push(e);
    }
    KGraph::new(k, n, edges).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<KGraph> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(h: &KGraph) -> String {
    let mut out = format!("{} {}\n", h.k(), h.n());
    for e in h.edge_keys() {
        let mut first = true;
        for v in e.iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}
