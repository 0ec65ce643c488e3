//! Plain-text matrix files.
//!
//! ```text
//! # optional comments
//! 3 3
//! #label r {0}
//! #label c {0,1}
//! 1 1 0
//! 1 0 1
//! 0 1 1
//! ```
//!
//! `#label r` / `#label c` lines give row and column labels in order; when
//! present they must cover every row (column).

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use snflab_core::IntegerMatrix;

use crate::error::{LabError, LabResult};

fn bad(line: usize, message: impl Into<String>) -> LabError {
    LabError::MatrixFormat { line, message: message.into() }
}

pub fn parse_matrix(text: &str) -> LabResult<IntegerMatrix> {
    let mut shape: Option<(usize, usize)> = None;
    let mut entries: Vec<BigInt> = Vec::new();
    let mut row_labels = Vec::new();
    let mut col_labels = Vec::new();
    let mut rows_seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#label") {
            let rest = rest.trim_start();
            let (axis, label) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let label = label.trim();
            if label.is_empty() {
                return Err(bad(lineno, "empty label"));
            }
            match axis {
                "r" => row_labels.push(label.to_string()),
                "c" => col_labels.push(label.to_string()),
                other => return Err(bad(lineno, format!("label axis must be r or c, got {other:?}"))),
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let Some((rows, cols)) = shape else {
            let dims: Vec<&str> = line.split_whitespace().collect();
            let [r, c] = dims.as_slice() else {
                return Err(bad(lineno, "expected header \"rows cols\""));
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(lineno, format!("bad dimension {s:?}")));
            shape = Some((parse(r)?, parse(c)?));
            continue;
        };
        if rows_seen == rows {
            return Err(bad(lineno, format!("more than {rows} rows")));
        }
        let before = entries.len();
        for tok in line.split_whitespace() {
            let v: BigInt = tok.parse().map_err(|_| bad(lineno, format!("bad integer {tok:?}")))?;
            entries.push(v);
        }
        if entries.len() - before != cols {
            return Err(bad(lineno, format!("expected {cols} entries, found {}", entries.len() - before)));
        }
        rows_seen += 1;
    }
    let (rows, cols) = shape.ok_or_else(|| bad(0, "missing header"))?;
    if rows_seen != rows && !(cols == 0 && rows_seen == 0) {
        return Err(bad(0, format!("expected {rows} rows, found {rows_seen}")));
    }
    let labels = |v: Vec<String>| (!v.is_empty()).then_some(v);
    let m = IntegerMatrix::new(rows, cols, entries)?;
    Ok(m.with_labels(labels(row_labels), labels(col_labels))?)
}

pub fn format_matrix(m: &IntegerMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for l in m.row_labels().unwrap_or_default() {
        let _ = writeln!(s, "#label r {l}");
    }
    for l in m.col_labels().unwrap_or_default() {
        let _ = writeln!(s, "#label c {l}");
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn read_matrix(path: &Path) -> LabResult<IntegerMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path.display().to_string(), e))?;
    parse_matrix(&text)
}
