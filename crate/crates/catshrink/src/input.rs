//! Table and target parsing.
//!
//! Two formats are accepted:
//!
//! - delimited text: one row per line, cells separated by commas or tabs.
//!   Blank lines and lines starting with `#` are skipped.
//! - a JSON document with the counts under `counts`, e.g.
//!   `{"counts": [[10, 20], [30, 40]]}`. Other keys are ignored, so a
//!   structured report can be fed back in.

use catshrink_core::mutual_info::MITargetSpec;
use catshrink_core::ContingencyTable;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// JSON if the first non-blank character is `{`, delimited text otherwise.
    #[default]
    Auto,
    Delimited,
    Json,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: negative count {value}")]
    Negative {
        line: usize,
        column: usize,
        value: i64,
    },
    #[error("JSON line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("counts[{row}][{col}]: negative count {value}")]
    NegativeJsonCell { row: usize, col: usize, value: i64 },
    #[error("counts[{row}]: expected {expected} cells, found {found}")]
    RaggedJsonRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("targets: expected a {expected_rows}x{expected_cols} table, found {rows}x{cols}")]
    TargetShape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{0}")]
    Table(catshrink_core::Error),
}

/// One cell of delimited text with its 1-based position.
struct Field<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn delimited_rows(input: &str) -> Result<Vec<Vec<Field<'_>>>, InputError> {
    let mut rows: Vec<Vec<Field<'_>>> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = Vec::new();
        let mut start = 0;
        for piece in raw.split([',', '\t']) {
            let lead = piece.len() - piece.trim_start().len();
            let column = raw[..start + lead].chars().count() + 1;
            let text = piece.trim();
            if text.is_empty() {
                return Err(InputError::Syntax {
                    line,
                    column,
                    message: "empty field".into(),
                });
            }
            fields.push(Field { line, column, text });
            start += piece.len() + 1;
        }
        if let Some(first) = rows.first() {
            if fields.len() != first.len() {
                return Err(InputError::Ragged {
                    line,
                    expected: first.len(),
                    found: fields.len(),
                });
            }
        }
        rows.push(fields);
    }
    Ok(rows)
}

fn parse_delimited(input: &str) -> Result<ContingencyTable, InputError> {
    let rows = delimited_rows(input)?;
    let mut counts = Vec::with_capacity(rows.len());
    for fields in rows {
        let mut row = Vec::with_capacity(fields.len());
        for f in fields {
            let value: i64 = f.text.parse().map_err(|_| InputError::Syntax {
                line: f.line,
                column: f.column,
                message: format!("expected a nonnegative integer, found `{}`", f.text),
            })?;
            if value < 0 {
                return Err(InputError::Negative {
                    line: f.line,
                    column: f.column,
                    value,
                });
            }
            row.push(value);
        }
        counts.push(row);
    }
    ContingencyTable::new(&counts).map_err(InputError::Table)
}

#[derive(Deserialize)]
struct CountsDoc {
    counts: Vec<Vec<i64>>,
}

fn parse_json(input: &str) -> Result<ContingencyTable, InputError> {
    let doc: CountsDoc = serde_json::from_str(input).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    ContingencyTable::new(&doc.counts).map_err(|e| match e {
        catshrink_core::Error::NegativeCell { row, col, value } => {
            InputError::NegativeJsonCell { row, col, value }
        }
        catshrink_core::Error::RaggedRow {
            row,
            expected,
            found,
        } => InputError::RaggedJsonRow {
            row,
            expected,
            found,
        },
        other => InputError::Table(other),
    })
}

fn looks_like_json(input: &str) -> bool {
    input.trim_start().starts_with('{')
}

/// Parses a contingency table, preserving row order.
pub fn parse_table(input: &str, format: Format) -> Result<ContingencyTable, InputError> {
    match format {
        Format::Json => parse_json(input),
        Format::Delimited => parse_delimited(input),
        Format::Auto if looks_like_json(input) => parse_json(input),
        Format::Auto => parse_delimited(input),
    }
}

/// Parses a delimited target table of reals whose shape must be `shape`.
/// Row and column target sums are derived from the cells.
pub fn parse_targets(input: &str, shape: (usize, usize)) -> Result<MITargetSpec, InputError> {
    let rows = delimited_rows(input)?;
    let found = (rows.len(), rows.first().map_or(0, Vec::len));
    if found != shape {
        return Err(InputError::TargetShape {
            expected_rows: shape.0,
            expected_cols: shape.1,
            rows: found.0,
            cols: found.1,
        });
    }
    let mut cells = Vec::with_capacity(shape.0 * shape.1);
    for f in rows.into_iter().flatten() {
        let v: f64 = f.text.parse().map_err(|_| InputError::Syntax {
            line: f.line,
            column: f.column,
            message: format!("expected a real number, found `{}`", f.text),
        })?;
        cells.push(v);
    }
    MITargetSpec::from_table(shape.0, shape.1, cells).map_err(InputError::Table)
}
