//! Vector and matrix file loading with line/column diagnostics.

use std::fmt;
use std::path::Path;

use lpmaj_core::rational::parse_rational;
use lpmaj_core::spectral::IntMatrix;
use lpmaj_core::{Rational, RationalVector};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.source, self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError {
        source: path.display().to_string(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, column)
}

/// Byte offsets where each element of the outermost JSON array starts.
fn element_offsets(text: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    let mut expect_element = false;
    for (i, ch) in text.char_indices() {
        if in_string {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        if expect_element && !ch.is_whitespace() {
            if ch != ']' {
                out.push(i);
            }
            expect_element = false;
        }
        match ch {
            '"' => in_string = true,
            '[' | '{' => {
                depth += 1;
                if depth == 1 {
                    expect_element = true;
                }
            }
            ']' | '}' => depth = depth.saturating_sub(1),
            ',' if depth == 1 => expect_element = true,
            _ => {}
        }
    }
    out
}

fn parse_json(source: &str, text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError {
        source: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: format!("malformed JSON: {e}"),
    })
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Parses a JSON array of rational strings or numbers. Numbers keep their
/// decimal spelling, so `1.9` is read as `19/10`.
pub fn parse_vector(source: &str, text: &str) -> Result<RationalVector, InputError> {
    let value = parse_json(source, text)?;
    let at = |idx: Option<usize>, message: String| {
        let offset = idx
            .and_then(|i| element_offsets(text).get(i).copied())
            .unwrap_or_else(|| text.len() - text.trim_start().len());
        let (line, column) = line_col(text, offset);
        InputError { source: source.to_string(), line, column, message }
    };
    let Value::Array(items) = value else {
        return Err(at(None, "expected a JSON array of rationals".into()));
    };
    let mut entries: Vec<Rational> = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let text_value = scalar_text(item)
            .ok_or_else(|| at(Some(i), format!("element {i}: expected a string or number")))?;
        let q = parse_rational(&text_value).map_err(|e| at(Some(i), format!("element {i}: {e}")))?;
        entries.push(q);
    }
    RationalVector::new(entries).map_err(|e| {
        let idx = match &e {
            lpmaj_core::Error::NegativeEntry { index, .. } => Some(*index),
            _ => None,
        };
        at(idx, e.to_string())
    })
}

pub fn load_vector(path: &Path) -> Result<RationalVector, InputError> {
    parse_vector(&path.display().to_string(), &read(path)?)
}

/// Integer matrix from a JSON array of arrays or from CSV.
pub fn parse_matrix(source: &str, text: &str) -> Result<IntMatrix, InputError> {
    let rows = if text.trim_start().starts_with('[') {
        matrix_rows_from_json(source, text)?
    } else {
        matrix_rows_from_csv(source, text)?
    };
    IntMatrix::from_rows(&rows).map_err(|e| {
        let row = match &e {
            lpmaj_core::Error::RaggedMatrix { row, .. } => *row,
            _ => 0,
        };
        InputError { source: source.to_string(), line: row + 1, column: 1, message: e.to_string() }
    })
}

fn matrix_rows_from_json(source: &str, text: &str) -> Result<Vec<Vec<i64>>, InputError> {
    let value = parse_json(source, text)?;
    let offsets = element_offsets(text);
    let err = |row: Option<usize>, message: String| {
        let offset = row.and_then(|r| offsets.get(r).copied()).unwrap_or(0);
        let (line, column) = line_col(text, offset);
        InputError { source: source.to_string(), line, column, message }
    };
    let Value::Array(rows) = value else {
        return Err(err(None, "expected a JSON array of integer arrays".into()));
    };
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let Value::Array(cells) = row else {
                return Err(err(Some(r), format!("row {r}: expected an array")));
            };
            cells
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    cell.as_i64()
                        .ok_or_else(|| err(Some(r), format!("row {r}, column {c}: expected an integer, found {cell}")))
                })
                .collect()
        })
        .collect()
}

fn matrix_rows_from_csv(source: &str, text: &str) -> Result<Vec<Vec<i64>>, InputError> {
    let mut rows = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for cell in line.split(',') {
            let trimmed = cell.trim();
            let lead = cell.len() - cell.trim_start().len();
            let v = trimmed.parse::<i64>().map_err(|_| InputError {
                source: source.to_string(),
                line: line_idx + 1,
                column: column + lead,
                message: format!("expected an integer cell, found {trimmed:?}"),
            })?;
            row.push(v);
            column += cell.len() + 1;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(InputError { source: source.to_string(), line: 1, column: 1, message: "empty matrix".into() });
    }
    Ok(rows)
}

pub fn load_matrix(path: &Path) -> Result<IntMatrix, InputError> {
    parse_matrix(&path.display().to_string(), &read(path)?)
}

/// Comma-separated rationals from a command-line flag.
pub fn parse_rational_list(flag: &str, text: &str) -> Result<Vec<Rational>, InputError> {
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            parse_rational(part).map_err(|e| InputError {
                source: format!("--{flag}"),
                line: 1,
                column: text.split(',').take(i).map(|p| p.len() + 1).sum::<usize>() + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lpmaj_core::rational::{frac, int};

    #[test]
    fn vectors_parse_exactly() {
        let x = parse_vector("x", r#"["3/7", 1.9, 4]"#).unwrap();
        assert_eq!(x.entries(), &[frac(3, 7), frac(19, 10), int(4)]);
    }

    #[test]
    fn vector_errors_carry_positions() {
        let e = parse_vector("x", "[1,\n 2,\n \"oops\"]").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        assert!(e.message.contains("element 2"));

        let e = parse_vector("x", "[1, 2,,]").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("malformed JSON"));

        let e = parse_vector("x", "[1, \"-1/2\"]").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));

        let e = parse_vector("x", "{\"a\": 1}").unwrap_err();
        assert!(e.message.contains("expected a JSON array"));
        assert!(parse_vector("x", "[]").is_err());
    }

    #[test]
    fn matrices_from_json_and_csv() {
        let a = parse_matrix("q", "[[1, 0], [0, -1]]").unwrap();
        let b = parse_matrix("q", "1,0\n0, -1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.get(1, 1), -1);
    }

    #[test]
    fn matrix_errors_carry_positions() {
        let e = parse_matrix("q", "1,2\n3,x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_matrix("q", "1,2\n3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_matrix("q", "[[1, 2],\n [3, 4.5]]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 2));
        let e = parse_matrix("q", "[[1, 2], [3").unwrap_err();
        assert!(e.message.contains("malformed JSON"));
    }

    #[test]
    fn flag_lists() {
        assert_eq!(parse_rational_list("c", "1,1/2").unwrap(), vec![int(1), frac(1, 2)]);
        let e = parse_rational_list("c", "1,zz").unwrap_err();
        assert_eq!(e.column, 3);
    }
}
