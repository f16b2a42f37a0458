//! JSON seed files: `{"n": int, "m": int, "matrix": [[int, ...], ...], "field": "Q" | "Qi"}`
//! with `m` rows of `n` entries.

use std::fmt;

use serde_json::Value;

use crate::fields::FieldTag;

use super::{ClusterError, ExchangeMatrix};

/// A validation failure locating the offending entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedFileError {
    pub file: String,
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl fmt::Display for SeedFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: field `{}`: {}", self.file, self.line, self.field, self.message)
    }
}

impl std::error::Error for SeedFileError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedFile {
    pub matrix: ExchangeMatrix,
    /// `None` when the file does not name a field.
    pub field: Option<FieldTag>,
}

/// Line (1-based) of the first occurrence of `"key"` in `text`, or 1.
fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.find(&needle).map(|pos| text[..pos].matches('\n').count() + 1).unwrap_or(1)
}

/// Line of row `row` of the matrix: counts opening brackets after the
/// `"matrix"` key.
fn line_of_row(text: &str, row: usize) -> usize {
    let Some(start) = text.find("\"matrix\"") else { return 1 };
    let mut depth = 0usize;
    let mut rows_seen = 0usize;
    for (off, ch) in text[start..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if rows_seen == row {
                        return text[..start + off].matches('\n').count() + 1;
                    }
                    rows_seen += 1;
                }
            }
            ']' => {
                if depth == 1 {
                    break;
                }
                depth = depth.saturating_sub(1);
            }
            _ => {}
        }
    }
    line_of_key(text, "matrix")
}

pub fn parse_seed_file(file: &str, text: &str) -> Result<SeedFile, SeedFileError> {
    let err = |line: usize, field: &str, message: String| SeedFileError {
        file: file.to_string(),
        line,
        field: field.to_string(),
        message,
    };
    let value: Value = serde_json::from_str(text).map_err(|e| err(e.line(), "(document)", e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| err(1, "(document)", "expected a JSON object".into()))?;
    for key in obj.keys() {
        if !["n", "m", "matrix", "field"].contains(&key.as_str()) {
            return Err(err(line_of_key(text, key), key, "unknown field".into()));
        }
    }
    let count = |key: &str| -> Result<usize, SeedFileError> {
        let v = obj.get(key).ok_or_else(|| err(1, key, "missing".into()))?;
        v.as_u64()
            .filter(|&x| x >= 1)
            .map(|x| x as usize)
            .ok_or_else(|| err(line_of_key(text, key), key, format!("expected a positive integer, got {v}")))
    };
    let n = count("n")?;
    let m = count("m")?;
    if m < n {
        return Err(err(line_of_key(text, "m"), "m", format!("m = {m} is smaller than n = {n}")));
    }
    let field = match obj.get("field") {
        None => None,
        Some(v) => Some(
            v.as_str()
                .and_then(|s| s.parse::<FieldTag>().ok())
                .ok_or_else(|| err(line_of_key(text, "field"), "field", format!("expected \"Q\" or \"Qi\", got {v}")))?,
        ),
    };
    let rows_v = obj.get("matrix").ok_or_else(|| err(1, "matrix", "missing".into()))?;
    let rows_v = rows_v
        .as_array()
        .ok_or_else(|| err(line_of_key(text, "matrix"), "matrix", "expected an array of rows".into()))?;
    if rows_v.len() != m {
        return Err(err(line_of_key(text, "matrix"), "matrix", format!("expected {m} rows, found {}", rows_v.len())));
    }
    let mut rows = Vec::with_capacity(m);
    for (i, r) in rows_v.iter().enumerate() {
        let name = format!("matrix[{i}]");
        let r = r.as_array().ok_or_else(|| err(line_of_row(text, i), &name, "expected an array".into()))?;
        if r.len() != n {
            return Err(err(line_of_row(text, i), &name, format!("expected {n} entries, found {}", r.len())));
        }
        let mut row = Vec::with_capacity(n);
        for (j, x) in r.iter().enumerate() {
            let v = x.as_i64().ok_or_else(|| {
                err(line_of_row(text, i), &format!("matrix[{i}][{j}]"), format!("expected an integer, got {x}"))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    let matrix = ExchangeMatrix::new(rows, n).map_err(|e| {
        let (line, field) = match &e {
            ClusterError::NonZeroDiagonal { index } => (line_of_row(text, *index), format!("matrix[{index}][{index}]")),
            ClusterError::NotSkewSymmetrizable { i, j } => (line_of_row(text, *i), format!("matrix[{i}][{j}]")),
            _ => (line_of_key(text, "matrix"), "matrix".to_string()),
        };
        err(line, &field, e.to_string())
    })?;
    Ok(SeedFile { matrix, field })
}

/// Raw rows and `n` after JSON and shape checks only, for reports that
/// treat a failed skew-symmetrizer search as data.
pub fn parse_seed_rows(file: &str, text: &str) -> Result<(Vec<Vec<i64>>, usize), SeedFileError> {
    match parse_seed_file(file, text) {
        Ok(s) => Ok((s.matrix.rows().to_vec(), s.matrix.n())),
        Err(e) if e.message.contains("skew-symmetrizable") => {
            let value: Value = serde_json::from_str(text).unwrap();
            let n = value["n"].as_u64().unwrap() as usize;
            let rows = value["matrix"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
                .collect();
            Ok((rows, n))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_file() {
        let text = r#"{"n": 2, "m": 3, "matrix": [[0, 1], [-1, 0], [1, 0]], "field": "Qi"}"#;
        let s = parse_seed_file("s.json", text).unwrap();
        assert_eq!(s.matrix.m(), 3);
        assert_eq!(s.field, Some(FieldTag::Qi));
    }

    #[test]
    fn errors_name_file_line_and_field() {
        let text = "{\n  \"n\": 2,\n  \"m\": 2,\n  \"matrix\": [\n    [0, 1],\n    [-1, 0, 4]\n  ]\n}";
        let e = parse_seed_file("bad.json", text).unwrap_err();
        assert_eq!((e.file.as_str(), e.line, e.field.as_str()), ("bad.json", 6, "matrix[1]"));
        assert!(e.to_string().starts_with("bad.json:6: field `matrix[1]`"));

        let text = "{\n  \"n\": 2,\n  \"m\": 2,\n  \"matrix\": [[0, 1], [1, 0]]\n}";
        let e = parse_seed_file("sym.json", text).unwrap_err();
        assert_eq!(e.field, "matrix[0][1]");
        assert_eq!(e.line, 4);

        let e = parse_seed_file("f.json", r#"{"n": 1, "m": 1, "matrix": [[0]], "field": "Z"}"#).unwrap_err();
        assert_eq!(e.field, "field");
        let e = parse_seed_file("f.json", r#"{"n": 1, "m": 1, "matrix": [[0]], "extra": 1}"#).unwrap_err();
        assert_eq!(e.field, "extra");
        let e = parse_seed_file("f.json", "{\n\"n\": 1,,\n}").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_seed_file("f.json", r#"{"n": 2, "m": 1, "matrix": [[0, 0]]}"#).unwrap_err();
        assert_eq!(e.field, "m");
        let e = parse_seed_file("f.json", r#"{"n": 1, "m": 1, "matrix": [["a"]]}"#).unwrap_err();
        assert_eq!(e.field, "matrix[0][0]");
    }

    #[test]
    fn raw_rows_for_reports() {
        let (rows, n) = parse_seed_rows("r.json", r#"{"n": 2, "m": 2, "matrix": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!((rows, n), (vec![vec![0, 1], vec![1, 0]], 2));
    }
}
