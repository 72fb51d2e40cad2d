use num_bigint::BigInt;
use serde_json::Value;

use super::{IntMatrix, IntVector};

/// A parse failure, pointing at the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position}: {token:?}")]
pub struct ParseError {
    /// Byte offset into the input for text, row index for JSON.
    pub position: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError { position, token: token.into(), message: message.into() }
    }
}

fn parse_integer(token: &str, position: usize) -> Result<BigInt, ParseError> {
    let digits = token.strip_prefix(['+', '-']).unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        let message = if token.is_empty() { "empty entry" } else { "invalid integer" };
        return Err(ParseError::new(position, token, message));
    }
    let sign_free = token.strip_prefix('+').unwrap_or(token);
    sign_free
        .parse::<BigInt>()
        .map_err(|_| ParseError::new(position, token, "invalid integer"))
}

/// Splits `s` on `sep`, yielding trimmed pieces with their byte offsets.
fn split_trimmed(s: &str, base: usize, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        out.push((base + start + lead, piece.trim()));
        start += piece.len() + sep.len_utf8();
    }
    out
}

/// Parses a comma-separated integer vector such as `1,-2`.
pub fn parse_vector_text(input: &str) -> Result<IntVector, ParseError> {
    split_trimmed(input, 0, ',')
        .into_iter()
        .map(|(pos, tok)| parse_integer(tok, pos))
        .collect()
}

/// Parses the text form `a,b;c,d`: rows separated by `;`, entries by `,`.
pub fn parse_matrix_text(input: &str) -> Result<IntMatrix, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::new(0, input, "empty matrix"));
    }
    let mut cols = None;
    let mut rows = 0;
    let mut data = Vec::new();
    for (row_pos, row) in split_trimmed(input, 0, ';') {
        let raw_row = &input[row_pos..row_pos + row.len()];
        let entries = split_trimmed(raw_row, row_pos, ',');
        match cols {
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(ParseError::new(
                    row_pos,
                    row,
                    format!("ragged row: expected {} entries, found {}", c, entries.len()),
                ));
            }
            _ => {}
        }
        for (pos, tok) in entries {
            data.push(parse_integer(tok, pos)?);
        }
        rows += 1;
    }
    let cols = cols.unwrap_or(0);
    IntMatrix::new(rows, cols, data).map_err(|e| ParseError::new(0, input, e.to_string()))
}

fn json_integer(v: &Value, row: usize) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(ParseError::new(row, n.to_string(), "entry is not an integer"))
            }
        }
        Value::String(s) => parse_integer(s.trim(), row),
        other => Err(ParseError::new(row, other.to_string(), "entry is not an integer")),
    }
}

pub(crate) fn matrix_from_json_value(value: &Value) -> Result<IntMatrix, ParseError> {
    let rows = value
        .as_array()
        .ok_or_else(|| ParseError::new(0, value.to_string(), "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(ParseError::new(0, "[]", "empty matrix"));
    }
    let mut cols = None;
    let mut data = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| ParseError::new(i, row.to_string(), "row is not an array"))?;
        match cols {
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(ParseError::new(
                    i,
                    row.to_string(),
                    format!("ragged row: expected {} entries, found {}", c, entries.len()),
                ));
            }
            _ => {}
        }
        for e in entries {
            data.push(json_integer(e, i)?);
        }
    }
    IntMatrix::new(rows.len(), cols.unwrap_or(0), data)
        .map_err(|e| ParseError::new(0, value.to_string(), e.to_string()))
}

/// Parses a JSON array of integer rows, e.g. `[[2,3],[3,5]]`.
pub fn parse_matrix_json(input: &str) -> Result<IntMatrix, ParseError> {
    let value: Value = serde_json::from_str(input).map_err(|e| {
        let offset = line_col_offset(input, e.line(), e.column());
        let token: String = input[offset.min(input.len())..].chars().take(12).collect();
        ParseError::new(offset, token, format!("invalid JSON: {}", e))
    })?;
    matrix_from_json_value(&value)
}

/// Accepts either encoding, picking JSON when the input starts with `[`.
pub fn parse_matrix(input: &str) -> Result<IntMatrix, ParseError> {
    if input.trim_start().starts_with('[') {
        parse_matrix_json(input)
    } else {
        parse_matrix_text(input)
    }
}

fn line_col_offset(input: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in input.split_inclusive('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1).min(l.len());
        }
        offset += l.len();
    }
    input.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_basic() {
        let m = parse_matrix_text("2,3;3,5").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[2, 3], [3, 5]]));
        let m = parse_matrix_text(" -1 , 0 ; 0 , +1 ").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[-1, 0], [0, 1]]));
    }

    #[test]
    fn text_big_entries() {
        let m = parse_matrix_text("123456789012345678901234567890").unwrap();
        assert_eq!(m.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn text_ragged_rejected() {
        let err = parse_matrix_text("1,2;3").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(err.token, "3");
        assert!(err.message.contains("ragged"));
    }

    #[test]
    fn text_bad_token_located() {
        let err = parse_matrix_text("1,2;3,x4").unwrap_err();
        assert_eq!(err.position, 6);
        assert_eq!(err.token, "x4");
        let err = parse_matrix_text("1,,2").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(err.message, "empty entry");
    }

    #[test]
    fn json_basic_and_ragged() {
        let m = parse_matrix_json("[[2,3],[3,5]]").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[2, 3], [3, 5]]));
        let err = parse_matrix_json("[[1,2],[3]]").unwrap_err();
        assert_eq!(err.position, 1);
        assert!(err.message.contains("ragged"));
        assert!(parse_matrix_json("[[1.5]]").is_err());
        assert!(parse_matrix_json("[]").is_err());
        assert!(parse_matrix_json("[[1,2]").is_err());
    }

    #[test]
    fn json_string_entries_allow_big_values() {
        let m = parse_matrix_json(r#"[["99999999999999999999999"]]"#).unwrap();
        assert_eq!(m.get(0, 0).to_string(), "99999999999999999999999");
    }

    #[test]
    fn vector_text() {
        assert_eq!(parse_vector_text("1, -2").unwrap(), super::super::ivec(&[1, -2]));
        assert!(parse_vector_text("1,a").is_err());
    }
}
