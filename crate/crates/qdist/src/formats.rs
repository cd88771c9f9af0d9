//! Line-oriented text formats for code interchange.
//!
//! * Pauli text: `#` comment lines, a `n <int>` header, then one generator
//!   per line as a length-`n` string over {I, X, Y, Z}.
//! * CSS pair: two files of dense 0/1 rows, loaded as `G_x` and `G_z`.
//! * alist: the standard sparse-binary LDPC interchange format, accepted for
//!   classical inputs.
//!
//! Parsing and serialization round-trip bit-exactly.

use crate::algebra::{BinaryMatrix, PauliVector};
use crate::bits::BitVec;
use crate::codes::{CssCode, StabilizerCode};
use crate::error::{Error, Result};

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Parses the Pauli text format. Line and column numbers in errors are
/// 1-based.
pub fn parse_pauli_text(text: &str) -> Result<StabilizerCode> {
    let mut n: Option<usize> = None;
    let mut rows: Vec<PauliVector> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("n") {
                    return Err(parse_err(lineno, 1, "expected header line `n <int>`"));
                }
                let val = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, 2, "missing qubit count after `n`"))?;
                if parts.next().is_some() {
                    return Err(parse_err(lineno, 1, "trailing tokens after qubit count"));
                }
                let parsed: usize = val
                    .parse()
                    .map_err(|_| parse_err(lineno, 3, format!("invalid qubit count {val:?}")))?;
                n = Some(parsed);
            }
            Some(n) => {
                if line.len() != n {
                    return Err(parse_err(
                        lineno,
                        1,
                        format!("generator has length {}, expected {n}", line.len()),
                    ));
                }
                let row = PauliVector::parse(line).map_err(|col| {
                    parse_err(lineno, col, "invalid Pauli character (want I, X, Y or Z)")
                })?;
                rows.push(row);
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(1, 1, "missing header line `n <int>`"))?;
    StabilizerCode::new(n, rows)
}

/// Serializes to the Pauli text format; `comments` become leading `#` lines.
pub fn write_pauli_text(code: &StabilizerCode, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("n {}\n", code.n()));
    for row in code.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

/// Parses one dense 0/1 matrix file: one row per line, no separators.
pub fn parse_dense_binary(text: &str) -> Result<BinaryMatrix> {
    let mut rows: Vec<BitVec> = Vec::new();
    let mut cols: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let width = cols.get_or_insert(line.len());
        if line.len() != *width {
            return Err(parse_err(
                lineno,
                1,
                format!("row has length {}, expected {width}", line.len()),
            ));
        }
        let mut row = BitVec::zeros(*width);
        for (i, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => row.set(i, true),
                _ => return Err(parse_err(lineno, i + 1, format!("invalid bit {c:?}"))),
            }
        }
        rows.push(row);
    }
    let cols = cols.unwrap_or(0);
    BinaryMatrix::from_rows(rows, cols)
}

pub fn write_dense_binary(m: &BinaryMatrix, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for row in m.rows() {
        out.push_str(&format!("{row:?}"));
        out.push('\n');
    }
    out
}

/// Loads a CSS code from the contents of its `G_x` and `G_z` files.
pub fn parse_css_pair(gx_text: &str, gz_text: &str) -> Result<CssCode> {
    let gx = parse_dense_binary(gx_text)?;
    let gz = parse_dense_binary(gz_text)?;
    CssCode::new(gx, gz)
}

/// Parses the alist sparse-matrix format (MacKay convention): first line
/// `N M` (columns then rows), then max weights, per-column and per-row
/// weights, and 1-based adjacency lists padded with zeros.
pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut numbers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, 1, format!("invalid integer {tok:?}")))?;
            if v < 0 {
                return Err(parse_err(idx + 1, 1, "negative value in alist"));
            }
            numbers.push(v as usize);
        }
    }
    let mut it = numbers.into_iter();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| parse_err(0, 0, format!("alist truncated before {what}")))
    };
    let n = next("column count")?;
    let m = next("row count")?;
    let _max_col = next("max column weight")?;
    let _max_row = next("max row weight")?;
    let col_weights: Vec<usize> = (0..n)
        .map(|_| next("column weights"))
        .collect::<Result<_>>()?;
    let row_weights: Vec<usize> = (0..m)
        .map(|_| next("row weights"))
        .collect::<Result<_>>()?;

    let mut matrix = BinaryMatrix::zeros(m, n);
    for (c, &w) in col_weights.iter().enumerate() {
        let mut seen = 0;
        // entries may be zero-padded up to the max weight
        while seen < w {
            let v = next("column adjacency")?;
            if v == 0 {
                continue;
            }
            if v > m {
                return Err(parse_err(0, 0, format!("row index {v} out of range 1..={m}")));
            }
            matrix.set(v - 1, c, true);
            seen += 1;
        }
    }
    // row adjacency repeats the same information; read it for validation
    for (r, &w) in row_weights.iter().enumerate() {
        let mut seen = 0;
        while seen < w {
            let v = next("row adjacency")?;
            if v == 0 {
                continue;
            }
            if v > n {
                return Err(parse_err(0, 0, format!("column index {v} out of range 1..={n}")));
            }
            if !matrix.get(r, v - 1) {
                return Err(parse_err(
                    0,
                    0,
                    format!("row list names ({}, {v}) absent from column lists", r + 1),
                ));
            }
            seen += 1;
        }
    }
    Ok(matrix)
}

pub fn write_alist(m: &BinaryMatrix) -> String {
    let rows = m.num_rows();
    let cols = m.num_cols();
    let col_lists: Vec<Vec<usize>> = (0..cols)
        .map(|c| (0..rows).filter(|&r| m.get(r, c)).collect())
        .collect();
    let row_lists: Vec<Vec<usize>> = (0..rows)
        .map(|r| m.row(r).iter_ones().collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("{cols} {rows}\n{max_col} {max_row}\n");
    out.push_str(
        &col_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(
        &row_lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    let fmt_list = |l: &[usize], width: usize| {
        let mut items: Vec<String> = l.iter().map(|&i| (i + 1).to_string()).collect();
        while items.len() < width {
            items.push("0".into());
        }
        items.join(" ")
    };
    for l in &col_lists {
        out.push_str(&fmt_list(l, max_col));
        out.push('\n');
    }
    for l in &row_lists {
        out.push_str(&fmt_list(l, max_row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{from_css, steane_code};

    #[test]
    fn pauli_text_round_trip() {
        let code = from_css(&steane_code());
        let text = write_pauli_text(&code, &["steane".into()]);
        let back = parse_pauli_text(&text).unwrap();
        assert_eq!(back.n(), code.n());
        assert_eq!(
            back.rows().iter().map(ToString::to_string).collect::<Vec<_>>(),
            code.rows().iter().map(ToString::to_string).collect::<Vec<_>>()
        );
        // serialize(parse(serialize(code))) is byte-identical
        assert_eq!(write_pauli_text(&back, &["steane".into()]), text);
    }

    #[test]
    fn pauli_text_reports_bad_character_position() {
        let err = parse_pauli_text("n 3\nXIZ\nXQZ\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!((line, col), (3, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn pauli_text_wrong_length_row() {
        assert!(parse_pauli_text("n 3\nXI\n").is_err());
        assert!(parse_pauli_text("XIZ\n").is_err());
    }

    #[test]
    fn dense_binary_round_trip() {
        let m = BinaryMatrix::from_dense(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let text = write_dense_binary(&m, &[]);
        assert_eq!(text, "101\n011\n");
        assert_eq!(parse_dense_binary(&text).unwrap(), m);
    }

    #[test]
    fn alist_round_trip() {
        let m = BinaryMatrix::from_dense(&[
            vec![1, 1, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 0],
            vec![1, 0, 0, 0, 1, 1],
        ])
        .unwrap();
        let text = write_alist(&m);
        assert_eq!(parse_alist(&text).unwrap(), m);
    }

    #[test]
    fn alist_rejects_inconsistent_lists() {
        // row list names an entry the column lists do not have
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n";
        assert!(parse_alist(text).is_err());
    }
}
