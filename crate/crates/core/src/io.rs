//! Plain-text matrix files: a header line `rows cols` followed by the entries,
//! whitespace separated.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{LatticeVector, VectorSet};
use crate::linalg::IntMatrix;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a matrix. Line breaks inside the entry list are not significant.
pub fn read_matrix(text: &str) -> Result<IntMatrix> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let mut header = |what: &str| -> Result<usize> {
        let (line, tok) = tokens
            .next()
            .ok_or_else(|| parse_error(1, format!("missing {what} in header")))?;
        tok.parse::<usize>()
            .map_err(|_| parse_error(line, format!("bad {what} `{tok}` in header")))
    };
    let rows = header("row count")?;
    let cols = header("column count")?;
    let mut data = Vec::with_capacity(rows);
    let mut last_line = 1;
    for r in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            let (line, tok) = tokens.next().ok_or_else(|| {
                parse_error(
                    last_line,
                    format!("expected {} entries, found {}", rows * cols, r * cols + row.len()),
                )
            })?;
            last_line = line;
            let v: Int = tok
                .parse()
                .map_err(|_| parse_error(line, format!("`{tok}` is not an integer")))?;
            row.push(v);
        }
        data.push(row);
    }
    if let Some((line, tok)) = tokens.next() {
        return Err(parse_error(line, format!("unexpected entry `{tok}` after {} entries", rows * cols)));
    }
    IntMatrix::from_rows(cols, data)
}

/// Writes the rows in lexicographic order.
pub fn write_matrix(m: &IntMatrix) -> String {
    let mut rows = m.to_rows();
    rows.sort();
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for r in rows {
        let line: Vec<String> = r.iter().map(Int::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Writes a vector set canonically: each vector oriented so that its first
/// nonzero entry is positive, rows sorted.
pub fn write_vectors(s: &VectorSet) -> String {
    write_matrix(&s.canonical_up_to_sign().to_matrix())
}

pub fn read_vectors(text: &str) -> Result<VectorSet> {
    Ok(VectorSet::from_matrix(&read_matrix(text)?))
}

/// Parses a single point or vector given as whitespace-separated integers,
/// with or without a `1 n` header.
pub fn read_point(text: &str, dim: usize) -> Result<Vec<Int>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let body = if tokens.len() == dim + 2 && tokens[0] == "1" && tokens[1] == dim.to_string() {
        &tokens[2..]
    } else {
        &tokens[..]
    };
    if body.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: body.len(),
        });
    }
    body.iter()
        .map(|t| {
            t.parse::<Int>()
                .map_err(|_| parse_error(1, format!("`{t}` is not an integer")))
        })
        .collect()
}

pub fn format_vector(v: &LatticeVector) -> String {
    let parts: Vec<String> = v.entries().iter().map(Int::to_string).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "2 6\n1 -1 -1 -3 -1 2\n1 0 2 -2 -2 1\n";

    #[test]
    fn reads_running_example() {
        let m = read_matrix(EXAMPLE).unwrap();
        assert_eq!(m, IntMatrix::from_i64(6, &[&[1, -1, -1, -3, -1, 2], &[1, 0, 2, -2, -2, 1]]));
    }

    #[test]
    fn empty_matrix() {
        let m = read_matrix("0 4\n").unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 4));
        assert_eq!(write_matrix(&m), "0 4\n");
    }

    #[test]
    fn round_trip_is_canonical() {
        let m = read_matrix(EXAMPLE).unwrap();
        let text = write_matrix(&m);
        assert_eq!(text, "2 6\n1 -1 -1 -3 -1 2\n1 0 2 -2 -2 1\n");
        assert_eq!(write_matrix(&read_matrix(&text).unwrap()), text);
        let shuffled = "2 3\n5 0 0\n-1 2 3\n";
        assert_eq!(write_matrix(&read_matrix(shuffled).unwrap()), "2 3\n-1 2 3\n5 0 0\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = read_matrix("2 x\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e:?}");
        let e = read_matrix("2 2\n1 2\n3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = read_matrix("1 2\n1 2\n3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = read_matrix("1 2\n1 2.5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        assert!(read_matrix("").is_err());
    }

    #[test]
    fn big_entries_survive() {
        let text = "1 2\n-123456789012345678901234567890 1\n";
        assert_eq!(write_matrix(&read_matrix(text).unwrap()), text);
    }

    #[test]
    fn points() {
        assert_eq!(read_point("0 0 1", 3).unwrap(), vec![Int::ZERO, Int::ZERO, Int::ONE]);
        assert_eq!(read_point("1 3\n0 0 1", 3).unwrap(), vec![Int::ZERO, Int::ZERO, Int::ONE]);
        assert!(read_point("0 1", 3).is_err());
    }

    #[test]
    fn canonical_vectors() {
        let s = VectorSet::from_i64(2, &[&[-1, 2], &[0, -3]]);
        assert_eq!(write_vectors(&s), "2 2\n0 3\n1 -2\n");
    }
}
