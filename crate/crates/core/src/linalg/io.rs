//! Plain-text covariance-matrix files.
//!
//! ```text
//! # comment lines start with '#'
//! 2
//! 0.5 0 0 0
//! 0 0.5 0 0
//! 0 0 0.5 0
//! 0 0 0 0.5
//! ```
//!
//! The first data line is the mode count `n`, followed by `2n` rows of `2n`
//! whitespace-separated reals. Values are in the vacuum = I/2 convention.

use std::fs;
use std::path::Path;

use super::Matrix;
use crate::error::{Error, Result};

pub fn parse_cm(text: &str, origin: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing mode count"))?;
    let n_modes: usize = header
        .parse()
        .map_err(|_| Error::parse(origin, header_no, format!("bad mode count `{header}`")))?;
    if n_modes == 0 {
        return Err(Error::parse(
            origin,
            header_no,
            "mode count must be positive",
        ));
    }
    let dim = 2 * n_modes;

    let mut m = Matrix::zeros(dim, dim);
    let mut row = 0;
    let mut last_line = header_no;
    for (no, line) in lines {
        last_line = no;
        if row == dim {
            return Err(Error::parse(origin, no, "unexpected extra row"));
        }
        let values: Vec<&str> = line.split_whitespace().collect();
        if values.len() != dim {
            return Err(Error::parse(
                origin,
                no,
                format!("expected {dim} values, found {}", values.len()),
            ));
        }
        for (col, tok) in values.iter().enumerate() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(origin, no, format!("bad number `{tok}`")))?;
            if !v.is_finite() {
                return Err(Error::parse(
                    origin,
                    no,
                    format!("non-finite value `{tok}`"),
                ));
            }
            m[(row, col)] = v;
        }
        row += 1;
    }
    if row != dim {
        return Err(Error::parse(
            origin,
            last_line,
            format!("expected {dim} rows, found {row}"),
        ));
    }
    Ok(m)
}

/// Serialises with 17 significant digits, so `parse_cm(format_cm(m)) == m`.
pub fn format_cm(m: &Matrix) -> String {
    let mut out = format!("{}\n", m.nrows() / 2);
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:.16e}", m[(i, j)]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_cm(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_cm(&text, &path.display().to_string())
}

pub fn write_cm(path: &Path, m: &Matrix) -> Result<()> {
    fs::write(path, format_cm(m)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let text = "# vacuum\n1\n0.5 0\n# mid\n0 0.5\n";
        let m = parse_cm(text, "t").unwrap();
        assert_eq!(m, Matrix::identity(2, 2) * 0.5);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_cm("1\n0.5 0\n0 x\n", "f.cm").unwrap_err();
        assert_eq!(err.to_string(), "f.cm:3: bad number `x`");
        let err = parse_cm("1\n0.5 0 1\n", "f.cm").unwrap_err();
        assert!(err.to_string().starts_with("f.cm:2:"));
        let err = parse_cm("1\n0.5 0\n", "f.cm").unwrap_err();
        assert!(err.to_string().contains("expected 2 rows"));
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(vals in proptest::collection::vec(-1e8f64..1e8, 16)) {
            let m = Matrix::from_row_slice(4, 4, &vals);
            let back = parse_cm(&format_cm(&m), "p").unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
