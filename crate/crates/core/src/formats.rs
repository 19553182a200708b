//! Reading and writing parity-check matrices, and parsing vectors given on
//! the command line.
//!
//! Plain text: a line `r n`, then `r` lines of `n` space-separated 0/1
//! entries.
//!
//! alist: `n r`; the maximum column and row degrees; the `n` column degrees;
//! the `r` row degrees; `n` lines of 1-based row indices, one line per
//! column; `r` lines of 1-based column indices, one line per row. Zeros
//! padding a line out to the maximum degree are ignored.
//!
//! Blank lines are skipped in both formats. Line numbers in errors are
//! 1-based and refer to the original text.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Plain,
    Alist,
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<BinaryMatrix> {
    match format {
        MatrixFormat::Plain => parse_plain(text),
        MatrixFormat::Alist => parse_alist(text),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line as (line number, numbers on it).
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        message: format!("expected a nonnegative integer, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((idx + 1, nums));
        }
        Err(Error::Parse {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn expect_end(&mut self) -> Result<()> {
        for (idx, line) in self.inner.by_ref() {
            if !line.trim().is_empty() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "unexpected trailing content".into(),
                });
            }
        }
        Ok(())
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(Error::Parse {
            line,
            message: format!("expected {len} {what}, found {}", nums.len()),
        });
    }
    Ok(())
}

pub fn parse_plain(text: &str) -> Result<BinaryMatrix> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_numbers("the header \"r n\"")?;
    expect_len(line, &header, 2, "header fields (r n)")?;
    let (r, n) = (header[0], header[1]);
    let mut h = BinaryMatrix::zeros(r, n);
    for j in 0..r {
        let (line, row) = lines.next_numbers(&format!("matrix row {}", j + 1))?;
        expect_len(line, &row, n, "entries")?;
        for (i, &x) in row.iter().enumerate() {
            match x {
                0 => {}
                1 => h.set(j, i, true),
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("entry {x} in column {} is not 0 or 1", i + 1),
                    })
                }
            }
        }
    }
    lines.expect_end()?;
    Ok(h)
}

pub fn write_plain(h: &BinaryMatrix) -> String {
    let mut s = format!("{} {}\n", h.num_rows(), h.num_cols());
    for j in 0..h.num_rows() {
        let row: Vec<&str> = (0..h.num_cols()).map(|i| if h.get(j, i) { "1" } else { "0" }).collect();
        s += &row.join(" ");
        s.push('\n');
    }
    s
}

pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_numbers("the header \"n r\"")?;
    expect_len(line, &header, 2, "header fields (n r)")?;
    let (n, r) = (header[0], header[1]);
    let (line, maxima) = lines.next_numbers("the maximum degrees")?;
    expect_len(line, &maxima, 2, "maximum degrees")?;
    let (col_line, col_deg) = lines.next_numbers("the column degrees")?;
    expect_len(col_line, &col_deg, n, "column degrees")?;
    let (row_line, row_deg) = lines.next_numbers("the row degrees")?;
    expect_len(row_line, &row_deg, r, "row degrees")?;
    if let Some(&d) = col_deg.iter().find(|&&d| d > maxima[0]) {
        return Err(Error::Parse {
            line: col_line,
            message: format!("column degree {d} exceeds the stated maximum {}", maxima[0]),
        });
    }
    if let Some(&d) = row_deg.iter().find(|&&d| d > maxima[1]) {
        return Err(Error::Parse {
            line: row_line,
            message: format!("row degree {d} exceeds the stated maximum {}", maxima[1]),
        });
    }

    let mut h = BinaryMatrix::zeros(r, n);
    for (i, &deg) in col_deg.iter().enumerate() {
        let (line, entries) = lines.next_numbers(&format!("the row list of column {}", i + 1))?;
        let rows: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
        expect_len(line, &rows, deg, "row indices")?;
        for j in rows {
            if j > r || h.get(j - 1, i) {
                return Err(Error::Parse {
                    line,
                    message: format!("row index {j} is out of range or repeated"),
                });
            }
            h.set(j - 1, i, true);
        }
    }
    for (j, &deg) in row_deg.iter().enumerate() {
        let (line, entries) = lines.next_numbers(&format!("the column list of row {}", j + 1))?;
        let mut cols: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
        expect_len(line, &cols, deg, "column indices")?;
        cols.sort_unstable();
        let expected: Vec<usize> = h.row(j).support().into_iter().map(|i| i + 1).collect();
        if cols != expected {
            return Err(Error::Parse {
                line,
                message: format!("row {} lists columns {cols:?} but the column lists give {expected:?}", j + 1),
            });
        }
    }
    lines.expect_end()?;
    Ok(h)
}

pub fn write_alist(h: &BinaryMatrix) -> String {
    let (r, n) = (h.num_rows(), h.num_cols());
    let col_deg: Vec<usize> = (0..n).map(|i| h.col_weight(i)).collect();
    let row_deg: Vec<usize> = (0..r).map(|j| h.row_weight(j)).collect();
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    // An empty incidence list is written as a single padding zero.
    let list = |v: &[usize]| if v.is_empty() { "0".to_string() } else { join(v) };
    let mut s = format!(
        "{n} {r}\n{} {}\n{}\n{}\n",
        col_deg.iter().max().unwrap_or(&0),
        row_deg.iter().max().unwrap_or(&0),
        join(&col_deg),
        join(&row_deg)
    );
    for i in 0..n {
        let rows: Vec<usize> = h.col_support(i).into_iter().map(|j| j + 1).collect();
        s += &list(&rows);
        s.push('\n');
    }
    for j in 0..r {
        let cols: Vec<usize> = h.row(j).support().into_iter().map(|i| i + 1).collect();
        s += &list(&cols);
        s.push('\n');
    }
    s
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

/// Comma- or space-separated integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    split_list(s)
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidArgument(format!("{t:?} is not an integer")))
        })
        .collect()
}

/// Comma- or space-separated rationals, each `p/q` or an integer.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    split_list(s).map(parse_rational).collect()
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("{t:?} is not a rational number"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.parse::<BigInt>().map_err(|_| bad())?, b.parse::<BigInt>().map_err(|_| bad())?),
        None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::dumbbell;

    const DUMBBELL_ALIST: &str = "7 6\n2 3\n2 2 2 2 2 2 2\n2 3 2 3 2 2\n1 3\n1 2\n2 3\n2 4\n4 5\n5 6\n4 6\n1 2\n2 3 4\n1 3\n4 5 7\n5 6\n6 7\n";

    #[test]
    fn plain_round_trip() {
        let text = write_plain(&dumbbell());
        assert!(text.starts_with("6 7\n1 1 0 0 0 0 0\n"));
        assert_eq!(parse_plain(&text).unwrap(), dumbbell());
    }

    #[test]
    fn alist_round_trip() {
        assert_eq!(write_alist(&dumbbell()), DUMBBELL_ALIST);
        assert_eq!(parse_alist(DUMBBELL_ALIST).unwrap(), dumbbell());
    }

    #[test]
    fn alist_zero_padding() {
        let text = "3 2\n2 3\n1 2 1\n3 1\n1 0\n1 2\n1 0\n1 2 3\n2 0 0\n";
        let h = parse_alist(text).unwrap();
        assert_eq!(h, BinaryMatrix::from_rows(&[[1u8, 1, 1], [0, 1, 0]]).unwrap());
    }

    #[test]
    fn plain_errors_carry_line_numbers() {
        assert_eq!(
            parse_plain("2 3\n1 0 1\n1 2 0\n"),
            Err(Error::Parse { line: 3, message: "entry 2 in column 2 is not 0 or 1".into() })
        );
        assert!(matches!(parse_plain("2 3\n1 0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_plain("2 3\n\n1 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_plain("1 1\n1\n1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_plain("x 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn alist_errors_carry_line_numbers() {
        let bad = DUMBBELL_ALIST.replacen("1 3\n1 2\n2 3", "1 3\n1 9\n2 3", 1);
        assert!(matches!(parse_alist(&bad), Err(Error::Parse { line: 6, .. })));
        let inconsistent = DUMBBELL_ALIST.replace("4 5 7\n", "4 5 6\n");
        assert!(matches!(parse_alist(&inconsistent), Err(Error::Parse { line: 15, .. })));
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(parse_int_list("1,1, 2 0").unwrap(), vec![1, 1, 2, 0]);
        assert!(parse_int_list("1,a").is_err());
        let v = parse_rational_list("1/3,0,-2/4").unwrap();
        assert_eq!(v[0], BigRational::new(1.into(), 3.into()));
        assert_eq!(v[2], BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn both_formats_round_trip(rows in proptest::collection::vec(proptest::collection::vec(0u8..2, 5), 1..5)) {
                let h = BinaryMatrix::from_rows(&rows).unwrap();
                prop_assert_eq!(parse_plain(&write_plain(&h)).unwrap(), h.clone());
                prop_assert_eq!(parse_alist(&write_alist(&h)).unwrap(), h);
            }
        }
    }
}
