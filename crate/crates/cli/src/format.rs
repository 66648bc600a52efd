//! Text and JSON formats for fields, matrices, polynomials and reports.
//!
//! Matrix text: one row per line, element codes as decimal integers
//! separated by single spaces; a blank line or end of input ends the matrix.
//! A stream of matrices separates records with a line holding `-`.
//!
//! Matrix JSON: `{"q": 5, "rows": 2, "cols": 2, "entries": [[1, 2], [0, 0]]}`.

use std::fmt;
use std::str::FromStr;

use grassmann_core::counting::QPoly;
use grassmann_core::field::{is_prime, parse_order, FieldSpec};
use grassmann_core::grassmannian::EchelonForm;
use grassmann_core::matrix::Mat;
use grassmann_core::oracle::CrossCheckReport;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

/// Separator line between matrix records in text streams.
pub const RECORD_SEPARATOR: &str = "-";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    BadField(String),
    BadEntry { line: usize, token: String },
    Ragged { line: usize },
    Json(String),
    Empty,
    Core(grassmann_core::Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::BadField(s) => write!(f, "invalid field order {s:?}"),
            FormatError::BadEntry { line, token } => {
                write!(f, "line {line}: {token:?} is not an element code")
            }
            FormatError::Ragged { line } => {
                write!(f, "line {line}: row length differs from the first row")
            }
            FormatError::Json(e) => write!(f, "invalid matrix JSON: {e}"),
            FormatError::Empty => f.write_str("input contains no matrix rows"),
            FormatError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<grassmann_core::Error> for FormatError {
    fn from(e: grassmann_core::Error) -> Self {
        FormatError::Core(e)
    }
}

/// A field order given as `q` (`"9"`) or `p^k` (`"3^2"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldOrder(pub u64);

impl FromStr for FieldOrder {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FormatError::BadField(s.to_string());
        let q = match s.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                if k < 1 {
                    return Err(grassmann_core::Error::InvalidDegree(k).into());
                }
                if !is_prime(p) {
                    return Err(grassmann_core::Error::NonPrime(p).into());
                }
                p.checked_pow(k).ok_or_else(bad)?
            }
            None => s.parse().map_err(|_| bad())?,
        };
        parse_order(q)?;
        Ok(FieldOrder(q))
    }
}

impl fmt::Display for FieldOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses the first matrix of `text`. Reading stops at the first blank line
/// after at least one row (leading blank lines are skipped).
pub fn parse_matrix_text(field: &FieldSpec, text: &str) -> Result<Mat, FormatError> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            if rows.is_empty() {
                continue;
            }
            break;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| FormatError::BadEntry {
                    line: idx + 1,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.first().is_some_and(|r| r.len() != row.len()) {
            return Err(FormatError::Ragged { line: idx + 1 });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(Mat::from_rows(field, &rows)?)
}

/// JSON shape of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub q: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn from_mat(m: &Mat) -> MatrixJson {
        MatrixJson {
            q: u64::from(m.field().order()),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_codes(),
        }
    }

    /// Builds the matrix, checking the declared shape against `entries`.
    pub fn to_mat(&self) -> Result<Mat, FormatError> {
        let field = FieldSpec::from_order(self.q)?;
        if self.entries.len() != self.rows {
            return Err(FormatError::Json(format!(
                "\"rows\" is {} but {} rows were given",
                self.rows,
                self.entries.len()
            )));
        }
        Ok(Mat::from_rows_with_cols(&field, self.cols, &self.entries)?)
    }
}

pub fn parse_matrix_json(text: &str) -> Result<MatrixJson, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

/// Matrix text for `m`, each row terminated by a newline.
pub fn matrix_text(m: &Mat) -> String {
    m.to_string()
}

/// One newline-delimited JSON record for an enumerated echelon form.
pub fn echelon_json(form: &EchelonForm) -> Value {
    let m = MatrixJson::from_mat(form.rows());
    json!({
        "q": m.q,
        "rows": m.rows,
        "cols": m.cols,
        "entries": m.entries,
        "pivots": form.pivots().columns(),
    })
}

/// An exact JSON number for an arbitrary-size integer.
pub fn big_json(v: &BigUint) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal digits form a JSON number"))
}

/// `n=<n> d=<d> deg=<m>` followed by the coefficients, highest power first.
pub fn poly_text(p: &QPoly) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    format!(
        "n={} d={} deg={}\n{}\n",
        p.n(),
        p.d(),
        p.degree(),
        coeffs.join(" ")
    )
}

pub fn poly_json(p: &QPoly) -> Value {
    json!({
        "n": p.n(),
        "d": p.d(),
        "coeffs": p.coeffs().iter().map(big_json).collect::<Vec<_>>(),
    })
}

pub fn report_json(r: &CrossCheckReport) -> Value {
    json!({
        "q": r.q,
        "n": r.n,
        "d": r.d,
        "oracle": big_json(&r.oracle),
        "gaussian": big_json(&r.gaussian),
        "pivot": big_json(&r.pivot),
        "poly": big_json(&r.poly),
        "bijection": if r.bijection { "ok" } else { "fail" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_orders() {
        assert_eq!("9".parse::<FieldOrder>(), Ok(FieldOrder(9)));
        assert_eq!("3^2".parse::<FieldOrder>(), Ok(FieldOrder(9)));
        assert_eq!(" 2^16 ".parse::<FieldOrder>(), Ok(FieldOrder(65536)));
        assert_eq!(
            "6".parse::<FieldOrder>(),
            Err(FormatError::Core(grassmann_core::Error::NotPrimePower(6)))
        );
        assert_eq!(
            "4^2".parse::<FieldOrder>(),
            Err(FormatError::Core(grassmann_core::Error::NonPrime(4)))
        );
        assert!("x".parse::<FieldOrder>().is_err());
        assert!("2^".parse::<FieldOrder>().is_err());
        assert!("2^0".parse::<FieldOrder>().is_err());
        assert!("2^70".parse::<FieldOrder>().is_err());
    }

    #[test]
    fn matrix_text_parsing() {
        let f = FieldSpec::from_order(5).unwrap();
        let m = parse_matrix_text(&f, "\n2 4\n1 2\n\n3 3\n").unwrap();
        assert_eq!(m.to_codes(), vec![vec![2, 4], vec![1, 2]]);
        assert_eq!(matrix_text(&m), "2 4\n1 2\n");
        assert_eq!(parse_matrix_text(&f, "  \n"), Err(FormatError::Empty));
        assert_eq!(
            parse_matrix_text(&f, "1 2\n1\n"),
            Err(FormatError::Ragged { line: 2 })
        );
        assert!(matches!(
            parse_matrix_text(&f, "1 a\n"),
            Err(FormatError::BadEntry { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix_text(&f, "1 5\n"),
            Err(FormatError::Core(grassmann_core::Error::EntryOutOfRange { .. }))
        ));
    }

    #[test]
    fn matrix_json_shape() {
        let j = parse_matrix_json(r#"{"q": 5, "rows": 2, "cols": 2, "entries": [[2,4],[1,2]]}"#)
            .unwrap();
        let m = j.to_mat().unwrap();
        assert_eq!(MatrixJson::from_mat(&m), j);
        let bad = parse_matrix_json(r#"{"q": 5, "rows": 3, "cols": 2, "entries": [[2,4]]}"#)
            .unwrap();
        assert!(bad.to_mat().is_err());
        assert!(parse_matrix_json("{").is_err());
    }

    #[test]
    fn big_numbers_stay_exact() {
        let v: BigUint = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&big_json(&v)).unwrap(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn poly_formats() {
        let p = grassmann_core::counting::coeff_poly(4, 2).unwrap();
        assert_eq!(poly_text(&p), "n=4 d=2 deg=4\n1 1 2 1 1\n");
        assert_eq!(
            serde_json::to_string(&poly_json(&p)).unwrap(),
            r#"{"coeffs":[1,1,2,1,1],"d":2,"n":4}"#
        );
    }
}
