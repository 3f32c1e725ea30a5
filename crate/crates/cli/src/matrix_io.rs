//! Text and JSON forms of an operator matrix, and their parsers.
//!
//! Text form, after any `#` comment lines:
//!
//! ```text
//! degree 3
//! t 1/2
//! h 20/9
//! h_factored true
//! mode exact
//! basis -6 * zb2^3
//! ...
//! row 3 0 0 ...
//! ```
//!
//! `row i` lists entry `(i, j)` for every `j`; column `j` is the image of basis element `j`.

use kohn_spectra::poly::Polynomial;
use kohn_spectra::scalar::parse_rational;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub degree: u32,
    pub t: String,
    pub h: String,
    pub h_factored: bool,
    pub basis: Vec<String>,
    pub rows: MatrixRows,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "entries", rename_all = "lowercase")]
pub enum MatrixRows {
    /// Rationals as `p/q` strings.
    Exact(Vec<Vec<String>>),
    Numeric(Vec<Vec<f64>>),
}

impl MatrixDoc {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact entries; fails for numeric matrices.
    pub fn exact_entries(&self) -> Result<Vec<Vec<BigRational>>, CliError> {
        match &self.rows {
            MatrixRows::Exact(rows) => rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| parse_rational(v).map_err(CliError::from))
                        .collect()
                })
                .collect(),
            MatrixRows::Numeric(_) => Err(CliError::Config("matrix is numeric".into())),
        }
    }

    pub fn basis_polynomials(&self) -> Result<Vec<Polynomial>, CliError> {
        self.basis
            .iter()
            .map(|b| b.parse().map_err(CliError::from))
            .collect()
    }
}

pub fn to_text(doc: &MatrixDoc) -> String {
    let mut out = format!(
        "degree {}\nt {}\nh {}\nh_factored {}\n",
        doc.degree, doc.t, doc.h, doc.h_factored
    );
    let (mode, rows): (&str, Vec<String>) = match &doc.rows {
        MatrixRows::Exact(r) => ("exact", r.iter().map(|row| row.join(" ")).collect()),
        MatrixRows::Numeric(r) => (
            "numeric",
            r.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| format!("{v:?}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect(),
        ),
    };
    out.push_str(&format!("mode {mode}\n"));
    for b in &doc.basis {
        out.push_str(&format!("basis {b}\n"));
    }
    for row in rows {
        out.push_str(&format!("row {row}\n"));
    }
    out
}

pub fn parse_text(input: &str) -> Result<MatrixDoc, CliError> {
    let bad = |line: &str| CliError::Config(format!("unexpected matrix line {line:?}"));
    let mut degree = None;
    let mut t = None;
    let mut h = None;
    let mut h_factored = None;
    let mut mode = None;
    let mut basis = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for line in input.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').ok_or_else(|| bad(line))?;
        match key {
            "degree" => degree = Some(rest.parse::<u32>().map_err(|_| bad(line))?),
            "t" => t = Some(rest.to_string()),
            "h" => h = Some(rest.to_string()),
            "h_factored" => h_factored = Some(rest.parse::<bool>().map_err(|_| bad(line))?),
            "mode" => mode = Some(rest.to_string()),
            "basis" => basis.push(rest.to_string()),
            "row" => rows.push(rest.split_whitespace().map(str::to_string).collect()),
            _ => return Err(bad(line)),
        }
    }
    let missing = |what: &str| CliError::Config(format!("matrix text lacks {what}"));
    let n = basis.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Config(format!("expected a {n} x {n} matrix")));
    }
    let rows = match mode.as_deref() {
        Some("exact") => MatrixRows::Exact(rows),
        Some("numeric") => MatrixRows::Numeric(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| v.parse::<f64>().map_err(|_| bad(v)))
                        .collect()
                })
                .collect::<Result<_, _>>()?,
        ),
        _ => return Err(missing("mode")),
    };
    Ok(MatrixDoc {
        degree: degree.ok_or_else(|| missing("degree"))?,
        t: t.ok_or_else(|| missing("t"))?,
        h: h.ok_or_else(|| missing("h"))?,
        h_factored: h_factored.ok_or_else(|| missing("h_factored"))?,
        basis,
        rows,
    })
}

pub fn parse_json(input: &str) -> Result<MatrixDoc, CliError> {
    serde_json::from_str(input).map_err(|e| CliError::Config(e.to_string()))
}
