//! NCBI-style substitution matrix files.
//!
//! The format is a header row of residue symbols followed by one row per
//! symbol, each starting with the symbol. Lines starting with `#` are
//! comments. Symbols beyond the 20 amino acids and `*` (such as `B`, `Z`,
//! `X`) are accepted and checked for symmetry, then dropped.

use std::path::Path;

use thiserror::Error;

use crate::model::{AminoAcid, AminoAcidMatrix};

const BLOSUM62: &str = include_str!("../../data/BLOSUM62");

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("matrix is not symmetric: ({0}, {1}) differs from ({1}, {0})")]
    AsymmetricMatrix(char, char),
    #[error("matrix has no '*' row and column; stop codons cannot be scored")]
    MissingStopRow,
    #[error("matrix has no row for amino acid {0}")]
    MissingSymbol(char),
    #[error(transparent)]
    Io(#[from] super::fasta::FastaError),
}

/// The bundled BLOSUM62 matrix.
pub fn blosum62() -> AminoAcidMatrix {
    parse_matrix(BLOSUM62).expect("bundled matrix is valid")
}

/// Text of the bundled BLOSUM62 file.
pub fn blosum62_text() -> &'static str {
    BLOSUM62
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<AminoAcidMatrix, MatrixError> {
    parse_matrix(&super::fasta::read_text(path.as_ref())?)
}

pub fn parse_matrix(text: &str) -> Result<AminoAcidMatrix, MatrixError> {
    let mut header: Option<Vec<char>> = None;
    let mut rows: Vec<(char, Vec<f64>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| MatrixError::ParseError { line: line_no, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(cols) = &header else {
            let symbols = fields
                .iter()
                .map(|f| single_char(f).ok_or_else(|| err(format!("bad header symbol {f:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            header = Some(symbols);
            continue;
        };
        let symbol = single_char(fields[0]).ok_or_else(|| err(format!("bad row symbol {:?}", fields[0])))?;
        if fields.len() - 1 != cols.len() {
            return Err(err(format!("expected {} scores, found {}", cols.len(), fields.len() - 1)));
        }
        let values = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| err(format!("bad score {f:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((symbol, values));
    }
    let cols = header.ok_or(MatrixError::ParseError { line: 0, message: "empty matrix".into() })?;

    let col_of = |c: char| cols.iter().position(|&x| x == c);
    let value = |r: char, c: char| -> Option<f64> {
        let row = rows.iter().find(|(s, _)| *s == r)?;
        Some(row.1[col_of(c)?])
    };
    for (r, _) in &rows {
        for &c in &cols {
            if let (Some(x), Some(y)) = (value(*r, c), value(c, *r)) {
                if x != y {
                    return Err(MatrixError::AsymmetricMatrix(*r, c));
                }
            }
        }
    }

    let has_row = |c: char| rows.iter().any(|(s, _)| *s == c) && col_of(c).is_some();
    if !has_row('*') {
        return Err(MatrixError::MissingStopRow);
    }
    let mut scores = [[0.0; 21]; 21];
    for x in AminoAcid::all() {
        if !has_row(x.to_char()) {
            return Err(MatrixError::MissingSymbol(x.to_char()));
        }
        for y in AminoAcid::all() {
            scores[x.index()][y.index()] = value(x.to_char(), y.to_char()).expect("row and column present");
        }
    }
    Ok(AminoAcidMatrix::new(scores).expect("symmetry and finiteness checked above"))
}

fn single_char(s: &str) -> Option<char> {
    let mut it = s.chars();
    let c = it.next()?;
    it.next().is_none().then(|| c.to_ascii_uppercase())
}
