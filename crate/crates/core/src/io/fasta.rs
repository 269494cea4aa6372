//! FASTA input and output, for plain sequences and gapped alignment rows.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::{Alignment, AlignmentError, CodingSequence, SequenceError};

#[derive(Debug, Error)]
pub enum FastaError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("no FASTA records found")]
    EmptyInput,
    #[error("line {line}: sequence data before the first '>' header")]
    MissingHeader { line: usize },
    #[error("record {id:?} (line {line}): {source}")]
    Record { id: String, line: usize, source: SequenceError },
    #[error("expected {expected} records, found {found}")]
    RecordCount { expected: usize, found: usize },
    #[error("alignment: {0}")]
    Alignment(#[from] AlignmentError),
}

/// A raw record: header split into id and description, sequence text with
/// whitespace removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    pub id: String,
    pub description: String,
    pub sequence: String,
    /// Line number of the header, 1-based.
    pub line: usize,
    /// `(offset into sequence, line number)` for each sequence line.
    line_starts: Vec<(usize, usize)>,
}

impl FastaRecord {
    /// Line holding the 1-based sequence position `pos`.
    fn line_of(&self, pos: usize) -> usize {
        self.line_starts
            .iter()
            .take_while(|(offset, _)| *offset < pos)
            .last()
            .map_or(self.line, |&(_, line)| line)
    }

    fn to_coding_sequence(&self) -> Result<CodingSequence, FastaError> {
        CodingSequence::parse(&self.sequence, self.id.clone()).map_err(|source| {
            let line = match source {
                SequenceError::InvalidSymbol { position, .. } => self.line_of(position),
                _ => self.line,
            };
            FastaError::Record { id: self.id.clone(), line, source }
        })
    }
}

pub fn parse_records(text: &str) -> Result<Vec<FastaRecord>, FastaError> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            let header = header.trim();
            let (id, description) = match header.split_once(char::is_whitespace) {
                Some((id, rest)) => (id.to_string(), rest.trim().to_string()),
                None => (header.to_string(), String::new()),
            };
            records.push(FastaRecord {
                id,
                description,
                sequence: String::new(),
                line: line_no,
                line_starts: Vec::new(),
            });
            continue;
        }
        let record = records.last_mut().ok_or(FastaError::MissingHeader { line: line_no })?;
        record.line_starts.push((record.sequence.chars().count(), line_no));
        record.sequence.extend(line.chars().filter(|c| !c.is_whitespace()));
    }
    if records.is_empty() {
        return Err(FastaError::EmptyInput);
    }
    Ok(records)
}

pub fn parse_fasta(text: &str) -> Result<Vec<CodingSequence>, FastaError> {
    parse_records(text)?.iter().map(FastaRecord::to_coding_sequence).collect()
}

pub fn read_fasta(path: impl AsRef<Path>) -> Result<Vec<CodingSequence>, FastaError> {
    parse_fasta(&read_text(path.as_ref())?)
}

/// Parses a two-record gapped FASTA file into an alignment and the two
/// sequences it aligns.
pub fn parse_alignment(
    text: &str,
) -> Result<(Alignment, CodingSequence, CodingSequence), FastaError> {
    let records = parse_records(text)?;
    if records.len() != 2 {
        return Err(FastaError::RecordCount { expected: 2, found: records.len() });
    }
    let alignment = Alignment::from_rows(&records[0].sequence, &records[1].sequence)?;
    let strip = |rec: &FastaRecord| {
        FastaRecord { sequence: rec.sequence.replace('-', ""), line_starts: Vec::new(), ..rec.clone() }
            .to_coding_sequence()
    };
    Ok((alignment, strip(&records[0])?, strip(&records[1])?))
}

pub fn read_alignment(
    path: impl AsRef<Path>,
) -> Result<(Alignment, CodingSequence, CodingSequence), FastaError> {
    parse_alignment(&read_text(path.as_ref())?)
}

pub(crate) fn read_text(path: &Path) -> Result<String, FastaError> {
    fs::read_to_string(path).map_err(|source| FastaError::Io { path: path.to_path_buf(), source })
}

/// Writes sequences, wrapping lines at `width` characters (0 for no wrap).
pub fn write_fasta<W: Write>(mut out: W, seqs: &[CodingSequence], width: usize) -> io::Result<()> {
    for s in seqs {
        write_record(&mut out, s.id(), &s.to_string(), width)?;
    }
    Ok(())
}

/// Writes an alignment as a two-record gapped FASTA file.
pub fn write_alignment<W: Write>(
    mut out: W,
    alignment: &Alignment,
    id_a: &str,
    id_b: &str,
    width: usize,
) -> io::Result<()> {
    write_record(&mut out, id_a, &alignment.row_a_string(), width)?;
    write_record(&mut out, id_b, &alignment.row_b_string(), width)
}

fn write_record<W: Write>(out: &mut W, id: &str, text: &str, width: usize) -> io::Result<()> {
    writeln!(out, ">{id}")?;
    if width == 0 {
        return writeln!(out, "{text}");
    }
    for chunk in text.as_bytes().chunks(width) {
        out.write_all(chunk)?;
        writeln!(out)?;
    }
    Ok(())
}
