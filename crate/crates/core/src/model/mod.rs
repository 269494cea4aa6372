//! Sequences, alphabets, the genetic code and alignments.
//!
//! Positions exposed by this module are 1-based, so `codon(i)` is the triple
//! that ends at nucleotide `3i`.

mod scheme;

pub use scheme::{AminoAcidMatrix, ExtensionCharge, NucleotideScores, SchemeError, ScoringScheme};

use std::fmt;

use thiserror::Error;

/// A DNA base. Input is case-insensitive, output is always uppercase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nucleotide {
    A,
    C,
    G,
    T,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' | 'A' => Some(Nucleotide::A),
            'c' | 'C' => Some(Nucleotide::C),
            'g' | 'G' => Some(Nucleotide::G),
            't' | 'T' => Some(Nucleotide::T),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    /// Dense index in `0..4`, in `ACGT` order.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The 21 residue symbols scored by an [`AminoAcidMatrix`], in matrix order.
pub const AMINO_ACID_SYMBOLS: &str = "ARNDCQEGHILKMFPSTWYV*";

/// One of the 20 standard amino acids or the stop symbol `*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AminoAcid(u8);

impl AminoAcid {
    pub const STOP: AminoAcid = AminoAcid(20);

    pub fn from_char(c: char) -> Option<Self> {
        let c = c.to_ascii_uppercase();
        AMINO_ACID_SYMBOLS
            .find(c)
            .map(|idx| AminoAcid(idx as u8))
    }

    pub fn to_char(self) -> char {
        AMINO_ACID_SYMBOLS.as_bytes()[self.0 as usize] as char
    }

    /// Dense index in `0..21`, following [`AMINO_ACID_SYMBOLS`].
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = AminoAcid> {
        (0..21u8).map(AminoAcid)
    }
}

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Dense index of a codon in `0..64`.
#[inline]
pub fn codon_index(codon: [Nucleotide; 3]) -> usize {
    codon[0].index() * 16 + codon[1].index() * 4 + codon[2].index()
}

/// A total map from the 64 codons to amino acids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneticCode {
    table: [AminoAcid; 64],
}

impl GeneticCode {
    /// The standard code (NCBI translation table 1).
    pub fn standard() -> Self {
        // Indexed as codon_index() with bases in ACGT order.
        const TABLE: &[u8; 64] =
            b"KNKNTTTTRSRSIIMIQHQHPPPPRRRRLLLLEDEDAAAAGGGGVVVV*Y*YSSSS*CWCLFLF";
        let mut table = [AminoAcid::STOP; 64];
        for (slot, &b) in table.iter_mut().zip(TABLE.iter()) {
            *slot = AminoAcid::from_char(b as char).expect("table holds valid symbols");
        }
        GeneticCode { table }
    }

    /// Builds a code from an explicit 64-entry table indexed by [`codon_index`].
    pub fn from_table(table: [AminoAcid; 64]) -> Self {
        GeneticCode { table }
    }

    #[inline]
    pub fn translate_codon(&self, codon: [Nucleotide; 3]) -> AminoAcid {
        self.table[codon_index(codon)]
    }

    #[inline]
    pub fn translate_index(&self, idx: usize) -> AminoAcid {
        self.table[idx]
    }
}

impl Default for GeneticCode {
    fn default() -> Self {
        GeneticCode::standard()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("sequence length {0} is not a multiple of 3")]
    LengthNotMultipleOfThree(usize),
    #[error("invalid symbol {ch:?} at position {position}")]
    InvalidSymbol { position: usize, ch: char },
}

/// A validated protein-coding DNA sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingSequence {
    id: String,
    residues: Vec<Nucleotide>,
}

impl CodingSequence {
    /// Parses raw text, skipping whitespace. Positions in errors are 1-based
    /// and count only non-whitespace characters.
    pub fn parse(raw: &str, id: impl Into<String>) -> Result<Self, SequenceError> {
        let mut residues = Vec::with_capacity(raw.len());
        let mut position = 0;
        for ch in raw.chars() {
            if ch.is_whitespace() {
                continue;
            }
            position += 1;
            match Nucleotide::from_char(ch) {
                Some(nt) => residues.push(nt),
                None => return Err(SequenceError::InvalidSymbol { position, ch }),
            }
        }
        CodingSequence::from_residues(residues, id)
    }

    pub fn from_residues(
        residues: Vec<Nucleotide>,
        id: impl Into<String>,
    ) -> Result<Self, SequenceError> {
        if residues.is_empty() {
            return Err(SequenceError::EmptySequence);
        }
        if residues.len() % 3 != 0 {
            return Err(SequenceError::LengthNotMultipleOfThree(residues.len()));
        }
        Ok(CodingSequence { id: id.into(), residues })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residues(&self) -> &[Nucleotide] {
        &self.residues
    }

    /// Length in nucleotides.
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn codon_count(&self) -> usize {
        self.residues.len() / 3
    }

    /// Nucleotide at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> Nucleotide {
        self.residues[pos - 1]
    }

    /// The codon ending at position `3i`, for `1 <= i <= n/3`.
    pub fn codon(&self, i: usize) -> [Nucleotide; 3] {
        assert!(i >= 1 && i <= self.codon_count(), "codon index {i} out of range");
        let end = 3 * i;
        [self.residues[end - 3], self.residues[end - 2], self.residues[end - 1]]
    }

    pub fn translate(&self, code: &GeneticCode) -> Vec<AminoAcid> {
        translate(self, code)
    }
}

impl fmt::Display for CodingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for nt in &self.residues {
            write!(f, "{}", nt.to_char())?;
        }
        Ok(())
    }
}

pub fn translate(seq: &CodingSequence, code: &GeneticCode) -> Vec<AminoAcid> {
    (1..=seq.codon_count())
        .map(|i| code.translate_codon(seq.codon(i)))
        .collect()
}

/// Number of symbols in `segment` that are not the gap symbol `-`.
///
/// ```
/// assert_eq!(fsalign::model::nongap_count("AC--G"), 3);
/// ```
pub fn nongap_count(segment: &str) -> usize {
    segment.chars().filter(|&c| c != '-').count()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignmentError {
    #[error("alignment rows differ in length ({0} vs {1})")]
    RowLengthMismatch(usize, usize),
    #[error("column {0} is a gap in both rows")]
    DoubleGapColumn(usize),
    #[error("invalid symbol {ch:?} in row {row} at column {column}")]
    InvalidSymbol { row: char, column: usize, ch: char },
    #[error("row {0} does not strip to the given sequence")]
    RowMismatch(char),
}

/// A gapped pair of rows. `None` is the gap symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    row_a: Vec<Option<Nucleotide>>,
    row_b: Vec<Option<Nucleotide>>,
}

impl Alignment {
    pub fn new(
        row_a: Vec<Option<Nucleotide>>,
        row_b: Vec<Option<Nucleotide>>,
    ) -> Result<Self, AlignmentError> {
        if row_a.len() != row_b.len() {
            return Err(AlignmentError::RowLengthMismatch(row_a.len(), row_b.len()));
        }
        if let Some(k) = row_a
            .iter()
            .zip(&row_b)
            .position(|(a, b)| a.is_none() && b.is_none())
        {
            return Err(AlignmentError::DoubleGapColumn(k + 1));
        }
        Ok(Alignment { row_a, row_b })
    }

    /// Parses two gapped rows over `ACGT-` (case-insensitive).
    pub fn from_rows(row_a: &str, row_b: &str) -> Result<Self, AlignmentError> {
        Alignment::new(parse_row(row_a, 'A')?, parse_row(row_b, 'B')?)
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.row_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row_a.is_empty()
    }

    pub fn row_a(&self) -> &[Option<Nucleotide>] {
        &self.row_a
    }

    pub fn row_b(&self) -> &[Option<Nucleotide>] {
        &self.row_b
    }

    pub fn row_a_string(&self) -> String {
        row_to_string(&self.row_a)
    }

    pub fn row_b_string(&self) -> String {
        row_to_string(&self.row_b)
    }

    pub fn stripped_a(&self) -> Vec<Nucleotide> {
        self.row_a.iter().flatten().copied().collect()
    }

    pub fn stripped_b(&self) -> Vec<Nucleotide> {
        self.row_b.iter().flatten().copied().collect()
    }

    /// The same alignment with the rows exchanged.
    pub fn swapped(&self) -> Alignment {
        Alignment { row_a: self.row_b.clone(), row_b: self.row_a.clone() }
    }

    /// Checks that the rows strip to `a` and `b`.
    pub fn check_against(&self, a: &CodingSequence, b: &CodingSequence) -> Result<(), AlignmentError> {
        if !self.row_a.iter().flatten().eq(a.residues().iter()) {
            return Err(AlignmentError::RowMismatch('A'));
        }
        if !self.row_b.iter().flatten().eq(b.residues().iter()) {
            return Err(AlignmentError::RowMismatch('B'));
        }
        Ok(())
    }

    /// True when no column holds a gap.
    pub fn is_gap_free(&self) -> bool {
        self.row_a.iter().chain(&self.row_b).all(Option::is_some)
    }
}

fn parse_row(row: &str, name: char) -> Result<Vec<Option<Nucleotide>>, AlignmentError> {
    let mut out = Vec::with_capacity(row.len());
    for ch in row.chars().filter(|c| !c.is_whitespace()) {
        if ch == '-' {
            out.push(None);
            continue;
        }
        match Nucleotide::from_char(ch) {
            Some(nt) => out.push(Some(nt)),
            None => {
                return Err(AlignmentError::InvalidSymbol { row: name, column: out.len() + 1, ch })
            }
        }
    }
    Ok(out)
}

pub(crate) fn row_to_string(row: &[Option<Nucleotide>]) -> String {
    row.iter().map(|c| c.map_or('-', Nucleotide::to_char)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEQ1: &str = "ATGACCGAATCCAAGCAGCCCTGGCATAAGTGGGGGAACGATTGA";

    fn protein(seq: &CodingSequence) -> String {
        seq.translate(&GeneticCode::standard()).iter().map(|a| a.to_char()).collect()
    }

    #[test]
    fn parse_strips_whitespace_and_uppercases() {
        let s = CodingSequence::parse("atg TGA", "x").unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.to_string(), "ATGTGA");
        assert_eq!(s.id(), "x");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            CodingSequence::parse("ATGA", "x"),
            Err(SequenceError::LengthNotMultipleOfThree(4))
        );
        assert_eq!(CodingSequence::parse("  \n", "x"), Err(SequenceError::EmptySequence));
        assert_eq!(
            CodingSequence::parse("ATN", "x"),
            Err(SequenceError::InvalidSymbol { position: 3, ch: 'N' })
        );
    }

    #[test]
    fn seq1_has_fifteen_codons() {
        let s = CodingSequence::parse(SEQ1, "Seq1").unwrap();
        assert_eq!(s.len(), 45);
        assert_eq!(s.codon_count(), 15);
        assert_eq!(protein(&s), "MTESKQPWHKWGND*");
    }

    #[test]
    fn standard_code_landmarks() {
        let code = GeneticCode::standard();
        let tr = |s: &str| {
            let v: Vec<_> = s.chars().map(|c| Nucleotide::from_char(c).unwrap()).collect();
            code.translate_codon([v[0], v[1], v[2]]).to_char()
        };
        assert_eq!(tr("ATG"), 'M');
        assert_eq!(tr("TGA"), '*');
        assert_eq!(tr("TAA"), '*');
        assert_eq!(tr("TAG"), '*');
        assert_eq!(tr("TGG"), 'W');
        assert_eq!(tr("TTT"), 'F');
        assert_eq!(tr("GGG"), 'G');
        assert_eq!(protein(&CodingSequence::parse("ATGTGA", "").unwrap()), "M*");
    }

    #[test]
    fn standard_code_matches_tcag_listing() {
        // The usual textbook listing, first base slowest, in TCAG order.
        const LISTING: &str = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";
        let code = GeneticCode::standard();
        let bases = "TCAG";
        for (k, expected) in LISTING.chars().enumerate() {
            let nt = |d: usize| Nucleotide::from_char(bases.as_bytes()[d] as char).unwrap();
            let codon = [nt(k / 16), nt(k / 4 % 4), nt(k % 4)];
            assert_eq!(code.translate_codon(codon).to_char(), expected);
        }
    }

    #[test]
    fn codon_ends_at_three_i() {
        let s = CodingSequence::parse("ATGTGA", "").unwrap();
        assert_eq!(s.codon(2), [Nucleotide::T, Nucleotide::G, Nucleotide::A]);
        assert_eq!(s.at(4), Nucleotide::T);
    }

    #[test]
    fn nongap_examples() {
        assert_eq!(nongap_count("AC--G"), 3);
        assert_eq!(nongap_count("---"), 0);
        assert_eq!(nongap_count("ACG"), 3);
    }

    #[test]
    fn alignment_rejects_double_gap() {
        assert_eq!(
            Alignment::from_rows("A-", "C-"),
            Err(AlignmentError::DoubleGapColumn(2))
        );
        assert!(matches!(
            Alignment::from_rows("AC", "C"),
            Err(AlignmentError::RowLengthMismatch(2, 1))
        ));
    }

    #[test]
    fn alignment_strip_check() {
        let a = CodingSequence::parse("ATGTGA", "a").unwrap();
        let b = CodingSequence::parse("ATG", "b").unwrap();
        let al = Alignment::from_rows("ATGTGA", "ATG---").unwrap();
        assert!(al.check_against(&a, &b).is_ok());
        assert_eq!(al.check_against(&b, &a), Err(AlignmentError::RowMismatch('A')));
    }
}
