//! Global alignment of protein-coding DNA sequences that scores codons by
//! their translation and charges frameshifts twice: once when a codon is
//! broken up, and again for every codon read in a shifted frame.
//!
//! ```
//! use fsalign::{align, CodingSequence, GeneticCode, ScoringScheme};
//!
//! let a = CodingSequence::parse("ATGAAACGCATTAGC", "a").unwrap();
//! let b = CodingSequence::parse("ATGAACGCATTAGCA", "b").unwrap();
//! let result = align(&a, &b, &ScoringScheme::standard(), &GeneticCode::standard()).unwrap();
//! assert_eq!(result.score, result.breakdown.total);
//! ```

pub mod cli;
pub mod dp;
pub mod io;
pub mod model;
pub mod oracle;
pub mod scorer;

pub use dp::{align, align_with, AlignResult, Engine};
pub use model::{
    Alignment, AminoAcid, AminoAcidMatrix, CodingSequence, ExtensionCharge, GeneticCode, Nucleotide,
    NucleotideScores, ScoringScheme,
};
pub use scorer::{classify, score_alignment, CodonClassification, ScoreBreakdown};
