use thiserror::Error;

use super::{AminoAcid, Nucleotide};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("{0} must be a finite number")]
    NonFinite(&'static str),
    #[error("score for ({0}, {1}) differs from ({1}, {0})")]
    Asymmetric(char, char),
}

/// Symmetric amino-acid substitution scores over the 20 residues and `*`.
#[derive(Clone, Debug, PartialEq)]
pub struct AminoAcidMatrix {
    scores: [[f64; 21]; 21],
}

impl AminoAcidMatrix {
    pub fn new(scores: [[f64; 21]; 21]) -> Result<Self, SchemeError> {
        for x in AminoAcid::all() {
            for y in AminoAcid::all() {
                let v = scores[x.index()][y.index()];
                if !v.is_finite() {
                    return Err(SchemeError::NonFinite("amino-acid score"));
                }
                if v != scores[y.index()][x.index()] {
                    return Err(SchemeError::Asymmetric(x.to_char(), y.to_char()));
                }
            }
        }
        Ok(AminoAcidMatrix { scores })
    }

    /// The bundled NCBI BLOSUM62 matrix.
    pub fn blosum62() -> Self {
        crate::io::matrix::blosum62()
    }

    #[inline]
    pub fn score(&self, x: AminoAcid, y: AminoAcid) -> f64 {
        self.scores[x.index()][y.index()]
    }

    pub fn scores(&self) -> &[[f64; 21]; 21] {
        &self.scores
    }
}

/// Symmetric nucleotide scores.
#[derive(Clone, Debug, PartialEq)]
pub struct NucleotideScores {
    scores: [[f64; 4]; 4],
}

impl NucleotideScores {
    pub fn match_mismatch(matching: f64, mismatching: f64) -> Result<Self, SchemeError> {
        let mut scores = [[mismatching; 4]; 4];
        for (k, row) in scores.iter_mut().enumerate() {
            row[k] = matching;
        }
        NucleotideScores::new(scores)
    }

    pub fn new(scores: [[f64; 4]; 4]) -> Result<Self, SchemeError> {
        for x in Nucleotide::ALL {
            for y in Nucleotide::ALL {
                let v = scores[x.index()][y.index()];
                if !v.is_finite() {
                    return Err(SchemeError::NonFinite("nucleotide score"));
                }
                if v != scores[y.index()][x.index()] {
                    return Err(SchemeError::Asymmetric(x.to_char(), y.to_char()));
                }
            }
        }
        Ok(NucleotideScores { scores })
    }

    #[inline]
    pub fn score(&self, x: Nucleotide, y: Nucleotide) -> f64 {
        self.scores[x.index()][y.index()]
    }
}

/// How much of `fs_extension_cost` each direction is charged for one
/// unmatching codon.
///
/// `Split` charges half of it per direction, together with the half
/// amino-acid score of that codon, so a codon pair scored from both sides
/// costs one extension in total. This is the convention under which the
/// published example scores are reproduced. `Full` charges the whole cost in
/// every direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExtensionCharge {
    #[default]
    Split,
    Full,
}

impl ExtensionCharge {
    pub fn weight(self) -> f64 {
        match self {
            ExtensionCharge::Split => 0.5,
            ExtensionCharge::Full => 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoringScheme {
    pub amino: AminoAcidMatrix,
    pub nucleotide: NucleotideScores,
    pub gap_cost: f64,
    pub fs_open_cost: f64,
    pub fs_extension_cost: f64,
    pub extension_charge: ExtensionCharge,
}

impl ScoringScheme {
    pub fn new(
        amino: AminoAcidMatrix,
        nucleotide: NucleotideScores,
        gap_cost: f64,
        fs_open_cost: f64,
        fs_extension_cost: f64,
    ) -> Result<Self, SchemeError> {
        for (name, v) in [
            ("gap cost", gap_cost),
            ("frameshift opening cost", fs_open_cost),
            ("frameshift extension cost", fs_extension_cost),
        ] {
            if !v.is_finite() {
                return Err(SchemeError::NonFinite(name));
            }
        }
        Ok(ScoringScheme {
            amino,
            nucleotide,
            gap_cost,
            fs_open_cost,
            fs_extension_cost,
            extension_charge: ExtensionCharge::default(),
        })
    }

    /// BLOSUM62, +1/-1 nucleotide scores, gap -1, frameshift opening -2,
    /// frameshift extension -1.
    pub fn standard() -> Self {
        ScoringScheme::new(
            AminoAcidMatrix::blosum62(),
            NucleotideScores::match_mismatch(1.0, -1.0).expect("finite"),
            -1.0,
            -2.0,
            -1.0,
        )
        .expect("finite")
    }

    pub fn with_extension_charge(mut self, charge: ExtensionCharge) -> Self {
        self.extension_charge = charge;
        self
    }

    /// Extension amount charged to one direction for one unmatching codon.
    #[inline]
    pub fn extension_per_direction(&self) -> f64 {
        self.fs_extension_cost * self.extension_charge.weight()
    }

    #[inline]
    pub fn nt(&self, x: Nucleotide, y: Nucleotide) -> f64 {
        self.nucleotide.score(x, y)
    }

    #[inline]
    pub fn aa(&self, x: AminoAcid, y: AminoAcid) -> f64 {
        self.amino.score(x, y)
    }
}
