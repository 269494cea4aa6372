#![allow(dead_code)]

use std::path::PathBuf;

use fsalign::io::fasta;
use fsalign::model::{Alignment, CodingSequence, ExtensionCharge, ScoringScheme};

pub const SEQ1: &str = "ATGACCGAATCCAAGCAGCCCTGGCATAAGTGGGGGAACGATTGA";
pub const SEQ2: &str = "ATGACCGAATCCAAGCAGCCCTGGCATAATGGGGGAACGATTGAAGTAGGAACGATTTAA";
pub const SEQ3: &str = "ATGACCGAATCCAACAGCCCTGGCATAAGTGGGGGAACGATTGAAGTAGGAACGATTTAA";

/// The 48-column worked example with its published codon sets.
pub const EXAMPLE_ROW_A: &str = "ATGACCGAATCCAAG--CAGCCCTGGCCAG---AT---CAACG-TTGA";
pub const EXAMPLE_ROW_B: &str = "ATG---GAGTCGAAGATCAGC--TGG-CAGGCCATTGGCAATGACTGA";

pub fn seq(s: &str, id: &str) -> CodingSequence {
    CodingSequence::parse(s, id).unwrap()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// The published alignment of the FAM86 pair, and the two sequences.
pub fn fam86() -> (Alignment, CodingSequence, CodingSequence) {
    fasta::read_alignment(data_path("fam86_alignment.fa")).unwrap()
}

pub struct Fixture {
    pub kind: String,
    pub scheme: ScoringScheme,
    pub a: CodingSequence,
    pub b: CodingSequence,
    /// Best score over all alignments.
    pub optimum: f64,
    /// Value of `D(n, m)` from the two-table recurrence.
    pub two_table: f64,
}

/// Pairs with known optima under the standard scheme, generated by an
/// independent implementation. Small pairs were solved by exhaustive search.
pub fn fixtures() -> Vec<Fixture> {
    let text = std::fs::read_to_string(data_path("oracle_fixtures.tsv")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let charge = match f[1] {
                "full" => ExtensionCharge::Full,
                _ => ExtensionCharge::Split,
            };
            Fixture {
                kind: f[0].to_string(),
                scheme: ScoringScheme::standard().with_extension_charge(charge),
                a: seq(f[2], "a"),
                b: seq(f[3], "b"),
                optimum: f[4].parse().unwrap(),
                two_table: f[5].parse().unwrap(),
            }
        })
        .collect()
}
