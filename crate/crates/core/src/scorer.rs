//! Codon classification and alignment scoring.
//!
//! Scores are computed directly from an alignment. No dynamic programming
//! is involved, so this module serves as the reference the aligners are
//! checked against.

use serde::Serialize;

use crate::model::{
    codon_index, Alignment, AlignmentError, CodingSequence, GeneticCode, Nucleotide, ScoringScheme,
};

/// Codon categories for one sequence of the alignment, all columns 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DirectionSets {
    /// End columns of grouped codons facing a grouped codon of the other
    /// sequence.
    pub matching: Vec<usize>,
    /// End columns of grouped codons facing three nucleotides that do not
    /// form a codon of the other sequence.
    pub unmatching: Vec<usize>,
    /// End columns of grouped codons facing three gaps.
    pub indel: Vec<usize>,
    /// Columns where a nucleotide outside every codon above faces a
    /// nucleotide.
    pub mfs: Vec<usize>,
    pub fs_codon_count: usize,
    /// Indices (1-based) of frameshift codons that are grouped.
    pub fs_minus: Vec<usize>,
    /// Indices (1-based) of frameshift codons that are not grouped.
    pub fs_plus: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CodonClassification {
    pub a_to_b: DirectionSets,
    pub b_to_a: DirectionSets,
}

/// Score contributions of one direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct DirectionScore {
    pub matching_total: f64,
    /// Half amino-acid scores of unmatching codons plus their extension
    /// charges.
    pub unmatching_total: f64,
    pub indel_total: f64,
    pub fs_open_total: f64,
    pub mfs_total: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    pub a_to_b: DirectionScore,
    pub b_to_a: DirectionScore,
    pub score_a: f64,
    pub score_b: f64,
    pub total: f64,
}

/// Classifies every codon of `a` and `b` within `alignment`.
pub fn classify(
    alignment: &Alignment,
    a: &CodingSequence,
    b: &CodingSequence,
) -> Result<CodonClassification, AlignmentError> {
    alignment.check_against(a, b)?;
    Ok(classify_rows(alignment.row_a(), alignment.row_b()))
}

pub fn score_alignment(
    alignment: &Alignment,
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> Result<ScoreBreakdown, AlignmentError> {
    alignment.check_against(a, b)?;
    let classes = classify_rows(alignment.row_a(), alignment.row_b());
    Ok(breakdown(alignment.row_a(), alignment.row_b(), &classes, scheme, code))
}

pub(crate) fn classify_rows(
    row_a: &[Option<Nucleotide>],
    row_b: &[Option<Nucleotide>],
) -> CodonClassification {
    CodonClassification {
        a_to_b: classify_direction(row_a, row_b),
        b_to_a: classify_direction(row_b, row_a),
    }
}

/// Scores rows that are already known to be a valid alignment.
pub(crate) fn score_rows(
    row_a: &[Option<Nucleotide>],
    row_b: &[Option<Nucleotide>],
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> f64 {
    let classes = classify_rows(row_a, row_b);
    breakdown(row_a, row_b, &classes, scheme, code).total
}

pub(crate) fn breakdown(
    row_a: &[Option<Nucleotide>],
    row_b: &[Option<Nucleotide>],
    classes: &CodonClassification,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> ScoreBreakdown {
    let a_to_b = score_direction(row_a, row_b, &classes.a_to_b, scheme, code);
    let b_to_a = score_direction(row_b, row_a, &classes.b_to_a, scheme, code);
    ScoreBreakdown {
        a_to_b,
        b_to_a,
        score_a: a_to_b.total,
        score_b: b_to_a.total,
        total: a_to_b.total + b_to_a.total,
    }
}

fn classify_direction(own: &[Option<Nucleotide>], other: &[Option<Nucleotide>]) -> DirectionSets {
    let own_cols = nucleotide_columns(own);
    let other_grouped_ends: Vec<bool> = grouped_end_mask(&nucleotide_columns(other), own.len());

    let mut sets = DirectionSets::default();
    let mut covered = vec![false; own.len() + 1];
    for (t, codon) in own_cols.chunks_exact(3).enumerate() {
        let (first, last) = (codon[0], codon[2]);
        if last != first + 2 {
            sets.fs_plus.push(t + 1);
            continue;
        }
        let facing = (last - 2..=last).filter(|&k| other[k - 1].is_some()).count();
        if other_grouped_ends[last] {
            sets.matching.push(last);
        } else if facing == 3 {
            debug_assert!(other[last - 3..last].iter().all(Option::is_some));
            sets.unmatching.push(last);
        } else if facing == 0 {
            sets.indel.push(last);
        } else {
            sets.fs_minus.push(t + 1);
            continue;
        }
        covered[last - 2..=last].iter_mut().for_each(|c| *c = true);
    }
    sets.mfs = (1..=own.len())
        .filter(|&k| !covered[k] && own[k - 1].is_some() && other[k - 1].is_some())
        .collect();
    sets.fs_codon_count = sets.fs_minus.len() + sets.fs_plus.len();
    debug_assert_eq!(
        sets.matching.len() + sets.unmatching.len() + sets.indel.len() + sets.fs_codon_count,
        own_cols.len() / 3
    );
    sets
}

fn score_direction(
    own: &[Option<Nucleotide>],
    other: &[Option<Nucleotide>],
    sets: &DirectionSets,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> DirectionScore {
    let half_aa = |k: usize| {
        let x = window(own, k);
        let y = window(other, k);
        scheme.aa(code.translate_index(x), code.translate_index(y)) / 2.0
    };
    let mut s = DirectionScore::default();
    for &k in &sets.matching {
        s.matching_total += half_aa(k);
    }
    for &k in &sets.unmatching {
        s.unmatching_total += half_aa(k) + scheme.extension_per_direction();
    }
    s.indel_total = sets.indel.len() as f64 * scheme.gap_cost;
    s.fs_open_total = sets.fs_codon_count as f64 * scheme.fs_open_cost;
    for &k in &sets.mfs {
        let (x, y) = (own[k - 1].unwrap(), other[k - 1].unwrap());
        s.mfs_total += scheme.nt(x, y) / 2.0;
    }
    s.total = s.matching_total + s.unmatching_total + s.indel_total + s.fs_open_total + s.mfs_total;
    s
}

/// Codon index of the three gap-free columns ending at `k`.
fn window(row: &[Option<Nucleotide>], k: usize) -> usize {
    let w = &row[k - 3..k];
    codon_index([w[0].unwrap(), w[1].unwrap(), w[2].unwrap()])
}

fn nucleotide_columns(row: &[Option<Nucleotide>]) -> Vec<usize> {
    row.iter()
        .enumerate()
        .filter_map(|(k, c)| c.map(|_| k + 1))
        .collect()
}

fn grouped_end_mask(cols: &[usize], len: usize) -> Vec<bool> {
    let mut mask = vec![false; len + 1];
    for codon in cols.chunks_exact(3) {
        if codon[2] == codon[0] + 2 {
            mask[codon[2]] = true;
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AminoAcid, ExtensionCharge};

    fn seq(s: &str) -> CodingSequence {
        CodingSequence::parse(s, "").unwrap()
    }

    fn strip(row: &str) -> CodingSequence {
        seq(&row.replace('-', ""))
    }

    fn score(row_a: &str, row_b: &str, scheme: &ScoringScheme) -> ScoreBreakdown {
        let al = Alignment::from_rows(row_a, row_b).unwrap();
        score_alignment(&al, &strip(row_a), &strip(row_b), scheme, &GeneticCode::standard())
            .unwrap()
    }

    #[test]
    fn worked_example_sets() {
        let row_a = "ATGACCGAATCCAAG--CAGCCCTGGCCAG---AT---CAACG-TTGA";
        let row_b = "ATG---GAGTCGAAGATCAGC--TGG-CAGGCCATTGGCAATGACTGA";
        let al = Alignment::from_rows(row_a, row_b).unwrap();
        let c = classify(&al, &strip(row_a), &strip(row_b)).unwrap();
        assert_eq!(c.a_to_b.matching, vec![3, 9, 12, 15, 26, 48]);
        assert_eq!(c.a_to_b.unmatching, vec![20, 41]);
        assert_eq!(c.a_to_b.indel, vec![6]);
        assert_eq!(c.a_to_b.mfs, vec![21, 28, 29, 30, 34, 35, 42, 43, 45]);
        assert_eq!(c.b_to_a.matching, vec![3, 9, 12, 15, 26, 48]);
        assert_eq!(c.b_to_a.unmatching, vec![21, 30, 42]);
        assert_eq!(c.b_to_a.indel, vec![33]);
        assert_eq!(c.b_to_a.mfs, vec![18, 34, 35, 39, 43, 45]);
    }

    #[test]
    fn single_identical_codon() {
        let b = score("ATG", "ATG", &ScoringScheme::standard());
        let mm = ScoringScheme::standard().aa(AminoAcid::from_char('M').unwrap(), AminoAcid::from_char('M').unwrap());
        assert_eq!(b.total, mm);
        assert_eq!(b.score_a, mm / 2.0);
    }

    #[test]
    fn deleted_codon_is_indel() {
        let al = Alignment::from_rows("ATGTGA", "ATG---").unwrap();
        let c = classify(&al, &seq("ATGTGA"), &seq("ATG")).unwrap();
        assert_eq!(c.a_to_b.matching, vec![3]);
        assert_eq!(c.a_to_b.indel, vec![6]);
        assert_eq!(c.b_to_a.matching, vec![3]);
        assert!(c.b_to_a.indel.is_empty());
        assert_eq!(c.a_to_b.fs_codon_count + c.b_to_a.fs_codon_count, 0);
    }

    #[test]
    fn published_alignments_rescore() {
        let seq1 = "ATGACCGAATCCAAGCAGCCCTGGCATAAGTGGGGGAACGATTGA----------------";
        let seq2 = "ATGACCGAATCCAAGCAGCCCTGGCATAA-TGGGGGAACGATTGAAGTAGGAACGATTTAA";
        let seq3 = "ATGACCGAATCCAA-CAGCCCTGGCATAAGTGGGGGAACGATTGAAGTAGGAACGATTTAA";
        let s = ScoringScheme::standard();
        assert_eq!(score(seq1, seq2, &s).total, 68.5);
        assert_eq!(score(seq1, seq3, &s).total, 58.0);
        // Nine unmatching codon halves, each charged another -0.5.
        let full = s.with_extension_charge(ExtensionCharge::Full);
        assert_eq!(score(seq1, seq2, &full).total, 64.0);
    }

    #[test]
    fn frameshift_codons_split_by_grouping() {
        // B's second codon AAT is broken by a gap: not grouped.
        let al = Alignment::from_rows("ATGAAGT", "ATGAA-T").unwrap();
        let c = classify_rows(al.row_a(), al.row_b());
        assert_eq!(c.b_to_a.fs_plus, vec![2]);
        assert!(c.b_to_a.fs_minus.is_empty());
    }
}
