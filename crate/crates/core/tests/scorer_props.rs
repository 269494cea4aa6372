mod common;

use common::*;
use fsalign::model::{Alignment, CodingSequence, GeneticCode, Nucleotide, ScoringScheme};
use fsalign::oracle::{self, enumerate_alignments, EnumerationBudget};
use fsalign::scorer::{classify, score_alignment};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// A random pair of coding sequences and a random alignment of them,
/// described by a move list (0 paired, 1 A only, 2 B only).
fn aligned_pair() -> impl Strategy<Value = (CodingSequence, CodingSequence, Alignment)> {
    (1..6usize, 1..6usize, any::<u64>()).prop_map(|(n, m, seed)| {
        use rand::Rng;
        let mut rng = StdRng::seed_from_u64(seed);
        let a = oracle::random_sequence(&mut rng, n, "a");
        let b = oracle::random_sequence(&mut rng, m, "b");
        let (mut i, mut j) = (0, 0);
        let (mut ra, mut rb) = (Vec::new(), Vec::new());
        while i < a.len() || j < b.len() {
            let mv = rng.gen_range(0..3);
            if mv == 0 && i < a.len() && j < b.len() {
                ra.push(Some(a.at(i + 1)));
                rb.push(Some(b.at(j + 1)));
                i += 1;
                j += 1;
            } else if mv != 2 && i < a.len() {
                ra.push(Some(a.at(i + 1)));
                rb.push(None);
                i += 1;
            } else if j < b.len() {
                ra.push(None);
                rb.push(Some(b.at(j + 1)));
                j += 1;
            }
        }
        (a, b, Alignment::new(ra, rb).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_codon_counted_once((a, b, al) in aligned_pair()) {
        let c = classify(&al, &a, &b).unwrap();
        for (sets, len) in [(&c.a_to_b, a.codon_count()), (&c.b_to_a, b.codon_count())] {
            prop_assert_eq!(sets.matching.len() + sets.unmatching.len() + sets.indel.len() + sets.fs_codon_count, len);
            prop_assert_eq!(sets.fs_minus.len() + sets.fs_plus.len(), sets.fs_codon_count);
            let mut ends: Vec<usize> = sets.matching.iter().chain(&sets.unmatching).chain(&sets.indel).copied().collect();
            ends.sort();
            ends.dedup();
            prop_assert_eq!(ends.len(), sets.matching.len() + sets.unmatching.len() + sets.indel.len());
            prop_assert!(ends.iter().all(|&k| (3..=al.len()).contains(&k)));
            for &k in &sets.mfs {
                prop_assert!(al.row_a()[k - 1].is_some() && al.row_b()[k - 1].is_some());
                prop_assert!(!ends.iter().any(|&e| e - 2 <= k && k <= e));
            }
        }
    }

    #[test]
    fn matching_is_mutual((a, b, al) in aligned_pair()) {
        let c = classify(&al, &a, &b).unwrap();
        prop_assert_eq!(&c.a_to_b.matching, &c.b_to_a.matching);
    }

    #[test]
    fn swapping_rows_swaps_directions((a, b, al) in aligned_pair(), seed in any::<u64>()) {
        let scheme = oracle::random_scheme(&mut StdRng::seed_from_u64(seed));
        let code = GeneticCode::standard();
        let s = score_alignment(&al, &a, &b, &scheme, &code).unwrap();
        let t = score_alignment(&al.swapped(), &b, &a, &scheme, &code).unwrap();
        prop_assert_eq!(s.total, t.total);
        prop_assert_eq!(s.a_to_b, t.b_to_a);
        prop_assert_eq!(s.score_a + s.score_b, s.total);
    }

    #[test]
    fn prefixing_a_matched_codon_shifts_columns((a, b, al) in aligned_pair()) {
        let atg = [Nucleotide::A, Nucleotide::T, Nucleotide::G];
        let pre = |row: &[Option<Nucleotide>]| atg.iter().map(|&x| Some(x)).chain(row.iter().copied()).collect::<Vec<_>>();
        let pre_seq = |s: &CodingSequence| CodingSequence::from_residues(atg.iter().copied().chain(s.residues().iter().copied()).collect(), "p").unwrap();
        let al2 = Alignment::new(pre(al.row_a()), pre(al.row_b())).unwrap();
        let c = classify(&al, &a, &b).unwrap();
        let c2 = classify(&al2, &pre_seq(&a), &pre_seq(&b)).unwrap();
        let shift = |v: &[usize]| v.iter().map(|k| k + 3).collect::<Vec<_>>();
        let mut m = vec![3];
        m.extend(shift(&c.a_to_b.matching));
        prop_assert_eq!(c2.a_to_b.matching, m);
        prop_assert_eq!(c2.a_to_b.unmatching, shift(&c.a_to_b.unmatching));
        prop_assert_eq!(c2.b_to_a.mfs, shift(&c.b_to_a.mfs));
    }
}

#[test]
fn rescoring_any_enumerated_alignment_is_bounded_by_optimum() {
    let a = seq("ATGAAC", "a");
    let b = seq("ATGCAC", "b");
    let scheme = ScoringScheme::standard();
    let code = GeneticCode::standard();
    let best = fsalign::dp::optimal_score(&a, &b, &scheme, &code);
    let mut count = 0;
    let mut hit = false;
    for al in enumerate_alignments(&a, &b, EnumerationBudget::default()).unwrap() {
        let s = score_alignment(&al, &a, &b, &scheme, &code).unwrap().total;
        assert!(s <= best);
        hit |= s == best;
        count += 1;
    }
    assert!(hit);
    assert_eq!(count, 8989);
}

#[test]
fn row_mismatch_is_reported() {
    let al = Alignment::from_rows("ATG", "ATG").unwrap();
    let err = classify(&al, &seq("ATG", "a"), &seq("ATC", "b")).unwrap_err();
    assert_eq!(err.to_string(), "row B does not strip to the given sequence");
}

#[test]
fn seq1_display_classification() {
    let row1 = format!("{SEQ1}----------------");
    let row2 = "ATGACCGAATCCAAGCAGCCCTGGCATAA-TGGGGGAACGATTGAAGTAGGAACGATTTAA";
    let al = Alignment::from_rows(&row1, row2).unwrap();
    let c = classify(&al, &seq(SEQ1, "1"), &seq(SEQ2, "2")).unwrap();
    assert_eq!(c.a_to_b.matching, vec![3, 6, 9, 12, 15, 18, 21, 24, 27]);
    assert_eq!(c.a_to_b.unmatching, vec![33, 36, 39, 42, 45]);
    assert_eq!(c.b_to_a.fs_plus, vec![10]);
    assert_eq!(c.b_to_a.fs_minus, vec![15]);
    assert_eq!(c.b_to_a.indel, vec![49, 52, 55, 58, 61]);
}
