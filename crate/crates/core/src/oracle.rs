//! Exhaustive search over all alignments of two short sequences.

use rand::Rng;
use thiserror::Error;

use crate::model::{
    AminoAcidMatrix, Alignment, CodingSequence, GeneticCode, Nucleotide, NucleotideScores, ScoringScheme,
};
use crate::scorer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n + m = {total} exceeds the enumeration budget of {max}")]
    BudgetExceeded { total: usize, max: usize },
    #[error("{count} alignments exceed the cap of {max}")]
    TooManyAlignments { count: u128, max: u128 },
}

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Maximum `n + m` in nucleotides.
    pub max_total_length: usize,
    /// Maximum number of alignments.
    pub max_alignments: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_total_length: 18, max_alignments: 2_000_000 }
    }
}

impl EnumerationBudget {
    fn check(&self, n: usize, m: usize) -> Result<(), OracleError> {
        if n + m > self.max_total_length {
            return Err(OracleError::BudgetExceeded { total: n + m, max: self.max_total_length });
        }
        let count = delannoy(n, m);
        if count > self.max_alignments {
            return Err(OracleError::TooManyAlignments { count, max: self.max_alignments });
        }
        Ok(())
    }
}

/// Number of alignments of sequences of lengths `n` and `m`.
///
/// ```
/// assert_eq!(fsalign::oracle::delannoy(3, 3), 63);
/// ```
pub fn delannoy(n: usize, m: usize) -> u128 {
    let mut row = vec![1u128; m + 1];
    for _ in 1..=n {
        let mut diag = row[0];
        for j in 1..=m {
            let up = row[j];
            row[j] = up + row[j - 1] + diag;
            diag = up;
        }
    }
    row[m]
}

/// Streams every alignment of `a` and `b` once, in depth-first order
/// (paired column, then `A` over a gap, then a gap over `B`).
pub fn enumerate_alignments(
    a: &CodingSequence,
    b: &CodingSequence,
    budget: EnumerationBudget,
) -> Result<AlignmentStream, OracleError> {
    budget.check(a.len(), b.len())?;
    Ok(AlignmentStream::new(a.residues().to_vec(), b.residues().to_vec()))
}

/// Iterator over alignments; see [`enumerate_alignments`].
pub struct AlignmentStream {
    walker: Walker,
}

impl AlignmentStream {
    fn new(a: Vec<Nucleotide>, b: Vec<Nucleotide>) -> Self {
        AlignmentStream { walker: Walker::new(a, b) }
    }
}

impl Iterator for AlignmentStream {
    type Item = Alignment;

    fn next(&mut self) -> Option<Alignment> {
        if !self.walker.advance() {
            return None;
        }
        let (ra, rb) = self.walker.rows();
        Some(Alignment::new(ra.to_vec(), rb.to_vec()).expect("walker never emits a double gap"))
    }
}

/// Depth-first walk over the alignment lattice with an explicit stack.
struct Walker {
    a: Vec<Nucleotide>,
    b: Vec<Nucleotide>,
    row_a: Vec<Option<Nucleotide>>,
    row_b: Vec<Option<Nucleotide>>,
    /// Next move to try at each depth: 0 paired, 1 A only, 2 B only, 3 done.
    moves: Vec<u8>,
    i: usize,
    j: usize,
    started: bool,
}

impl Walker {
    fn new(a: Vec<Nucleotide>, b: Vec<Nucleotide>) -> Self {
        let cap = a.len() + b.len();
        Walker {
            a,
            b,
            row_a: Vec::with_capacity(cap),
            row_b: Vec::with_capacity(cap),
            moves: Vec::with_capacity(cap + 1),
            i: 0,
            j: 0,
            started: false,
        }
    }

    fn rows(&self) -> (&[Option<Nucleotide>], &[Option<Nucleotide>]) {
        (&self.row_a, &self.row_b)
    }

    /// Moves to the next complete alignment. Returns false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.moves.push(0);
        } else if !self.backtrack() {
            return false;
        }
        let (n, m) = (self.a.len(), self.b.len());
        loop {
            if self.i == n && self.j == m {
                return true;
            }
            let depth = self.moves.len() - 1;
            let mv = self.moves[depth];
            let applied = match mv {
                0 if self.i < n && self.j < m => {
                    self.row_a.push(Some(self.a[self.i]));
                    self.row_b.push(Some(self.b[self.j]));
                    self.i += 1;
                    self.j += 1;
                    true
                }
                1 if self.i < n => {
                    self.row_a.push(Some(self.a[self.i]));
                    self.row_b.push(None);
                    self.i += 1;
                    true
                }
                2 if self.j < m => {
                    self.row_a.push(None);
                    self.row_b.push(Some(self.b[self.j]));
                    self.j += 1;
                    true
                }
                _ => false,
            };
            if applied {
                self.moves[depth] = mv + 1;
                self.moves.push(0);
            } else if mv < 2 {
                self.moves[depth] = mv + 1;
            } else if !self.backtrack() {
                return false;
            }
        }
    }

    /// Pops the frame at the top of the stack and undoes the column that led
    /// to it. Returns false at the root.
    fn backtrack(&mut self) -> bool {
        self.moves.pop();
        if self.moves.is_empty() {
            return false;
        }
        let a = self.row_a.pop().expect("one column per frame");
        let b = self.row_b.pop().expect("one column per frame");
        if a.is_some() {
            self.i -= 1;
        }
        if b.is_some() {
            self.j -= 1;
        }
        true
    }
}

/// Best score over every alignment, and the first alignment reaching it.
pub fn brute_force_optimum(
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
    budget: EnumerationBudget,
) -> Result<(f64, Alignment), OracleError> {
    budget.check(a.len(), b.len())?;
    let mut walker = Walker::new(a.residues().to_vec(), b.residues().to_vec());
    let mut best = f64::NEG_INFINITY;
    let mut witness = None;
    while walker.advance() {
        let (ra, rb) = walker.rows();
        let s = scorer::score_rows(ra, rb, scheme, code);
        if s > best {
            best = s;
            witness = Some((ra.to_vec(), rb.to_vec()));
        }
    }
    let (ra, rb) = witness.expect("at least one alignment exists");
    Ok((best, Alignment::new(ra, rb).expect("walker never emits a double gap")))
}

/// A random symmetric scheme with every score and cost drawn from
/// half-integers in `[-4, 4]`, for campaigns against [`brute_force_optimum`].
pub fn random_scheme<R: Rng + ?Sized>(rng: &mut R) -> ScoringScheme {
    let mut half = || f64::from(rng.gen_range(-8i32..=8)) / 2.0;
    let mut aa = [[0.0; 21]; 21];
    for x in 0..21 {
        for y in x..21 {
            let v = half();
            aa[x][y] = v;
            aa[y][x] = v;
        }
    }
    let mut nt = [[0.0; 4]; 4];
    for x in 0..4 {
        for y in x..4 {
            let v = half();
            nt[x][y] = v;
            nt[y][x] = v;
        }
    }
    ScoringScheme::new(
        AminoAcidMatrix::new(aa).expect("symmetric by construction"),
        NucleotideScores::new(nt).expect("symmetric by construction"),
        half(),
        half(),
        half(),
    )
    .expect("finite by construction")
}

/// A uniformly random coding sequence of `codons` codons.
pub fn random_sequence<R: Rng + ?Sized>(rng: &mut R, codons: usize, id: &str) -> CodingSequence {
    let residues = (0..3 * codons).map(|_| Nucleotide::ALL[rng.gen_range(0..4)]).collect();
    CodingSequence::from_residues(residues, id).expect("non-empty multiple of three")
}

/// Outcome of [`campaign`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CampaignSummary {
    pub pairs: usize,
    pub schemes: usize,
    /// Pairs where the default engine missed the exhaustive optimum.
    pub exact_mismatches: Vec<CampaignMismatch>,
    /// Pairs where the two-table engine missed the exhaustive optimum.
    pub two_table_mismatches: Vec<CampaignMismatch>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignMismatch {
    pub scheme: usize,
    pub a: String,
    pub b: String,
    pub optimum: f64,
    pub reported: f64,
}

/// Compares both engines with exhaustive search on `pairs` random pairs of
/// 1 to 3 codons each, cycling through `schemes` random schemes. Pairs are
/// checked in parallel; the result does not depend on thread count.
pub fn campaign(pairs: usize, schemes: usize, seed: u64) -> CampaignSummary {
    use rand::SeedableRng;
    use rayon::prelude::*;

    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let schemes_v: Vec<ScoringScheme> = (0..schemes.max(1)).map(|_| random_scheme(&mut rng)).collect();
    let inputs: Vec<(usize, CodingSequence, CodingSequence)> = (0..pairs)
        .map(|k| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            (k % schemes_v.len(), random_sequence(&mut rng, n, "a"), random_sequence(&mut rng, m, "b"))
        })
        .collect();
    let code = GeneticCode::standard();
    let results: Vec<(Option<CampaignMismatch>, Option<CampaignMismatch>)> = inputs
        .par_iter()
        .map(|(si, a, b)| {
            let scheme = &schemes_v[*si];
            let (optimum, _) = brute_force_optimum(a, b, scheme, &code, EnumerationBudget::default())
                .expect("pairs are inside the default budget");
            let check = |reported: f64| {
                (reported != optimum).then(|| CampaignMismatch {
                    scheme: *si,
                    a: a.to_string(),
                    b: b.to_string(),
                    optimum,
                    reported,
                })
            };
            let exact = crate::dp::optimal_score(a, b, scheme, &code);
            let table = crate::dp::DpState::filled(a, b, scheme, &code).score();
            (check(exact), check(table))
        })
        .collect();
    let mut summary = CampaignSummary { pairs, schemes: schemes_v.len(), ..Default::default() };
    for (e, t) in results {
        summary.exact_mismatches.extend(e);
        summary.two_table_mismatches.extend(t);
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn seq(s: &str) -> CodingSequence {
        CodingSequence::parse(s, "").unwrap()
    }

    #[test]
    fn delannoy_values() {
        assert_eq!(delannoy(1, 1), 3);
        assert_eq!(delannoy(3, 3), 63);
        assert_eq!(delannoy(9, 9), 1_462_563);
        assert_eq!(delannoy(0, 5), 1);
    }

    #[test]
    fn stream_is_complete_and_distinct() {
        for (x, y) in [("ATG", "CCC"), ("ATG", "ATGTGA"), ("ATGTGA", "CCA")] {
            let (a, b) = (seq(x), seq(y));
            let all: Vec<_> = enumerate_alignments(&a, &b, EnumerationBudget::default())
                .unwrap()
                .collect();
            assert_eq!(all.len() as u128, delannoy(a.len(), b.len()));
            let distinct: HashSet<_> =
                all.iter().map(|al| (al.row_a_string(), al.row_b_string())).collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.iter().all(|al| al.check_against(&a, &b).is_ok()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = seq("ATGATGATGATG");
        let err = enumerate_alignments(&a, &a, EnumerationBudget::default()).err();
        assert_eq!(err, Some(OracleError::BudgetExceeded { total: 24, max: 18 }));
        let tight = EnumerationBudget { max_total_length: 100, max_alignments: 10 };
        assert!(matches!(
            brute_force_optimum(&seq("ATG"), &seq("ATG"), &ScoringScheme::standard(), &GeneticCode::standard(), tight),
            Err(OracleError::TooManyAlignments { count: 63, max: 10 })
        ));
    }

    #[test]
    fn identity_optimum() {
        let a = seq("ATG");
        let scheme = ScoringScheme::standard();
        let (score, witness) =
            brute_force_optimum(&a, &a, &scheme, &GeneticCode::standard(), EnumerationBudget::default())
                .unwrap();
        assert_eq!(score, 5.0);
        assert!(witness.is_gap_free());
    }
}
