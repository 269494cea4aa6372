//! Alignment by dynamic programming over columns, tracking for each
//! sequence how its currently open codon has been aligned so far.
//!
//! A codon of one sequence is matching, unmatching or an indel only if its
//! three residues were placed in three consecutive columns that were all
//! paired, or all gapped. Keeping that fact in the state of each cell lets
//! the classification of every codon be settled the moment its last residue
//! is placed, so the value of the final cell is exactly the best alignment
//! score.

use crate::model::{codon_index, Alignment, CodingSequence, GeneticCode, Nucleotide, ScoringScheme};

const NEG: f64 = f64::NEG_INFINITY;
const NO_PRED: u8 = u8::MAX;

/// Progress of the open codon of one sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Open {
    /// The last placed residue closed a codon.
    Complete,
    /// Every residue of the open codon so far was paired, in consecutive
    /// columns.
    Paired,
    /// Every residue of the open codon so far faced a gap, in consecutive
    /// columns.
    Gapped,
    /// The open codon can only end as a frameshift codon.
    Shifted,
}

/// Step kinds seen from one sequence.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Paired,
    Alone,
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Move {
    Diag = 0,
    Up = 1,
    Left = 2,
}

/// Slot of a per-sequence state. A sequence sitting on a codon boundary can
/// only be `Complete`, so three slots per sequence suffice.
#[inline]
fn slot(s: Open) -> usize {
    match s {
        Open::Complete | Open::Paired => 0,
        Open::Gapped => 1,
        Open::Shifted => 2,
    }
}

#[inline]
fn state(slot: usize, pos: usize) -> Open {
    if pos % 3 == 0 {
        Open::Complete
    } else {
        [Open::Paired, Open::Gapped, Open::Shifted][slot]
    }
}

struct Ctx<'s> {
    a: Vec<Nucleotide>,
    b: Vec<Nucleotide>,
    scheme: &'s ScoringScheme,
    codon_scores: Vec<f64>,
    ext: f64,
}

impl Ctx<'_> {
    #[inline]
    fn half_nt(&self, i: usize, j: usize) -> f64 {
        self.scheme.nt(self.a[i - 1], self.b[j - 1]) / 2.0
    }

    #[inline]
    fn half_aa(&self, i: usize, j: usize) -> f64 {
        let ca = codon_index([self.a[i - 3], self.a[i - 2], self.a[i - 1]]);
        let cb = codon_index([self.b[j - 3], self.b[j - 2], self.b[j - 1]]);
        self.codon_scores[ca * 64 + cb] / 2.0
    }

    /// Advances one sequence's state. `own` and `other` are the positions of
    /// this and the other sequence after the step.
    #[inline]
    fn advance(&self, st: Open, step: Step, own: usize, other: usize, i: usize, j: usize) -> (Open, f64) {
        if step == Step::Other {
            let next = match st {
                Open::Paired | Open::Gapped => Open::Shifted,
                s => s,
            };
            return (next, 0.0);
        }
        let half = if step == Step::Paired { self.half_nt(i, j) } else { 0.0 };
        let next = match (st, step) {
            (Open::Complete, Step::Paired) | (Open::Paired, Step::Paired) => Open::Paired,
            (Open::Complete, _) | (Open::Gapped, Step::Alone) => Open::Gapped,
            _ => Open::Shifted,
        };
        if own % 3 != 0 {
            return (next, half);
        }
        let delta = match next {
            Open::Paired => {
                // Three paired columns in a row: matching if the other
                // sequence closes a codon in the same column, otherwise
                // unmatching. The two earlier half scores were provisional.
                let mut d = self.half_aa(i, j) - self.half_nt(i - 1, j - 1) - self.half_nt(i - 2, j - 2);
                if other % 3 != 0 {
                    d += self.ext;
                }
                d
            }
            Open::Gapped => self.scheme.gap_cost,
            _ => half + self.scheme.fs_open_cost,
        };
        (Open::Complete, delta)
    }
}

/// Best score and one alignment that attains it.
pub(crate) fn align(
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> (f64, Alignment) {
    let (n, m) = (a.len(), b.len());
    let ctx = Ctx {
        a: a.residues().to_vec(),
        b: b.residues().to_vec(),
        scheme,
        codon_scores: super::codon_score_table(scheme, code),
        ext: scheme.extension_per_direction(),
    };
    let width = (m + 1) * 9;
    let mut pred = vec![NO_PRED; (n + 1) * width];
    let mut cur = vec![NEG; width];
    let mut next = vec![NEG; width];
    cur[0] = 0.0;

    for i in 0..=n {
        next.fill(NEG);
        for j in 0..=m {
            for s in 0..9 {
                let v = cur[j * 9 + s];
                if v == NEG {
                    continue;
                }
                let sa = state(s / 3, i);
                let sb = state(s % 3, j);
                let from = s as u8;
                if i < n && j < m {
                    let (na, da) = ctx.advance(sa, Step::Paired, i + 1, j + 1, i + 1, j + 1);
                    let (nb, db) = ctx.advance(sb, Step::Paired, j + 1, i + 1, i + 1, j + 1);
                    let t = (j + 1) * 9 + slot(na) * 3 + slot(nb);
                    relax(&mut next[t], &mut pred[(i + 1) * width + t], v + da + db, Move::Diag, from);
                }
                if i < n {
                    let (na, da) = ctx.advance(sa, Step::Alone, i + 1, j, i + 1, j);
                    let (nb, db) = ctx.advance(sb, Step::Other, j, i + 1, i + 1, j);
                    let t = j * 9 + slot(na) * 3 + slot(nb);
                    relax(&mut next[t], &mut pred[(i + 1) * width + t], v + da + db, Move::Up, from);
                }
                if j < m {
                    let (na, da) = ctx.advance(sa, Step::Other, i, j + 1, i, j + 1);
                    let (nb, db) = ctx.advance(sb, Step::Alone, j + 1, i, i, j + 1);
                    let t = (j + 1) * 9 + slot(na) * 3 + slot(nb);
                    relax(&mut cur[t], &mut pred[i * width + t], v + da + db, Move::Left, from);
                }
            }
        }
        if i < n {
            std::mem::swap(&mut cur, &mut next);
        }
    }
    let score = cur[m * 9];
    let alignment = trace(&ctx, &pred, width, n, m);
    (score, alignment)
}

#[inline]
fn relax(value: &mut f64, pred: &mut u8, candidate: f64, mv: Move, from: u8) {
    if candidate > *value {
        *value = candidate;
        *pred = ((mv as u8) << 4) | from;
    }
}

fn trace(ctx: &Ctx<'_>, pred: &[u8], width: usize, n: usize, m: usize) -> Alignment {
    let mut row_a = Vec::with_capacity(n + m);
    let mut row_b = Vec::with_capacity(n + m);
    let (mut i, mut j, mut s) = (n, m, 0usize);
    while (i, j) != (0, 0) {
        let p = pred[i * width + j * 9 + s];
        assert_ne!(p, NO_PRED, "unreachable cell ({i},{j}) on the optimal path");
        match p >> 4 {
            0 => {
                row_a.push(Some(ctx.a[i - 1]));
                row_b.push(Some(ctx.b[j - 1]));
                i -= 1;
                j -= 1;
            }
            1 => {
                row_a.push(Some(ctx.a[i - 1]));
                row_b.push(None);
                i -= 1;
            }
            _ => {
                row_a.push(None);
                row_b.push(Some(ctx.b[j - 1]));
                j -= 1;
            }
        }
        s = (p & 0x0f) as usize;
    }
    row_a.reverse();
    row_b.reverse();
    Alignment::new(row_a, row_b).expect("every step places at least one residue")
}
