//! The two-table recurrence: table `D` of best prefix scores and the
//! lookahead table `D_F`, filled row by row with per-cell provenance.

use thiserror::Error;

use super::cases::{Case, CaseGroup, CaseId, Col, Table, Term};
use crate::model::{codon_index, Alignment, CodingSequence, GeneticCode, Nucleotide, ScoringScheme};

const NEG: f64 = f64::NEG_INFINITY;
const UNSET: u8 = u8::MAX;
const BOUNDARY: u8 = u8::MAX - 1;
const ANCHOR: u8 = u8::MAX - 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("D_F({i},{j}) is outside the table's domain")]
pub struct UndefinedCell {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TracebackError {
    #[error("traceback reached cell ({i},{j}) of table {table} without a recorded case")]
    CorruptProvenance { table: &'static str, i: usize, j: usize },
    #[error("traceback did not terminate")]
    NoProgress,
}

/// How a populated cell got its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// First row or column of D, set by the initialization formula.
    Boundary,
    /// A D_F cell on a double codon boundary, equal to D.
    Anchor,
    Case(CaseId),
}

/// Tables `D` and `D_F` for one pair of sequences.
pub struct DpState<'a> {
    a: &'a CodingSequence,
    b: &'a CodingSequence,
    scheme: &'a ScoringScheme,
    n: usize,
    m: usize,
    an: Vec<Nucleotide>,
    bn: Vec<Nucleotide>,
    codon_scores: Vec<f64>,
    d: Vec<f64>,
    f: Vec<f64>,
    prov_d: Vec<u8>,
    prov_f: Vec<u8>,
}

impl<'a> DpState<'a> {
    /// Allocates empty tables. Call [`DpState::fill`] before reading them.
    pub fn new(
        a: &'a CodingSequence,
        b: &'a CodingSequence,
        scheme: &'a ScoringScheme,
        code: &GeneticCode,
    ) -> Self {
        let (n, m) = (a.len(), b.len());
        let cells = (n + 1) * (m + 1);
        DpState {
            a,
            b,
            scheme,
            n,
            m,
            an: a.residues().to_vec(),
            bn: b.residues().to_vec(),
            codon_scores: super::codon_score_table(scheme, code),
            d: vec![NEG; cells],
            f: vec![NEG; cells],
            prov_d: vec![UNSET; cells],
            prov_f: vec![UNSET; cells],
        }
    }

    /// Allocates and fills the tables.
    pub fn filled(
        a: &'a CodingSequence,
        b: &'a CodingSequence,
        scheme: &'a ScoringScheme,
        code: &GeneticCode,
    ) -> Self {
        let mut state = DpState::new(a, b, scheme, code);
        state.fill();
        state
    }

    pub fn fill(&mut self) {
        for i in 0..=self.n {
            for j in 0..=self.m {
                let (v, p) = self.best_d(i, j);
                let idx = self.idx(i, j);
                self.d[idx] = v;
                self.prov_d[idx] = p;
                if self.df_defined(i, j) {
                    let (v, p) = self.best_f(i, j);
                    self.f[idx] = v;
                    self.prov_f[idx] = p;
                }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    /// `D(n, m)`.
    pub fn score(&self) -> f64 {
        self.d(self.n, self.m)
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.d[self.idx(i, j)]
    }

    /// `D_F(i, j)`, or `None` outside the table's domain.
    pub fn d_f(&self, i: usize, j: usize) -> Option<f64> {
        self.df_defined(i, j).then(|| self.f[self.idx(i, j)])
    }

    /// Whether `D_F(i, j)` exists: one index on a codon boundary and the
    /// lookahead inside both sequences.
    pub fn df_defined(&self, i: usize, j: usize) -> bool {
        if i % 3 != 0 && j % 3 != 0 {
            return false;
        }
        let alpha = lookahead(i, j);
        i + alpha <= self.n && j + alpha <= self.m
    }

    pub fn provenance_d(&self, i: usize, j: usize) -> Option<Provenance> {
        decode(self.prov_d[self.idx(i, j)], CaseGroup::for_d(i, j))
    }

    pub fn provenance_f(&self, i: usize, j: usize) -> Option<Provenance> {
        if !self.df_defined(i, j) {
            return None;
        }
        decode(self.prov_f[self.idx(i, j)], CaseGroup::for_f(i, j))
    }

    /// Recomputes `D(i, j)` from the current table contents.
    pub fn compute_d_cell(&self, i: usize, j: usize) -> f64 {
        self.best_d(i, j).0
    }

    /// Recomputes `D_F(i, j)` from the current table contents.
    pub fn compute_df_cell(&self, i: usize, j: usize) -> Result<f64, UndefinedCell> {
        if !self.df_defined(i, j) {
            return Err(UndefinedCell { i, j });
        }
        Ok(self.best_f(i, j).0)
    }

    /// Follows the recorded cases from `(n, m)` back to `(0, 0)`.
    pub fn traceback(&self) -> Result<Alignment, TracebackError> {
        let mut row_a = Vec::with_capacity(self.n + self.m);
        let mut row_b = Vec::with_capacity(self.n + self.m);
        let (mut i, mut j, mut table) = (self.n, self.m, Table::D);
        let mut budget = 2 * (self.n + self.m) + 2;
        while (i, j) != (0, 0) {
            budget = budget.checked_sub(1).ok_or(TracebackError::NoProgress)?;
            let (code, group) = match table {
                Table::D => (self.prov_d[self.idx(i, j)], CaseGroup::for_d(i, j)),
                Table::F => (self.prov_f[self.idx(i, j)], CaseGroup::for_f(i, j)),
            };
            let corrupt = TracebackError::CorruptProvenance {
                table: if table == Table::D { "D" } else { "D_F" },
                i,
                j,
            };
            match code {
                UNSET => return Err(corrupt),
                ANCHOR if table == Table::F => table = Table::D,
                BOUNDARY if table == Table::D => {
                    if j == 0 {
                        row_a.push(Some(self.an[i - 1]));
                        row_b.push(None);
                        i -= 1;
                    } else {
                        row_a.push(None);
                        row_b.push(Some(self.bn[j - 1]));
                        j -= 1;
                    }
                }
                k if (k as usize) < group.cases().len() => {
                    let case = &group.cases()[k as usize];
                    for col in case.cols.iter().rev() {
                        let (x, y) = match *col {
                            Col::Pair(da, db) => (Some(self.nt_a(i, da)), Some(self.nt_b(j, db))),
                            Col::A(da) => (Some(self.nt_a(i, da)), None),
                            Col::B(db) => (None, Some(self.nt_b(j, db))),
                        };
                        row_a.push(x);
                        row_b.push(y);
                    }
                    let (t, da, db) = case.source;
                    i = (i as i64 + da as i64) as usize;
                    j = (j as i64 + db as i64) as usize;
                    table = t;
                }
                _ => return Err(corrupt),
            }
        }
        row_a.reverse();
        row_b.reverse();
        Alignment::new(row_a, row_b).map_err(|_| TracebackError::CorruptProvenance {
            table: "D",
            i: self.n,
            j: self.m,
        })
    }

    pub fn sequences(&self) -> (&CodingSequence, &CodingSequence) {
        (self.a, self.b)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    fn nt_a(&self, i: usize, da: i32) -> Nucleotide {
        self.an[(i as i64 + da as i64 - 1) as usize]
    }

    fn nt_b(&self, j: usize, db: i32) -> Nucleotide {
        self.bn[(j as i64 + db as i64 - 1) as usize]
    }

    fn best_d(&self, i: usize, j: usize) -> (f64, u8) {
        if i == 0 && j == 0 {
            return (0.0, BOUNDARY);
        }
        if i == 0 || j == 0 {
            return (((i + j) / 3) as f64 * self.scheme.gap_cost, BOUNDARY);
        }
        self.best_of(CaseGroup::for_d(i, j).cases(), i, j)
    }

    fn best_f(&self, i: usize, j: usize) -> (f64, u8) {
        if i % 3 == 0 && j % 3 == 0 {
            return (self.d(i, j), ANCHOR);
        }
        self.best_of(CaseGroup::for_f(i, j).cases(), i, j)
    }

    /// Maximum over the feasible cases; the earliest case wins ties.
    fn best_of(&self, cases: &[Case], i: usize, j: usize) -> (f64, u8) {
        let mut best = (NEG, UNSET);
        for (k, case) in cases.iter().enumerate() {
            let v = self.evaluate(case, i, j);
            if v > best.0 {
                best = (v, k as u8);
            }
        }
        best
    }

    fn evaluate(&self, case: &Case, i: usize, j: usize) -> f64 {
        let (table, da, db) = case.source;
        let (si, sj) = (i as i64 + da as i64, j as i64 + db as i64);
        if si < 0 || sj < 0 {
            return NEG;
        }
        let (si, sj) = (si as usize, sj as usize);
        debug_assert!(si < i || sj < j || (table == Table::D && (si, sj) == (i, j)));
        let base = match table {
            Table::D => self.d(si, sj),
            Table::F if self.df_defined(si, sj) => self.f[self.idx(si, sj)],
            Table::F => return NEG,
        };
        if base == NEG {
            return NEG;
        }
        let (n, m) = (self.n as i64, self.m as i64);
        let (i, j) = (i as i64, j as i64);
        let mut total = base;
        for term in &case.terms {
            let cond = match *term {
                Term::Nt { cond, .. } | Term::Open { cond, .. } => cond,
                _ => None,
            };
            if let Some(c) = cond {
                let v = match c.axis {
                    super::cases::Axis::I => i,
                    super::cases::Axis::J => j,
                };
                if ((v + c.offset as i64).rem_euclid(3) == 0) != c.zero {
                    continue;
                }
            }
            match *term {
                Term::Nt { da, db, w, .. } => {
                    let (p, q) = (i + da as i64, j + db as i64);
                    if p < 1 || p > n || q < 1 || q > m {
                        return NEG;
                    }
                    total += w * self.scheme.nt(self.an[p as usize - 1], self.bn[q as usize - 1]);
                }
                Term::Aa { da, db, w } => {
                    let (p, q) = (i + da as i64, j + db as i64);
                    if p < 3 || p > n || q < 3 || q > m {
                        return NEG;
                    }
                    let (p, q) = (p as usize, q as usize);
                    let ca = codon_index([self.an[p - 3], self.an[p - 2], self.an[p - 1]]);
                    let cb = codon_index([self.bn[q - 3], self.bn[q - 2], self.bn[q - 1]]);
                    total += w * self.codon_scores[ca * 64 + cb];
                }
                Term::Open { count, .. } => total += count * self.scheme.fs_open_cost,
                Term::Gap => total += self.scheme.gap_cost,
                Term::Ext => total += self.scheme.extension_per_direction(),
            }
        }
        total
    }
}

/// Lookahead length `α` of a D_F cell.
pub fn lookahead(i: usize, j: usize) -> usize {
    if i % 3 != 0 {
        (3 - i % 3) % 3
    } else {
        (3 - j % 3) % 3
    }
}

fn decode(code: u8, group: CaseGroup) -> Option<Provenance> {
    match code {
        UNSET => None,
        BOUNDARY => Some(Provenance::Boundary),
        ANCHOR => Some(Provenance::Anchor),
        k => Some(Provenance::Case(CaseId { group, number: k + 1 })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AminoAcid;

    fn seq(s: &str) -> CodingSequence {
        CodingSequence::parse(s, "").unwrap()
    }

    #[test]
    fn identical_two_codons() {
        let (a, b) = (seq("ATGTGA"), seq("ATGTGA"));
        let scheme = ScoringScheme::standard();
        let code = GeneticCode::standard();
        let st = DpState::filled(&a, &b, &scheme, &code);
        let m = AminoAcid::from_char('M').unwrap();
        assert_eq!(st.d(3, 3), scheme.aa(m, m));
        assert_eq!(
            st.provenance_d(3, 3),
            Some(Provenance::Case(CaseId { group: CaseGroup::DBothBoundary, number: 1 }))
        );
        assert_eq!(st.d(3, 0), -1.0);
        let al = st.traceback().unwrap();
        assert_eq!(al.row_a_string(), "ATGTGA");
        assert_eq!(al.row_b_string(), "ATGTGA");
    }

    #[test]
    fn lookahead_boundary_cell() {
        let (a, b) = (seq("ATGTGA"), seq("ATG"));
        let scheme = ScoringScheme::standard();
        let st = DpState::filled(&a, &b, &scheme, &GeneticCode::standard());
        // 0 + s_an(T,A)/2 + s_an(G,T)/2 + fs_open_cost
        assert_eq!(st.d_f(1, 0), Some(-3.0));
        assert_eq!(st.compute_df_cell(1, 0), Ok(-3.0));
        assert_eq!(st.d_f(1, 1), None);
        assert_eq!(st.compute_df_cell(1, 1), Err(UndefinedCell { i: 1, j: 1 }));
        // Lookahead past the end of B.
        assert!(!st.df_defined(4, 3));
        assert!(!st.df_defined(5, 3));
        assert!(st.df_defined(6, 3));
    }

    #[test]
    fn initialization_of_lookahead_column() {
        let (a, b) = (seq("ATGTGAAAC"), seq("CTGAAA"));
        let scheme = ScoringScheme::standard();
        let st = DpState::filled(&a, &b, &scheme, &GeneticCode::standard());
        let half = |x: usize, y: usize| scheme.nt(a.at(x), b.at(y)) / 2.0;
        for i in 1..=a.len() - 2 {
            let expected = match i % 3 {
                0 => st.d(i, 0),
                2 => st.d(i, 0) + half(i + 1, 1) + scheme.fs_open_cost,
                _ => st.d(i, 0) + half(i + 1, 1) + half(i + 2, 2) + scheme.fs_open_cost,
            };
            assert_eq!(st.d_f(i, 0), Some(expected), "i = {i}");
        }
    }

    #[test]
    fn compute_cells_match_fill() {
        let (a, b) = (seq("ATGGCCTTGAAACGA"), seq("ATGCCTGAAGGA"));
        let scheme = ScoringScheme::standard();
        let st = DpState::filled(&a, &b, &scheme, &GeneticCode::standard());
        for i in 0..=a.len() {
            for j in 0..=b.len() {
                assert_eq!(st.compute_d_cell(i, j), st.d(i, j));
                if let Some(v) = st.d_f(i, j) {
                    assert_eq!(st.compute_df_cell(i, j), Ok(v));
                }
            }
        }
    }
}
