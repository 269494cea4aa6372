//! Optimal global alignment of two coding sequences.
//!
//! Two engines are available. [`Engine::Exact`] (the default) tracks how the
//! open codon of each sequence has been placed and always returns the best
//! score an alignment can reach. [`Engine::TwoTable`] fills the two-table
//! recurrence with tables `D` and `D_F` (see [`DpState`]); it keeps the
//! whole tables with per-cell provenance, but on some inputs its `D(n, m)`
//! is higher than any alignment actually scores. See the guide's chapter on
//! the two engines for a worked instance.

mod cases;
mod exact;
mod two_table;

pub use cases::{CaseGroup, CaseId};
pub use two_table::{lookahead, DpState, Provenance, TracebackError, UndefinedCell};

use serde::Serialize;
use thiserror::Error;

use crate::model::{Alignment, AlignmentError, CodingSequence, GeneticCode, ScoringScheme};
use crate::scorer::{self, ScoreBreakdown};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    Exact,
    TwoTable,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlignError {
    #[error(transparent)]
    Traceback(#[from] TracebackError),
    #[error(transparent)]
    Alignment(#[from] AlignmentError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlignResult {
    /// Value computed by the engine.
    pub score: f64,
    pub alignment: Alignment,
    /// Rescoring of `alignment` from scratch.
    pub breakdown: ScoreBreakdown,
    pub engine: Engine,
}

/// Aligns with the default engine.
pub fn align(
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> Result<AlignResult, AlignError> {
    align_with(a, b, scheme, code, Engine::default())
}

pub fn align_with(
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
    engine: Engine,
) -> Result<AlignResult, AlignError> {
    let (score, alignment) = match engine {
        Engine::Exact => exact::align(a, b, scheme, code),
        Engine::TwoTable => {
            let state = DpState::filled(a, b, scheme, code);
            (state.score(), state.traceback()?)
        }
    };
    let breakdown = scorer::score_alignment(&alignment, a, b, scheme, code)?;
    Ok(AlignResult { score, alignment, breakdown, engine })
}

/// Optimal score only, with the default engine.
pub fn optimal_score(
    a: &CodingSequence,
    b: &CodingSequence,
    scheme: &ScoringScheme,
    code: &GeneticCode,
) -> f64 {
    exact::align(a, b, scheme, code).0
}

/// `s_aa` of every codon pair, indexed `ca * 64 + cb`.
pub(crate) fn codon_score_table(scheme: &ScoringScheme, code: &GeneticCode) -> Vec<f64> {
    let mut table = vec![0.0; 64 * 64];
    for ca in 0..64 {
        for cb in 0..64 {
            table[ca * 64 + cb] = scheme.aa(code.translate_index(ca), code.translate_index(cb));
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CodingSequence {
        CodingSequence::parse(s, "").unwrap()
    }

    const SEQ1: &str = "ATGACCGAATCCAAGCAGCCCTGGCATAAGTGGGGGAACGATTGA";
    const SEQ2: &str = "ATGACCGAATCCAAGCAGCCCTGGCATAATGGGGGAACGATTGAAGTAGGAACGATTTAA";
    const SEQ3: &str = "ATGACCGAATCCAACAGCCCTGGCATAAGTGGGGGAACGATTGAAGTAGGAACGATTTAA";

    #[test]
    fn published_scores_both_engines() {
        let scheme = ScoringScheme::standard();
        let code = GeneticCode::standard();
        for engine in [Engine::Exact, Engine::TwoTable] {
            let r = align_with(&seq(SEQ1), &seq(SEQ2), &scheme, &code, engine).unwrap();
            assert_eq!(r.score, 68.5, "{engine:?}");
            assert_eq!(r.breakdown.total, 68.5, "{engine:?}");
            let r = align_with(&seq(SEQ1), &seq(SEQ3), &scheme, &code, engine).unwrap();
            assert_eq!(r.score, 58.0, "{engine:?}");
            assert_eq!(r.breakdown.total, 58.0, "{engine:?}");
        }
    }

    #[test]
    fn identity_is_gap_free() {
        let s = seq("ATGTGA");
        let r = align(&s, &s, &ScoringScheme::standard(), &GeneticCode::standard()).unwrap();
        assert!(r.alignment.is_gap_free());
        assert_eq!(r.alignment.len(), 6);
    }

    #[test]
    fn two_table_overestimate_instance() {
        // The recurrence credits a codon that is in fact grouped with a
        // frameshift score here, so D(n,m) exceeds every real alignment.
        let a = seq("TCATGACTGACAATCATC");
        let b = seq("CACGATTAG");
        let scheme = ScoringScheme::standard();
        let code = GeneticCode::standard();
        let exact = align_with(&a, &b, &scheme, &code, Engine::Exact).unwrap();
        let table = align_with(&a, &b, &scheme, &code, Engine::TwoTable).unwrap();
        assert_eq!(exact.score, -0.5);
        assert_eq!(table.score, 0.5);
        assert!(table.breakdown.total <= exact.score);
    }
}
