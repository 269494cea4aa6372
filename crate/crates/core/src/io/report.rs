//! Alignment reports in text and JSON form.

use std::fmt::Write as _;

use serde::Serialize;

use super::render::{render_alignment, RenderOptions};
use crate::dp::Engine;
use crate::model::{Alignment, AlignmentError, CodingSequence, ExtensionCharge, GeneticCode, ScoringScheme};
use crate::scorer::{self, CodonClassification, DirectionSets, ScoreBreakdown};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXTENSION_FREE_LABEL: &str = "extension-free mode; not a Ranwez-method reimplementation";

/// A run of consecutive unmatching codons of one sequence: the stretch over
/// which a frameshift is carried before the frame is restored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameshiftSegment {
    /// `"A->B"` or `"B->A"`.
    pub direction: &'static str,
    pub start_column: usize,
    pub end_column: usize,
    pub extension_length_nt: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionCounts {
    pub matching: usize,
    pub unmatching: usize,
    pub indel: usize,
    pub frameshift: usize,
    pub fs_minus: usize,
    pub fs_plus: usize,
    pub mfs_columns: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub a_to_b: DirectionCounts,
    pub b_to_a: DirectionCounts,
}

/// Echo of the settings a report was produced with.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Parameters {
    pub matrix: String,
    pub nuc_match: Option<f64>,
    pub nuc_mismatch: Option<f64>,
    pub gap_cost: f64,
    pub fs_open_cost: f64,
    pub fs_extension_cost: f64,
    pub extension_charge: &'static str,
    pub engine: Option<Engine>,
    pub mode: Option<&'static str>,
}

impl Parameters {
    pub fn from_scheme(scheme: &ScoringScheme, matrix: impl Into<String>) -> Self {
        Parameters {
            matrix: matrix.into(),
            nuc_match: None,
            nuc_mismatch: None,
            gap_cost: scheme.gap_cost,
            fs_open_cost: scheme.fs_open_cost,
            fs_extension_cost: scheme.fs_extension_cost,
            extension_charge: match scheme.extension_charge {
                ExtensionCharge::Split => "split",
                ExtensionCharge::Full => "full",
            },
            engine: None,
            mode: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rows {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlignmentReport {
    pub schema: u32,
    pub id_a: String,
    pub id_b: String,
    pub length_a: usize,
    pub length_b: usize,
    /// Score returned by the aligner, or the rescored total for `rescore`.
    pub score: f64,
    pub breakdown: ScoreBreakdown,
    pub counts: Counts,
    pub classification: CodonClassification,
    pub frameshift_segments: Vec<FrameshiftSegment>,
    pub parameters: Parameters,
    pub alignment: Rows,
    pub rendered: String,
}

impl AlignmentReport {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        a: &CodingSequence,
        b: &CodingSequence,
        alignment: &Alignment,
        score: Option<f64>,
        scheme: &ScoringScheme,
        code: &GeneticCode,
        parameters: Parameters,
        render: RenderOptions,
    ) -> Result<Self, AlignmentError> {
        let classification = scorer::classify(alignment, a, b)?;
        let breakdown = scorer::score_alignment(alignment, a, b, scheme, code)?;
        let rendered = render_alignment(alignment, &classification, code, render);
        Ok(AlignmentReport {
            schema: SCHEMA_VERSION,
            id_a: a.id().to_string(),
            id_b: b.id().to_string(),
            length_a: a.len(),
            length_b: b.len(),
            score: score.unwrap_or(breakdown.total),
            counts: Counts {
                a_to_b: counts(&classification.a_to_b),
                b_to_a: counts(&classification.b_to_a),
            },
            frameshift_segments: frameshift_segments(&classification),
            classification,
            breakdown,
            parameters,
            alignment: Rows { a: alignment.row_a_string(), b: alignment.row_b_string() },
            rendered,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.parameters;
        writeln!(s, "score: {:.1}", self.score).unwrap();
        if let Some(mode) = p.mode {
            writeln!(s, "mode: {mode}").unwrap();
        }
        writeln!(s, "A: {} ({} nt)", self.id_a, self.length_a).unwrap();
        writeln!(s, "B: {} ({} nt)", self.id_b, self.length_b).unwrap();
        write!(
            s,
            "parameters: matrix={} gap_cost={} fs_open_cost={} fs_extension_cost={} extension_charge={}",
            p.matrix, p.gap_cost, p.fs_open_cost, p.fs_extension_cost, p.extension_charge
        )
        .unwrap();
        if let (Some(x), Some(y)) = (p.nuc_match, p.nuc_mismatch) {
            write!(s, " nuc_match={x} nuc_mismatch={y}").unwrap();
        }
        if let Some(engine) = p.engine {
            let name = match engine {
                Engine::Exact => "exact",
                Engine::TwoTable => "two-table",
            };
            write!(s, " engine={name}").unwrap();
        }
        writeln!(s).unwrap();
        writeln!(s).unwrap();

        writeln!(s, "{:<6}{:>10}{:>12}{:>8}{:>10}{:>8}{:>9}", "", "matching", "unmatching", "indel", "fs_open", "mfs", "total").unwrap();
        for (name, d) in [("A->B", &self.breakdown.a_to_b), ("B->A", &self.breakdown.b_to_a)] {
            writeln!(
                s,
                "{:<6}{:>10}{:>12}{:>8}{:>10}{:>8}{:>9}",
                name, d.matching_total, d.unmatching_total, d.indel_total, d.fs_open_total, d.mfs_total, d.total
            )
            .unwrap();
        }
        writeln!(s, "total {}", self.breakdown.total).unwrap();
        writeln!(s).unwrap();

        for (name, sets) in [("A->B", &self.classification.a_to_b), ("B->A", &self.classification.b_to_a)] {
            writeln!(s, "{name}").unwrap();
            writeln!(s, "  M:     {}", join(&sets.matching)).unwrap();
            writeln!(s, "  U:     {}", join(&sets.unmatching)).unwrap();
            writeln!(s, "  Indel: {}", join(&sets.indel)).unwrap();
            writeln!(s, "  MFS:   {}", join(&sets.mfs)).unwrap();
            writeln!(s, "  FS codons: {} (grouped: {}; ungrouped: {})", sets.fs_codon_count, join(&sets.fs_minus), join(&sets.fs_plus)).unwrap();
        }
        writeln!(s).unwrap();
        if self.frameshift_segments.is_empty() {
            writeln!(s, "frameshift segments: none").unwrap();
        } else {
            writeln!(s, "frameshift segments:").unwrap();
            for seg in &self.frameshift_segments {
                writeln!(
                    s,
                    "  {} columns {}-{} ({} nt)",
                    seg.direction, seg.start_column, seg.end_column, seg.extension_length_nt
                )
                .unwrap();
            }
        }
        writeln!(s).unwrap();
        s.push_str(&self.rendered);
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn counts(d: &DirectionSets) -> DirectionCounts {
    DirectionCounts {
        matching: d.matching.len(),
        unmatching: d.unmatching.len(),
        indel: d.indel.len(),
        frameshift: d.fs_codon_count,
        fs_minus: d.fs_minus.len(),
        fs_plus: d.fs_plus.len(),
        mfs_columns: d.mfs.len(),
    }
}

/// Maximal runs of unmatching codons whose end columns are three apart.
pub fn frameshift_segments(classes: &CodonClassification) -> Vec<FrameshiftSegment> {
    let mut out = Vec::new();
    for (direction, sets) in [("A->B", &classes.a_to_b), ("B->A", &classes.b_to_a)] {
        let u = &sets.unmatching;
        let mut k = 0;
        while k < u.len() {
            let mut e = k;
            while e + 1 < u.len() && u[e + 1] == u[e] + 3 {
                e += 1;
            }
            out.push(FrameshiftSegment {
                direction,
                start_column: u[k] - 2,
                end_column: u[e],
                extension_length_nt: 3 * (e - k + 1),
            });
            k = e + 1;
        }
    }
    out
}
