//! Fixed-width text rendering of an alignment with codon annotations.
//!
//! Each block shows four lines: the translation of A, row A, row B and the
//! translation of B. An amino acid is written above (or below) the middle
//! column of each grouped codon; a frameshift codon is shown as `!` at its
//! middle column when grouped, at its last column otherwise.

use crate::model::{codon_index, Alignment, GeneticCode, Nucleotide};
use crate::scorer::{CodonClassification, DirectionSets};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Columns per block; 0 puts everything in one block.
    pub width: usize,
    /// Wrap frameshift markers and unmatching codons in ANSI colors.
    pub color: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { width: 60, color: false }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Blank,
    Plain(char),
    Unmatching(char),
    Frameshift,
}

pub fn render_alignment(
    alignment: &Alignment,
    classes: &CodonClassification,
    code: &GeneticCode,
    options: RenderOptions,
) -> String {
    let top = annotate(alignment.row_a(), &classes.a_to_b, code);
    let bottom = annotate(alignment.row_b(), &classes.b_to_a, code);
    let row_a = alignment.row_a_string();
    let row_b = alignment.row_b_string();
    let len = alignment.len();
    let width = if options.width == 0 { len.max(1) } else { options.width };

    let mut out = String::new();
    let mut start = 0;
    while start < len {
        let end = (start + width).min(len);
        if start > 0 {
            out.push('\n');
        }
        out.push_str(&marks(&top[start..end], options.color));
        out.push('\n');
        out.push_str(&row_a[start..end]);
        out.push('\n');
        out.push_str(&row_b[start..end]);
        out.push('\n');
        out.push_str(&marks(&bottom[start..end], options.color));
        out.push('\n');
        start = end;
    }
    out
}

fn annotate(row: &[Option<Nucleotide>], sets: &DirectionSets, code: &GeneticCode) -> Vec<Mark> {
    let mut marks = vec![Mark::Blank; row.len()];
    let cols: Vec<usize> = (0..row.len()).filter(|&k| row[k].is_some()).collect();
    for (t, codon) in cols.chunks_exact(3).enumerate() {
        let residues = [row[codon[0]].unwrap(), row[codon[1]].unwrap(), row[codon[2]].unwrap()];
        let aa = code.translate_index(codon_index(residues)).to_char();
        let end_col = codon[2] + 1;
        let mark = if sets.fs_plus.contains(&(t + 1)) {
            marks[codon[2]] = Mark::Frameshift;
            continue;
        } else if sets.fs_minus.contains(&(t + 1)) {
            Mark::Frameshift
        } else if sets.unmatching.binary_search(&end_col).is_ok() {
            Mark::Unmatching(aa)
        } else {
            Mark::Plain(aa)
        };
        marks[codon[1]] = mark;
    }
    marks
}

fn marks(marks: &[Mark], color: bool) -> String {
    marks
        .iter()
        .map(|m| match (m, color) {
            (Mark::Blank, _) => " ".to_string(),
            (Mark::Plain(c), _) | (Mark::Unmatching(c), false) => c.to_string(),
            (Mark::Frameshift, false) => "!".to_string(),
            (Mark::Unmatching(c), true) => format!("\x1b[34m{c}\x1b[0m"),
            (Mark::Frameshift, true) => "\x1b[31m!\x1b[0m".to_string(),
        })
        .collect::<String>()
        .trim_end()
        .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scorer::classify_rows;

    fn render(a: &str, b: &str, width: usize) -> String {
        let al = Alignment::from_rows(a, b).unwrap();
        let c = classify_rows(al.row_a(), al.row_b());
        render_alignment(&al, &c, &GeneticCode::standard(), RenderOptions { width, color: false })
    }

    #[test]
    fn one_codon() {
        assert_eq!(render("ATG", "ATG", 60), " M\nATG\nATG\n M\n");
    }

    #[test]
    fn frameshift_markers() {
        let out = render(
            "ATGACCGAATCCAAGCAGCCCTGGCATAAGTGGGGGAACGATTGA----------------",
            "ATGACCGAATCCAAGCAGCCCTGGCATAA-TGGGGGAACGATTGAAGTAGGAACGATTTAA",
            0,
        );
        let lines: Vec<&str> = out.lines().collect();
        // Seq1's tenth codon faces "AA-", Seq2's tenth codon is split by
        // the gap and its fifteenth faces "TG-".
        assert_eq!(lines[0], " M  T  E  S  K  Q  P  W  H  !  W  G  N  D  *");
        assert_eq!(lines[3], " M  T  E  S  K  Q  P  W  H    ! G  G  T  I  !  V  G  T  I  *");
    }

    #[test]
    fn wraps_blocks() {
        let out = render("ATGAAACCC", "ATGAAACCC", 4);
        // Three blocks of four lines, separated by blank lines.
        assert_eq!(out.lines().count(), 14);
        assert_eq!(out.lines().nth(6), Some("AACC"));
    }
}
