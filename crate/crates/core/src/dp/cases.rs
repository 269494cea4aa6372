//! Case tables for the two-table recurrences.
//!
//! Every case is data: the score terms it adds, the cell it extends and the
//! columns it contributes to an alignment. Offsets are relative to the cell
//! being filled. The `i ≢ 0, j ≡ 0` group of table D and the `j`-lookahead
//! groups of table D_F are produced by [`mirror`] rather than written out.

use std::fmt;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Axis {
    I,
    J,
}

/// A term applies when `((axis + offset) mod 3 == 0) == zero`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Cond {
    pub axis: Axis,
    pub offset: i32,
    pub zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Term {
    /// `w * s_aa` of the codon windows ending at `i+da` and `j+db`.
    Aa { da: i32, db: i32, w: f64 },
    /// `w * s_an(A[i+da], B[j+db])`.
    Nt { da: i32, db: i32, w: f64, cond: Option<Cond> },
    Open { count: f64, cond: Option<Cond> },
    Gap,
    Ext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Table {
    D,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Col {
    Pair(i32, i32),
    /// `A[i+da]` over a gap.
    A(i32),
    /// A gap over `B[j+db]`.
    B(i32),
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Case {
    pub terms: Vec<Term>,
    pub source: (Table, i32, i32),
    pub cols: Vec<Col>,
}

/// Which list of cases a cell is filled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseGroup {
    /// Table D, `i ≡ 0` and `j ≡ 0`.
    DBothBoundary,
    /// Table D, `i ≡ 0` and `j ≢ 0`.
    DRowBoundary,
    /// Table D, `i ≢ 0` and `j ≡ 0`.
    DColumnBoundary,
    /// Table D, neither index on a codon boundary.
    DInterior,
    /// Table D_F, `i ≡ 2`, `j ≡ 0`.
    FI2,
    /// Table D_F, `i ≡ 1`, `j ≡ 0`.
    FI1,
    /// Table D_F, `i ≡ 0`, `j ≡ 2`.
    FJ2,
    /// Table D_F, `i ≡ 0`, `j ≡ 1`.
    FJ1,
}

impl CaseGroup {
    pub(crate) fn for_d(i: usize, j: usize) -> CaseGroup {
        match (i % 3 == 0, j % 3 == 0) {
            (true, true) => CaseGroup::DBothBoundary,
            (true, false) => CaseGroup::DRowBoundary,
            (false, true) => CaseGroup::DColumnBoundary,
            (false, false) => CaseGroup::DInterior,
        }
    }

    /// Lookahead group of a D_F cell that is not on a double boundary.
    pub(crate) fn for_f(i: usize, j: usize) -> CaseGroup {
        match (i % 3, j % 3) {
            (2, _) => CaseGroup::FI2,
            (1, _) => CaseGroup::FI1,
            (_, 2) => CaseGroup::FJ2,
            _ => CaseGroup::FJ1,
        }
    }

    pub(crate) fn cases(self) -> &'static [Case] {
        let t = tables();
        match self {
            CaseGroup::DBothBoundary => &t.d_both,
            CaseGroup::DRowBoundary => &t.d_row,
            CaseGroup::DColumnBoundary => &t.d_col,
            CaseGroup::DInterior => &t.d_interior,
            CaseGroup::FI2 => &t.f_i2,
            CaseGroup::FI1 => &t.f_i1,
            CaseGroup::FJ2 => &t.f_j2,
            CaseGroup::FJ1 => &t.f_j1,
        }
    }
}

/// The winning case of a cell: its group and 1-based position in that
/// group's printed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseId {
    pub group: CaseGroup,
    pub number: u8,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.group {
            CaseGroup::DBothBoundary => "D(0,0)",
            CaseGroup::DRowBoundary => "D(0,*)",
            CaseGroup::DColumnBoundary => "D(*,0)",
            CaseGroup::DInterior => "D(*,*)",
            CaseGroup::FI2 => "DF(2,0)",
            CaseGroup::FI1 => "DF(1,0)",
            CaseGroup::FJ2 => "DF(0,2)",
            CaseGroup::FJ1 => "DF(0,1)",
        };
        write!(f, "{name} #{}", self.number)
    }
}

pub(crate) struct Tables {
    pub d_both: Vec<Case>,
    pub d_row: Vec<Case>,
    pub d_col: Vec<Case>,
    pub d_interior: Vec<Case>,
    pub f_i2: Vec<Case>,
    pub f_i1: Vec<Case>,
    pub f_j2: Vec<Case>,
    pub f_j1: Vec<Case>,
}

pub(crate) fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build)
}

fn nt(da: i32, db: i32) -> Term {
    Term::Nt { da, db, w: 1.0, cond: None }
}

fn nt_w(da: i32, db: i32, w: f64) -> Term {
    Term::Nt { da, db, w, cond: None }
}

fn nt_if(da: i32, db: i32, w: f64, cond: Cond) -> Term {
    Term::Nt { da, db, w, cond: Some(cond) }
}

fn aa(da: i32, db: i32, w: f64) -> Term {
    Term::Aa { da, db, w }
}

fn open(count: f64) -> Term {
    Term::Open { count, cond: None }
}

fn case(terms: Vec<Term>, source: (Table, i32, i32), cols: Vec<Col>) -> Case {
    Case { terms, source, cols }
}

use Col::{Pair as P, A as GA, B as GB};
use Table::{D, F};

fn build() -> Tables {
    let d_both = vec![
        case(vec![aa(0, 0, 1.0)], (D, -3, -3), vec![P(-2, -2), P(-1, -1), P(0, 0)]),
        case(vec![nt(0, 0), nt(-1, -1), open(2.0)], (D, -3, -2), vec![GA(-2), P(-1, -1), P(0, 0)]),
        case(vec![nt(0, 0), nt(-2, -1), open(2.0)], (D, -3, -2), vec![P(-2, -1), GA(-1), P(0, 0)]),
        case(vec![nt(0, 0), open(2.0)], (D, -3, -1), vec![GA(-2), GA(-1), P(0, 0)]),
        case(vec![nt(0, 0), nt(-1, -1), open(2.0)], (D, -2, -3), vec![GB(-2), P(-1, -1), P(0, 0)]),
        case(vec![nt(0, 0), nt(-1, -2), open(2.0)], (D, -2, -3), vec![P(-1, -2), GB(-1), P(0, 0)]),
        case(vec![nt(0, 0), open(2.0)], (D, -1, -3), vec![GB(-2), GB(-1), P(0, 0)]),
        case(vec![nt(0, 0), open(2.0)], (D, -1, -1), vec![P(0, 0)]),
        case(vec![nt_w(-1, 0, 0.5), nt_w(-2, -1, 0.5), open(1.0)], (F, -3, -2), vec![P(-2, -1), P(-1, 0), GA(0)]),
        case(vec![nt(-1, 0), open(2.0)], (D, -3, -1), vec![GA(-2), P(-1, 0), GA(0)]),
        case(vec![nt_w(-2, 0, 0.5), open(1.0)], (F, -3, -1), vec![P(-2, 0), GA(-1), GA(0)]),
        case(vec![Term::Gap], (D, -3, 0), vec![GA(-2), GA(-1), GA(0)]),
        case(vec![open(1.0)], (D, -1, 0), vec![GA(0)]),
        case(vec![nt_w(0, -1, 0.5), nt_w(-1, -2, 0.5), open(1.0)], (F, -2, -3), vec![P(-1, -2), P(0, -1), GB(0)]),
        case(vec![nt(0, -1), open(2.0)], (D, -1, -3), vec![GB(-2), P(0, -1), GB(0)]),
        case(vec![nt_w(0, -2, 0.5), open(1.0)], (F, -1, -3), vec![P(0, -2), GB(-1), GB(0)]),
        case(vec![Term::Gap], (D, 0, -3), vec![GB(-2), GB(-1), GB(0)]),
        case(vec![open(1.0)], (D, 0, -1), vec![GB(0)]),
    ];

    let j_prev_open = Cond { axis: Axis::J, offset: -1, zero: false };
    let j_prev_boundary = Cond { axis: Axis::J, offset: -1, zero: true };
    let d_row = vec![
        case(
            vec![aa(0, 0, 0.5), Term::Ext, nt_w(0, 0, 0.5), nt_if(-1, -1, 0.5, j_prev_open)],
            (F, -3, -3),
            vec![P(-2, -2), P(-1, -1), P(0, 0)],
        ),
        case(
            vec![nt(0, 0), nt(-1, -1), open(1.0), Term::Open { count: 1.0, cond: Some(j_prev_boundary) }],
            (D, -3, -2),
            vec![GA(-2), P(-1, -1), P(0, 0)],
        ),
        case(
            vec![nt(0, 0), nt(-2, -1), open(1.0), nt_if(-2, -1, -0.5, j_prev_boundary)],
            (F, -3, -2),
            vec![P(-2, -1), GA(-1), P(0, 0)],
        ),
        case(vec![nt(0, 0), open(1.0)], (D, -3, -1), vec![GA(-2), GA(-1), P(0, 0)]),
        case(vec![nt(0, 0), open(1.0)], (D, -1, -1), vec![P(0, 0)]),
        case(
            vec![nt(-1, 0), nt(-2, -1), open(1.0), nt_if(-2, -1, -0.5, j_prev_boundary)],
            (F, -3, -2),
            vec![P(-2, -1), P(-1, 0), GA(0)],
        ),
        case(vec![nt(-1, 0), open(1.0)], (D, -3, -1), vec![GA(-2), P(-1, 0), GA(0)]),
        case(vec![nt(-2, 0), open(1.0)], (D, -3, -1), vec![P(-2, 0), GA(-1), GA(0)]),
        case(vec![Term::Gap], (D, -3, 0), vec![GA(-2), GA(-1), GA(0)]),
        case(vec![open(1.0)], (D, -1, 0), vec![GA(0)]),
        case(vec![], (D, 0, -1), vec![GB(0)]),
    ];

    let d_interior = vec![
        case(vec![nt(0, 0)], (D, -1, -1), vec![P(0, 0)]),
        case(vec![], (D, -1, 0), vec![GA(0)]),
        case(vec![], (D, 0, -1), vec![GB(0)]),
    ];

    let f_i2 = vec![
        case(vec![aa(1, 1, 0.5), Term::Ext], (F, -2, -2), vec![P(-1, -1), P(0, 0)]),
        case(vec![nt_w(1, 1, 0.5), nt(0, 0), open(2.0)], (D, -2, -1), vec![GA(-1), P(0, 0)]),
        case(vec![nt_w(1, 1, 0.5), nt_w(-1, 0, 0.5), open(1.0)], (F, -2, -1), vec![P(-1, 0), GA(0)]),
        case(vec![nt_w(1, 1, 0.5), open(1.0)], (D, -2, 0), vec![GA(-1), GA(0)]),
        case(vec![nt_w(1, 1, 0.5), open(1.0)], (D, 0, 0), vec![]),
    ];

    let f_i1 = vec![
        case(vec![aa(2, 2, 0.5), Term::Ext], (F, -1, -1), vec![P(0, 0)]),
        case(vec![nt_w(2, 2, 0.5), nt_w(1, 1, 0.5), open(1.0)], (D, -1, 0), vec![GA(0)]),
        case(vec![nt_w(2, 2, 0.5), nt_w(1, 1, 0.5), open(1.0)], (D, 0, 0), vec![]),
    ];

    Tables {
        d_col: mirror(&d_row),
        f_j2: mirror(&f_i2),
        f_j1: mirror(&f_i1),
        d_both,
        d_row,
        d_interior,
        f_i2,
        f_i1,
    }
}

/// Exchanges the roles of `(A, i)` and `(B, j)` in every term, source and
/// column of a case list.
pub(crate) fn mirror(cases: &[Case]) -> Vec<Case> {
    let flip = |c: Option<Cond>| {
        c.map(|c| Cond {
            axis: match c.axis {
                Axis::I => Axis::J,
                Axis::J => Axis::I,
            },
            ..c
        })
    };
    cases
        .iter()
        .map(|c| Case {
            terms: c
                .terms
                .iter()
                .map(|t| match *t {
                    Term::Aa { da, db, w } => Term::Aa { da: db, db: da, w },
                    Term::Nt { da, db, w, cond } => Term::Nt { da: db, db: da, w, cond: flip(cond) },
                    Term::Open { count, cond } => Term::Open { count, cond: flip(cond) },
                    other => other,
                })
                .collect(),
            source: (c.source.0, c.source.2, c.source.1),
            cols: c
                .cols
                .iter()
                .map(|col| match *col {
                    Col::Pair(a, b) => Col::Pair(b, a),
                    Col::A(a) => Col::B(a),
                    Col::B(b) => Col::A(b),
                })
                .collect(),
        })
        .collect()
}
