//! Family matrices for the exceptional Weyl groups.
//!
//! For each family `c` the matrix `M_c` has one column per irreducible in
//! `c` and one row per new representation supported on `c`; entries are
//! multiplicities. Each row has one marked entry equal to 1, the marks give
//! a bijection rows -> columns, and in the stored order every mark is on the
//! diagonal with zeros to its right. The tables below are literal
//! transcriptions; nothing here recomputes them.
//!
//! The involution of the irreducibles that the family construction is
//! twisted by is the identity except in E7, where it swaps the two
//! irreducibles of degree 512, and in E8, where it swaps the degree-4096
//! irreducibles in pairs with the same trace on a reflection. No table
//! here depends on it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntegerMatrix;
use crate::symfam::{cx_multiplicities, CxRow, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl WeylType {
    pub const ALL: [WeylType; 5] = [
        WeylType::G2,
        WeylType::F4,
        WeylType::E6,
        WeylType::E7,
        WeylType::E8,
    ];

    /// Family sizes that occur for this type.
    pub fn family_sizes(self) -> &'static [usize] {
        match self {
            WeylType::G2 => &[1, 4],
            WeylType::F4 => &[1, 3, 11],
            WeylType::E6 => &[1, 3, 5],
            WeylType::E7 => &[1, 2, 3, 5],
            WeylType::E8 => &[1, 2, 3, 5, 17],
        }
    }

    /// The type whose large family has symmetric-group `S_m`, and `m`.
    pub fn symmetric_family(self) -> Option<(usize, usize)> {
        match self {
            WeylType::G2 => Some((4, 3)),
            WeylType::F4 => Some((11, 4)),
            WeylType::E8 => Some((17, 5)),
            _ => None,
        }
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WeylType::G2 => "G2",
            WeylType::F4 => "F4",
            WeylType::E6 => "E6",
            WeylType::E7 => "E7",
            WeylType::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for WeylType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(WeylType::G2),
            "F4" => Ok(WeylType::F4),
            "E6" => Ok(WeylType::E6),
            "E7" => Ok(WeylType::E7),
            "E8" => Ok(WeylType::E8),
            other => Err(Error::Parse(format!("unknown exceptional type {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowClass {
    Special,
    /// Built from the symmetric-group construction.
    Cx,
    Intermediate,
    Constructible,
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowClass::Special => "special",
            RowClass::Cx => "cx",
            RowClass::Intermediate => "intermediate",
            RowClass::Constructible => "constructible",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTable {
    pub weyl_type: WeylType,
    pub n_c: usize,
    pub column_labels: Vec<String>,
    pub matrix: IntegerMatrix,
    /// `marks[r]` is the column of the marked entry of row `r`.
    pub marks: Vec<usize>,
    pub row_class: Vec<RowClass>,
}

struct RawTable {
    labels: &'static [&'static str],
    rows: &'static [&'static [i64]],
    classes: &'static [(RowClass, usize)],
}

use RowClass::{Constructible as K, Cx as X, Intermediate as I, Special as S};

const ONE: RawTable = RawTable {
    labels: &["(1,1)"],
    rows: &[&[1]],
    classes: &[(S, 1)],
};

// E7, E8
const TWO: RawTable = RawTable {
    labels: &["(1,1)", "(1,ε)"],
    rows: &[&[1, 0], &[1, 1]],
    classes: &[(S, 1), (K, 1)],
};

// F4, E6, E7, E8
const THREE: RawTable = RawTable {
    labels: &["(1,1)", "(g_2,1)", "(1,ε)"],
    rows: &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]],
    classes: &[(S, 1), (K, 2)],
};

// G2
const FOUR: RawTable = RawTable {
    labels: &["(1,1)", "(1,r)", "(g_2,1)", "(g_3,1)"],
    rows: &[&[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 1, 1, 0], &[1, 0, 1, 1]],
    classes: &[(X, 2), (K, 2)],
};

// E6, E7, E8: one matrix shared by all three
const FIVE: RawTable = RawTable {
    labels: &["(1,1)", "(1,r)", "(g_2,1)", "(g_3,1)", "(1,ε)"],
    rows: &[
        &[1, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0],
        &[1, 1, 1, 0, 0],
        &[1, 0, 1, 1, 0],
        &[1, 2, 0, 0, 1],
    ],
    classes: &[(S, 1), (I, 1), (K, 3)],
};

// F4
const ELEVEN: RawTable = RawTable {
    labels: &[
        "12_1", "9_3", "6_2", "1_3", "16_1", "9_2", "4_4", "6_1", "4_3", "4_1", "1_2",
    ],
    rows: &[
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0],
        &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0],
        &[1, 2, 1, 1, 1, 0, 1, 0, 0, 0, 0],
        &[1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0],
        &[1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0],
        &[1, 1, 1, 0, 2, 1, 0, 0, 0, 1, 0],
        &[1, 0, 1, 0, 1, 2, 0, 0, 1, 0, 1],
    ],
    classes: &[(X, 4), (I, 2), (K, 5)],
};

// E8
const SEVENTEEN: RawTable = RawTable {
    labels: &[
        "4480", "5670", "4536", "1680", "1400", "70", "7168", "5600", "3150", "4200", "2688",
        "2016", "448", "1134", "1344", "420", "168",
    ],
    rows: &[
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 2, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 3, 3, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 2, 2, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        &[1, 2, 2, 1, 1, 0, 2, 2, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 0, 0, 0, 2, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
        &[1, 3, 3, 3, 2, 1, 1, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        &[1, 2, 1, 1, 0, 0, 1, 2, 1, 0, 0, 0, 1, 1, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0],
        &[1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0],
        &[1, 1, 1, 0, 1, 0, 1, 1, 0, 2, 0, 0, 0, 0, 1, 0, 1],
    ],
    classes: &[(X, 6), (I, 4), (K, 7)],
};

fn raw(n_c: usize) -> Option<&'static RawTable> {
    match n_c {
        1 => Some(&ONE),
        2 => Some(&TWO),
        3 => Some(&THREE),
        4 => Some(&FOUR),
        5 => Some(&FIVE),
        11 => Some(&ELEVEN),
        17 => Some(&SEVENTEEN),
        _ => None,
    }
}

/// The stored table for a family of size `n_c` in the given type.
pub fn family_table(weyl_type: WeylType, n_c: usize) -> Result<FamilyTable> {
    let not_found = || Error::TableNotFound {
        weyl_type: weyl_type.to_string(),
        n_c,
    };
    if !weyl_type.family_sizes().contains(&n_c) {
        return Err(not_found());
    }
    let raw = raw(n_c).ok_or_else(not_found)?;
    let row_class = raw
        .classes
        .iter()
        .flat_map(|&(class, count)| std::iter::repeat_n(class, count))
        .collect();
    Ok(FamilyTable {
        weyl_type,
        n_c,
        column_labels: raw.labels.iter().map(|s| s.to_string()).collect(),
        matrix: IntegerMatrix::from_rows(raw.rows),
        marks: (0..n_c).collect(),
        row_class,
    })
}

/// Every stored `(type, n_c)` table.
pub fn all_tables() -> Vec<FamilyTable> {
    WeylType::ALL
        .iter()
        .flat_map(|&t| {
            t.family_sizes()
                .iter()
                .map(move |&n| family_table(t, n).expect("listed sizes are stored"))
        })
        .collect()
}

/// One table per distinct matrix shape, `n_c` in `{1, 2, 3, 4, 5, 11, 17}`.
pub fn distinct_shapes() -> Vec<FamilyTable> {
    [
        (WeylType::E8, 1),
        (WeylType::E8, 2),
        (WeylType::F4, 3),
        (WeylType::G2, 4),
        (WeylType::E6, 5),
        (WeylType::F4, 11),
        (WeylType::E8, 17),
    ]
    .iter()
    .map(|&(t, n)| family_table(t, n).expect("stored"))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub weyl_type: WeylType,
    pub n_c: usize,
    pub determinant: String,
    pub violations: Vec<Violation>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_table(t: &FamilyTable) -> TableReport {
    let n = t.n_c;
    let mut violations = Vec::new();
    let mut push = |check: &str, detail: String| {
        violations.push(Violation {
            check: check.to_string(),
            detail,
        })
    };
    if t.matrix.nrows() != n || t.matrix.ncols() != n {
        push(
            "shape",
            format!(
                "matrix is {}x{}, expected {n}x{n}",
                t.matrix.nrows(),
                t.matrix.ncols()
            ),
        );
        return TableReport {
            weyl_type: t.weyl_type,
            n_c: n,
            determinant: "undefined".into(),
            violations,
        };
    }
    if t.column_labels.len() != n || t.row_class.len() != n || t.marks.len() != n {
        push(
            "metadata",
            "labels, marks and classes must have n_c entries".into(),
        );
    }

    let mut hit = vec![false; n];
    for (r, &c) in t.marks.iter().enumerate() {
        if c >= n {
            push(
                "marks",
                format!("row {} marks column {} out of range", r + 1, c + 1),
            );
            continue;
        }
        if hit[c] {
            push("marks", format!("column {} marked twice", c + 1));
        }
        hit[c] = true;
        if t.matrix.get(r, c) != 1 {
            push(
                "marks",
                format!(
                    "row {} marked entry is {}, not 1",
                    r + 1,
                    t.matrix.get(r, c)
                ),
            );
        }
    }

    for (r, &c) in t.marks.iter().enumerate() {
        if c != r {
            push(
                "unitriangular",
                format!("row {} is marked off the diagonal", r + 1),
            );
        }
        for col in (c + 1)..n {
            if t.matrix.get(r, col) != 0 {
                push(
                    "unitriangular",
                    format!(
                        "row {} has nonzero entry right of its mark at column {}",
                        r + 1,
                        col + 1
                    ),
                );
            }
        }
    }

    for r in 0..n {
        if let Some(&x) = t.matrix.row(r).iter().find(|&&x| x < 0) {
            push("nonnegative", format!("row {} has entry {x}", r + 1));
        }
    }

    let determinant = t.matrix.determinant();
    if determinant != 1.into() {
        push(
            "determinant",
            format!("determinant is {determinant}, not 1"),
        );
    }

    for (r, class) in t.row_class.iter().enumerate() {
        if *class == RowClass::Special {
            let row = t.matrix.row(r);
            let unit = row.iter().filter(|&&x| x == 1).count() == 1
                && row.iter().all(|&x| x == 0 || x == 1);
            if !unit {
                push(
                    "special",
                    format!("special row {} is not a unit vector", r + 1),
                );
            }
        }
    }

    TableReport {
        weyl_type: t.weyl_type,
        n_c: n,
        determinant: determinant.to_string(),
        violations,
    }
}

/// JSON sidecar of a table; the matrix itself goes to CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSidecar {
    pub weyl_type: WeylType,
    pub n_c: usize,
    pub column_labels: Vec<String>,
    /// 1-based column of the marked entry of each row.
    pub marks: Vec<usize>,
    pub row_class: Vec<RowClass>,
}

impl FamilyTable {
    pub fn sidecar(&self) -> TableSidecar {
        TableSidecar {
            weyl_type: self.weyl_type,
            n_c: self.n_c,
            column_labels: self.column_labels.clone(),
            marks: self.marks.iter().map(|c| c + 1).collect(),
            row_class: self.row_class.clone(),
        }
    }

    pub fn to_csv(&self) -> String {
        self.matrix.to_csv(Some(&self.column_labels))
    }

    pub fn rows_of_class(&self, class: RowClass) -> Vec<usize> {
        (0..self.n_c)
            .filter(|&r| self.row_class[r] == class)
            .collect()
    }
}

/// The representations of the symmetric-group construction as printed
/// direct sums, one list of `(column label, multiplicity)` per row.
///
/// For G2 the printed sums are "V" and "V ⊕ ε₁" with V special; they are
/// written here against the column labels `(1,1)` and `(1,r)`.
pub fn printed_cx_sums(weyl_type: WeylType) -> Option<Vec<Vec<(&'static str, i64)>>> {
    let sums: Vec<Vec<(&str, i64)>> = match weyl_type {
        WeylType::G2 => vec![vec![("(1,1)", 1)], vec![("(1,1)", 1), ("(1,r)", 1)]],
        WeylType::F4 => vec![
            vec![("12_1", 1)],
            vec![("12_1", 1), ("9_3", 1)],
            vec![("12_1", 1), ("9_3", 1), ("6_2", 1)],
            vec![("12_1", 1), ("9_3", 2), ("6_2", 1), ("1_3", 1)],
        ],
        WeylType::E8 => vec![
            vec![("4480", 1)],
            vec![("4480", 1), ("5670", 1)],
            vec![("4480", 1), ("5670", 1), ("4536", 1)],
            vec![("4480", 1), ("5670", 2), ("4536", 1), ("1680", 1)],
            vec![
                ("4480", 1),
                ("5670", 2),
                ("4536", 2),
                ("1400", 1),
                ("1680", 1),
            ],
            vec![
                ("4480", 1),
                ("5670", 3),
                ("4536", 3),
                ("1400", 2),
                ("1680", 3),
                ("70", 1),
            ],
        ],
        _ => return None,
    };
    Some(sums)
}

/// Rows of the matrix where a printed direct sum disagrees with the stored row.
pub fn printed_sum_mismatches(weyl_type: WeylType) -> Result<Vec<usize>> {
    let Some((n_c, _)) = weyl_type.symmetric_family() else {
        return Ok(Vec::new());
    };
    let table = family_table(weyl_type, n_c)?;
    let sums = printed_cx_sums(weyl_type).expect("symmetric families have printed sums");
    let cx_rows = table.rows_of_class(RowClass::Cx);
    let mut bad = Vec::new();
    for (k, sum) in sums.iter().enumerate() {
        let mut expect = vec![0i64; n_c];
        for (label, mult) in sum {
            let col = table
                .column_labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::Parse(format!("unknown column label {label}")))?;
            expect[col] += mult;
        }
        match cx_rows.get(k) {
            Some(&r) if table.matrix.row(r) == expect.as_slice() => {}
            _ => bad.push(k),
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxCrossCheck {
    pub weyl_type: WeylType,
    pub n_c: usize,
    pub m: usize,
    /// Column label assigned to each non-sign irreducible of `S_m`.
    pub correspondence: Vec<(Partition, String)>,
    /// Row (1-based) assigned to each `ρ`.
    pub rows: Vec<(Partition, usize)>,
    /// Number of consistent (row, column) assignments found.
    pub consistent_assignments: usize,
}

impl CxCrossCheck {
    pub fn is_unique(&self) -> bool {
        self.consistent_assignments == 1
    }
}

/// Match the symmetric-group multiplicity vectors against the cx rows.
///
/// Searches all assignments of the `ρ` to cx-tagged rows and of the `ρ'` to
/// columns such that `M[row(ρ)][col(ρ')] = K(ρ', ρ̃)` and every other column
/// of every cx row is zero. The first assignment found (in row-permutation
/// order) is reported, together with the total count.
pub fn cross_check_cx(weyl_type: WeylType, n_c: usize) -> Result<CxCrossCheck> {
    let mismatch = || Error::CxMismatch {
        weyl_type: weyl_type.to_string(),
        n_c,
    };
    let m = match weyl_type.symmetric_family() {
        Some((n, m)) if n == n_c => m,
        _ => return Err(mismatch()),
    };
    let table = family_table(weyl_type, n_c)?;
    let cx = cx_multiplicities(m)?;
    let cx_rows = table.rows_of_class(RowClass::Cx);
    if cx_rows.len() != cx.len() {
        return Err(mismatch());
    }

    let mut first: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut count = 0usize;
    let k = cx.len();
    for row_perm in itertools::Itertools::permutations(cx_rows.iter().copied(), k) {
        count_column_assignments(&table, &cx, &row_perm, &mut |cols: &[usize]| {
            count += 1;
            if first.is_none() {
                first = Some((row_perm.clone(), cols.to_vec()));
            }
        });
    }
    let (rows, cols) = first.ok_or_else(mismatch)?;
    let irreducibles: Vec<Partition> = cx[0]
        .multiplicities
        .iter()
        .map(|(p, _)| p.clone())
        .collect();
    Ok(CxCrossCheck {
        weyl_type,
        n_c,
        m,
        correspondence: irreducibles
            .iter()
            .zip(&cols)
            .map(|(p, &c)| (p.clone(), table.column_labels[c].clone()))
            .collect(),
        rows: cx
            .iter()
            .zip(&rows)
            .map(|(row, &r)| (row.rho.clone(), r + 1))
            .collect(),
        consistent_assignments: count,
    })
}

/// For a fixed assignment `rows[i]` of `cx[i]`, enumerate injective column
/// assignments for the `ρ'` and call `found` on each consistent one.
fn count_column_assignments(
    table: &FamilyTable,
    cx: &[CxRow],
    rows: &[usize],
    found: &mut dyn FnMut(&[usize]),
) {
    let n = table.n_c;
    let k = cx.len();
    // column vector wanted for ρ'_j across the assigned rows
    let wanted: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            cx.iter()
                .map(|row| row.multiplicities[j].1 as i64)
                .collect()
        })
        .collect();
    let column = |c: usize| -> Vec<i64> { rows.iter().map(|&r| table.matrix.get(r, c)).collect() };
    let candidates: Vec<Vec<usize>> = wanted
        .iter()
        .map(|w| (0..n).filter(|&c| &column(c) == w).collect())
        .collect();
    let mut chosen = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn go(
        j: usize,
        candidates: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        used: &mut [bool],
        ok_rest: &dyn Fn(&[bool]) -> bool,
        found: &mut dyn FnMut(&[usize]),
    ) {
        if j == candidates.len() {
            if ok_rest(used) {
                found(chosen);
            }
            return;
        }
        for &c in &candidates[j] {
            if !used[c] {
                used[c] = true;
                chosen.push(c);
                go(j + 1, candidates, chosen, used, ok_rest, found);
                chosen.pop();
                used[c] = false;
            }
        }
    }
    let ok_rest = |used: &[bool]| (0..n).all(|c| used[c] || column(c).iter().all(|&x| x == 0));
    go(0, &candidates, &mut chosen, &mut used, &ok_rest, found);
}
