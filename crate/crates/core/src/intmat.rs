//! Exact integer matrices.
//!
//! Every algorithm here runs first on checked `i128` arithmetic and reruns on
//! `BigInt` if any intermediate value overflows, so results are always exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};
use serde::{Deserialize, Serialize};

/// Arithmetic needed by the elimination routines.
trait Exact:
    Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + fmt::Debug
{
    fn into_big(self) -> BigInt;
}

impl Exact for i128 {
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Exact for BigInt {
    fn into_big(self) -> BigInt {
        self
    }
}

/// Row-major dense matrix of `i64` entries.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            data.extend_from_slice(r.as_ref());
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `self * v`, exactly.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| BigInt::from(a) * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Option<IntegerMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    acc = acc.checked_add(self.get(r, k).checked_mul(other.get(k, c))?)?;
                }
                out.set(r, c, acc);
            }
        }
        Some(out)
    }

    fn lifted<T: Exact>(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| T::from(x)).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics if not square.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        bareiss(self.lifted::<i128>())
            .map(Exact::into_big)
            .unwrap_or_else(|| {
                bareiss(self.lifted::<BigInt>()).expect("BigInt arithmetic cannot overflow")
            })
    }

    /// Diagonal of the Smith normal form, nonnegative and divisibility-ordered,
    /// padded with zeros to `min(rows, cols)`.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        smith(self.lifted::<i128>())
            .map(|v| v.into_iter().map(Exact::into_big).collect())
            .unwrap_or_else(|| {
                smith(self.lifted::<BigInt>()).expect("BigInt arithmetic cannot overflow")
            })
    }

    /// Inverse of a unimodular matrix; `None` if the matrix is not square
    /// or its determinant is not `±1`, or an entry of the inverse does not
    /// fit in `i64`.
    pub fn unimodular_inverse(&self) -> Option<IntegerMatrix> {
        if !self.is_square() {
            return None;
        }
        let inv = match unimodular_inverse(self.lifted::<i128>()) {
            Ok(inv) => inv
                .into_iter()
                .map(|r| r.into_iter().map(Exact::into_big).collect())
                .collect(),
            Err(Failure::Singular) => return None,
            Err(Failure::Overflow) => match unimodular_inverse(self.lifted::<BigInt>()) {
                Ok(inv) => inv,
                Err(_) => return None,
            },
        };
        let rows: Option<Vec<Vec<i64>>> = inv
            .into_iter()
            .map(|r: Vec<BigInt>| r.into_iter().map(|x| i64::try_from(x).ok()).collect())
            .collect();
        Some(IntegerMatrix::from_rows(&rows?))
    }

    /// Rows as strings of digits, e.g. `"0110"` for a 0/1 matrix. Entries
    /// outside `0..=9` are written in decimal separated by commas instead.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                if row.iter().all(|x| (0..=9).contains(x)) {
                    row.iter().map(|x| x.to_string()).collect()
                } else {
                    row.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }
            })
            .collect()
    }

    pub fn to_csv(&self, header: Option<&[String]>) -> String {
        let mut out = String::new();
        if let Some(h) = header {
            out.push_str(&h.join(","));
            out.push('\n');
        }
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

enum Failure {
    Overflow,
    Singular,
}

fn bareiss<T: Exact>(mut a: Vec<Vec<T>>) -> Option<T> {
    let n = a.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Some(T::zero()),
            }
        }
        let pivot = a[k][k].clone();
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let lhs = row[j].checked_mul(&pivot)?;
                let rhs = factor.checked_mul(&pivot_row[j])?;
                // exact by Sylvester's identity
                row[j] = lhs.checked_sub(&rhs)? / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot;
    }
    Some(sign * a[n - 1][n - 1].clone())
}

fn smith<T: Exact>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero() && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else {
            diag.extend(std::iter::repeat_n(T::zero(), n - t));
            return Some(diag);
        };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let mut dirty = false;
            // clear column t
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(t) {
                    *x = x.checked_sub(&q.checked_mul(p)?)?;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            // clear row t
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = q.checked_mul(&row[t])?;
                    row[c] = row[c].checked_sub(&sub)?;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold any offending row into row t
            let p = a[t][t].clone();
            let offender =
                (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&p)));
            match offender {
                Some(r) => {
                    let other = a[r].clone();
                    for (x, y) in a[t].iter_mut().zip(&other).skip(t) {
                        *x = x.checked_add(y)?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Some(diag)
}

/// Gauss–Jordan with unimodular (Euclidean) row operations on `[A | I]`.
fn unimodular_inverse<T: Exact>(mut a: Vec<Vec<T>>) -> Result<Vec<Vec<T>>, Failure> {
    let n = a.len();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let sub_rows = |a: &mut Vec<Vec<T>>, inv: &mut Vec<Vec<T>>, dst: usize, src: usize, q: &T| {
        for c in 0..n {
            let s = q.checked_mul(&a[src][c]).ok_or(Failure::Overflow)?;
            a[dst][c] = a[dst][c].checked_sub(&s).ok_or(Failure::Overflow)?;
            let s = q.checked_mul(&inv[src][c]).ok_or(Failure::Overflow)?;
            inv[dst][c] = inv[dst][c].checked_sub(&s).ok_or(Failure::Overflow)?;
        }
        Ok::<(), Failure>(())
    };
    for k in 0..n {
        // Euclid down column k until a single nonzero entry remains at row k
        loop {
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by(|&x, &y| a[x][k].abs().cmp(&a[y][k].abs()));
            let Some(p) = pivot else {
                return Err(Failure::Singular);
            };
            a.swap(k, p);
            inv.swap(k, p);
            let mut done = true;
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = a[r][k].div_floor(&a[k][k]);
                sub_rows(&mut a, &mut inv, r, k, &q)?;
                if !a[r][k].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[k][k].abs().is_one() {
            return Err(Failure::Singular);
        }
        if a[k][k].is_negative() {
            for c in 0..n {
                a[k][c] = -a[k][c].clone();
                inv[k][c] = -inv[k][c].clone();
            }
        }
    }
    for k in (0..n).rev() {
        for r in 0..k {
            if a[r][k].is_zero() {
                continue;
            }
            let q = a[r][k].clone();
            sub_rows(&mut a, &mut inv, r, k, &q)?;
        }
    }
    Ok(inv)
}
